#!/usr/bin/env python3
"""
Circularly ordered groups inside T = R/Z and their Zeleva extension
T x_c Z, the linearly ordered group obtained from the winding cocycle.

A circle element is an angle theta in [0, 1). The orientation cocycle c(x, y, z)
is +1 for counter-clockwise triples; the extension cocycle winding(a, b) is 1
exactly when theta_a + theta_b wraps past 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import config
from errors import ContractViolation
from symreal import SymbolicReal
from zmodule import SpanMode, Subgroup

logger = logging.getLogger('archgroups.circular')


class CircleElem:
    """Angle reduced to [0, 1); equality is exact"""

    __slots__ = ('theta',)

    def __init__(self, theta, registry=None):
        if not isinstance(theta, SymbolicReal):
            theta = SymbolicReal.constant(Fraction(theta), registry)
        self.theta = theta - theta.floor()

    @property
    def registry(self):
        return self.theta.registry

    def is_identity(self):
        return self.theta.is_zero()

    def __eq__(self, other):
        return isinstance(other, CircleElem) and self.theta == other.theta

    def __hash__(self):
        return hash(self.theta)

    def __repr__(self):
        return f"CircleElem({self.theta.to_text()})"


def circle_mul(a, b):
    return CircleElem(a.theta + b.theta)


def circle_inv(a):
    return CircleElem(-a.theta)


def circle_pow(a, n):
    return CircleElem(a.theta * n)


def _cmp(x, y):
    return (x - y).sign()


def _mod_one(x):
    """x + 1 when x < 0; for differences of angles in [0, 1)"""
    return x + 1 if x.sign() < 0 else x


def cocycle(x, y, z):
    """
    Orientation of the triple: 0 when two points coincide, +1 when y comes
    before z going counter-clockwise from x, -1 otherwise.
    """
    if x == y or y == z or x == z:
        return 0
    return 1 if _cmp(_mod_one(y.theta - x.theta), _mod_one(z.theta - x.theta)) < 0 else -1


def winding(a, b):
    """The extension cocycle: 1 when the product ab passes the identity, else 0"""
    if a.is_identity() or b.is_identity():
        return 0
    ab = circle_mul(a, b)
    one = CircleElem(0, a.registry)
    if ab.is_identity():
        return 1
    if cocycle(one, a, ab) == 1:
        return 0
    return 1


@dataclass(frozen=True)
class ZelevaElem:
    angle: CircleElem
    n: int

    def to_text(self):
        return f"({self.angle.theta.to_text()}, {self.n})"


def zeleva_mul(p, q):
    return ZelevaElem(circle_mul(p.angle, q.angle), p.n + q.n + winding(p.angle, q.angle))


def zeleva_identity(registry=None):
    return ZelevaElem(CircleElem(0, registry), 0)


def zeleva_inv(p):
    inverse = circle_inv(p.angle)
    return ZelevaElem(inverse, -p.n - winding(p.angle, inverse))


def zeleva_pow(p, k):
    if k < 0:
        return zeleva_pow(zeleva_inv(p), -k)
    result, base = zeleva_identity(p.angle.registry), p
    while k:
        if k & 1:
            result = zeleva_mul(result, base)
        base = zeleva_mul(base, base)
        k >>= 1
    return result


def zeleva_compare(p, q):
    """Integer part first; equal integer parts compare by angle"""
    if p.n != q.n:
        return -1 if p.n < q.n else 1
    return _cmp(p.angle.theta, q.angle.theta)


def find_separating_power(alpha, beta, cap=None):
    """
    Least n >= 1 with floor(n alpha) < floor(n beta), as (n, floor(n alpha)),
    for rotation numbers 0 <= alpha < beta < 1. None when no n <= cap works.
    """
    cap = cap if cap is not None else config.settings.separation_cap
    if alpha.sign() < 0 or (beta - 1).sign() >= 0 or (beta - alpha).sign() <= 0:
        raise ContractViolation("Need 0 <= alpha < beta < 1")
    for n in range(1, cap + 1):
        low = (alpha * n).floor()
        if low < (beta * n).floor():
            return n, low
    logger.info(f"No separating power up to {cap}")
    return None


@dataclass(frozen=True)
class SeparationWitness:
    """(h, 0)^n = (h^n, k + 1) while (g, 0)^n = (g^n, k)"""
    n: int
    k: int
    lifted_power: ZelevaElem
    floor_power: ZelevaElem

    def as_dict(self):
        return {
            'n': self.n,
            'k': self.k,
            'lifted_power': self.lifted_power.to_text(),
            'floor_power': self.floor_power.to_text(),
        }


def separation_witness(alpha, beta, cap=None):
    """
    The n-th powers of (alpha, 0) and (beta, 0) in the Zeleva extension land
    in different integer layers; this is what makes the lifted order differ.
    """
    found = find_separating_power(alpha, beta, cap)
    if found is None:
        return None
    n, k = found
    low = zeleva_pow(ZelevaElem(CircleElem(alpha), 0), n)
    high = zeleva_pow(ZelevaElem(CircleElem(beta), 0), n)
    if high.n != k + 1 or low.n != k:
        raise ContractViolation("Separating power does not split the integer layers")
    return SeparationWitness(n, k, high, low)


def circle_subgroup(angles):
    """Z-span of 1 and the angles; its image in T is the generated circle subgroup"""
    angles = list(angles)
    registry = next((a.registry for a in angles if a.registry is not None), None)
    return Subgroup([SymbolicReal.constant(1, registry)] + [a.theta for a in angles if not a.is_identity()], SpanMode.Z)


def decide_circle_iso(angles1, angles2):
    """
    Whether the two finite families generate the same subgroup of T. Equal
    subgroups are isomorphic as circularly ordered groups via the identity.
    """
    return circle_subgroup(angles1).same_set(circle_subgroup(angles2))
