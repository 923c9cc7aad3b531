#!/usr/bin/env python3
"""
Archimedean orders on Z^n and Q^n given by a type vector, and the Holder
realization of an Archimedean group as a subgroup of R by Dedekind cuts.
"""

import logging
from fractions import Fraction

import sympy

from errors import ContractViolation, DimensionMismatch, InvalidType, ParseError, UnitNotPositive
from expr_parser import parse_expression_list, parse_rational_tuple
from symreal import coordinates, linear_combination

logger = logging.getLogger('archgroups.archgroup')


class TypeVector:
    """
    (alpha_1, ..., alpha_n) with alpha_1 = +-1 and the entries Q-linearly
    independent. Orders Z^n and Q^n by x <= y iff sum x_i alpha_i <= sum y_i alpha_i.
    """

    def __init__(self, entries):
        entries = list(entries)
        if not entries:
            raise InvalidType("A type vector needs at least one entry")
        lead = entries[0].as_rational()
        if lead not in (1, -1):
            raise InvalidType(f"First entry must be 1 or -1, got {entries[0].to_text()}")
        _, _, rows = coordinates(entries)
        if sympy.Matrix(rows).rank() != len(entries):
            raise InvalidType("Type vector entries are not Q-linearly independent")
        self.entries = tuple(entries)
        self.registry = next((e.registry for e in entries if e.registry is not None), None)

    @property
    def rank(self):
        return len(self.entries)

    def weigh(self, x):
        """sum x_i alpha_i"""
        if len(x) != self.rank:
            raise DimensionMismatch(f"Expected {self.rank} coordinates, got {len(x)}")
        return linear_combination([Fraction(c) for c in x], self.entries, self.registry)

    def to_text(self):
        return f"[{', '.join(e.to_text() for e in self.entries)}]"

    def __eq__(self, other):
        return isinstance(other, TypeVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"TypeVector({self.to_text()})"


def order_from_type(type_vector, x, y):
    """-1 / 0 / +1 comparing x and y under the order defined by type_vector"""
    if len(x) != len(y):
        raise DimensionMismatch(f"Cannot compare vectors of length {len(x)} and {len(y)}")
    diff = [Fraction(a) - Fraction(b) for a, b in zip(x, y)]
    return type_vector.weigh(diff).sign()


class OrderedVectorGroup:
    """
    Z^n or Q^n with the order of a type vector. Also serves as an exponent
    group for Hahn series.

    Args:
        type_vector: TypeVector
        integral: True for Z^n, False for Q^n
    """

    def __init__(self, type_vector, integral=False):
        self.type_vector = type_vector
        self.integral = integral

    @property
    def rank(self):
        return self.type_vector.rank

    def _check(self, x):
        if len(x) != self.rank:
            raise DimensionMismatch(f"Expected {self.rank} coordinates, got {len(x)}")
        if self.integral and any(Fraction(c).denominator != 1 for c in x):
            raise ContractViolation(f"{x} is not an integer vector")
        return tuple(Fraction(c) for c in x)

    def compare(self, x, y):
        return order_from_type(self.type_vector, self._check(x), self._check(y))

    def add(self, x, y):
        return tuple(a + b for a, b in zip(self._check(x), self._check(y)))

    def neg(self, x):
        return tuple(-a for a in self._check(x))

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.rank))

    def key(self, x):
        return self._check(x)

    def embed(self, x):
        """Image in R under the Holder embedding normalized at e_1"""
        return self.type_vector.weigh(self._check(x))

    def parse_element(self, text):
        return self._check(parse_rational_tuple(text))

    def format_element(self, x):
        return '(' + ', '.join(str(c) for c in x) + ')'

    def __eq__(self, other):
        return (
            isinstance(other, OrderedVectorGroup)
            and self.integral == other.integral
            and self.type_vector == other.type_vector
        )

    def __hash__(self):
        return hash((self.type_vector, self.integral))

    def __repr__(self):
        field = 'Z' if self.integral else 'Q'
        return f"OrderedVectorGroup({field}^{self.rank}, {self.type_vector.to_text()})"


class OracleGroup:
    """Z^n ordered by a comparison callable; only the group operations are known"""

    def __init__(self, cmp, n):
        self.cmp = cmp
        self.n = n

    def compare(self, x, y):
        return self.cmp(x, y)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def zero(self):
        return (0,) * self.n

    def unit_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.n))


def _multiple(group, x, k):
    """k * x for k >= 0 by doubling, using only group.add"""
    result, base = group.zero(), x
    while k:
        if k & 1:
            result = group.add(result, base)
        base = group.add(base, base)
        k >>= 1
    return result


def holder_cut(group, u, t, eps):
    """
    Rational interval [lo, hi] of width <= eps containing x(t), the real
    image of t under the order embedding with x(u) = 1.

    Args:
        group: object with compare/add/neg/zero
        u: positive unit element
        t: element to realize
        eps: positive rational width
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ContractViolation("holder_cut needs a positive width")
    zero = group.zero()
    if group.compare(u, zero) <= 0:
        raise UnitNotPositive("Unit element must be positive")
    s = group.compare(t, zero)
    if s == 0:
        return Fraction(0), Fraction(0)
    if s < 0:
        lo, hi = holder_cut(group, u, group.neg(t), eps)
        return -hi, -lo

    # x(t) lies in (lo, hi]; a point m/n is below x(t) iff m*u < n*t
    lo, hi = Fraction(0), Fraction(1)
    while True:
        c = group.compare(_multiple(group, u, int(hi)), t)
        if c == 0:
            return hi, hi
        if c > 0:
            break
        lo, hi = hi, hi * 2
    while hi - lo > eps:
        mid = (lo + hi) / 2
        c = group.compare(_multiple(group, u, mid.numerator), _multiple(group, t, mid.denominator))
        if c == 0:
            return mid, mid
        if c < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def holder_realize(group, u, elements, eps):
    return [holder_cut(group, u, t, eps) for t in elements]


def positive_cone_member(group, x):
    return group.compare(x, group.zero()) > 0


def extract_type(cmp, n, eps):
    """
    Recover the type of an Archimedean order on Z^n from a comparison oracle.

    Returns n rational intervals; the first is exactly [1, 1] or [-1, -1].
    """
    if n < 1:
        raise DimensionMismatch("Rank must be positive")
    group = OracleGroup(cmp, n)
    e1 = group.unit_vector(0)
    u = e1 if group.compare(e1, group.zero()) > 0 else group.neg(e1)
    intervals = [holder_cut(group, u, group.unit_vector(i), eps) for i in range(n)]
    logger.debug(f"extract_type(n={n}, eps={eps}) -> {intervals}")
    return intervals


def parse_type_vector(text, registry):
    return TypeVector(parse_expression_list(text, registry))


def parse_int_vector(text):
    values = parse_rational_tuple(text)
    if any(v.denominator != 1 for v in values):
        raise ParseError(f"Expected an integer vector: {text!r}")
    return tuple(int(v) for v in values)


def type_order(type_vector):
    """Comparison callable on integer vectors for a given type"""
    def cmp(x, y):
        return order_from_type(type_vector, x, y)
    return cmp
