#!/usr/bin/env python3
"""
Finitely generated Z- and Q-spans of symbolic reals.

Elements are mapped to rational coordinate vectors in monomial space
(symreal.coordinates). A Q-span is normalized by reduced row echelon form,
a Z-span by the Hermite normal form of its integer-scaled generator columns.
Both normal forms are unique, so equal spans have equal bases.
"""

import logging
import itertools
from enum import Enum
from fractions import Fraction
from math import lcm

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from errors import ContractViolation, DivisionByZero, ParseError
from expr_parser import parse_expression_list
from symreal import SymbolicReal, coordinates, from_coordinates, linear_combination

logger = logging.getLogger('archgroups.zmodule')


class SpanMode(Enum):
    Z = 'z'
    Q = 'q'


def _to_fraction(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


class Subgroup:
    """
    Z- or Q-span of a nonempty list of nonzero symbolic reals, inside R.

    Args:
        generators: list of SymbolicReal
        span_mode: SpanMode.Z or SpanMode.Q
    """

    def __init__(self, generators, span_mode):
        generators = list(generators)
        if not generators:
            raise ContractViolation("A subgroup needs at least one generator")
        for g in generators:
            if g.is_zero():
                raise ContractViolation("Generators must be nonzero")
        self.generators = tuple(generators)
        self.span_mode = SpanMode(span_mode)
        self.registry = next((g.registry for g in generators if g.registry is not None), None)
        self._basis = None

    # -- normal form ---------------------------------------------------------

    def basis(self):
        """Canonical independent generating list (cached)"""
        if self._basis is None:
            self._basis = self._compute_basis()
        return self._basis

    def _compute_basis(self):
        monomials, D, rows = coordinates(self.generators)
        if self.span_mode is SpanMode.Q:
            R, pivots = sympy.Matrix(rows).rref()
            vectors = [[_to_fraction(R[i, j]) for j in range(R.cols)] for i in range(len(pivots))]
        else:
            scale = lcm(*(c.denominator for row in rows for c in row))
            A = sympy.Matrix([[int(c * scale) for c in row] for row in rows]).T
            H = hermite_normal_form(A)
            vectors = []
            for j in range(H.cols):
                col = [Fraction(int(H[i, j]), scale) for i in range(H.rows)]
                if any(col):
                    vectors.append(col)
            vectors.sort(key=_vector_order)
        basis = tuple(from_coordinates(v, monomials, D, self.registry) for v in vectors)
        logger.debug(f"basis({self.span_mode.value}, {len(self.generators)} generators) -> rank {len(basis)}")
        return basis

    def rank(self):
        return len(self.basis())

    # -- membership ------------------------------------------------------------

    def member(self, x):
        """
        Coefficients c with x = sum c_i * basis_i, or None when x is not in
        the span. Q-spans give rationals, Z-spans integers.
        """
        if x.is_zero():
            return [Fraction(0)] * self.rank()
        basis = self.basis()
        monomials, D, rows = coordinates(list(basis) + [x])
        B = sympy.Matrix(rows[:-1]).T
        v = sympy.Matrix(rows[-1])
        try:
            solution, params = B.gauss_jordan_solve(v)
        except ValueError:
            return None
        if params.shape[0]:
            solution = solution.subs({p: 0 for p in params})
        coeffs = [_to_fraction(solution[i, 0]) for i in range(len(basis))]
        if self.span_mode is SpanMode.Z and any(c.denominator != 1 for c in coeffs):
            return None
        return coeffs

    def contains(self, x):
        return self.member(x) is not None

    def same_set(self, other):
        """Mutual basis membership"""
        if self.span_mode is not other.span_mode:
            return False
        return all(other.contains(b) for b in self.basis()) and all(self.contains(b) for b in other.basis())

    # -- derived groups --------------------------------------------------------

    def scale(self, lam):
        if not isinstance(lam, SymbolicReal):
            lam = SymbolicReal.constant(lam, self.registry)
        if lam.is_zero():
            raise DivisionByZero("Cannot scale a subgroup by zero")
        return Subgroup([lam * b for b in self.basis()], self.span_mode)

    def element_enum(self, height):
        """
        Elements sum c_i * basis_i with coefficient height <= height, graded by
        the largest coefficient height, then lexicographically. Duplicates
        removed.
        """
        if height < 0:
            raise ContractViolation("Height must be non-negative")
        basis = self.basis()
        coeffs = _coefficients(self.span_mode, height)
        combos = sorted(
            itertools.product(coeffs, repeat=len(basis)),
            key=lambda cs: (max(_height(c) for c in cs), cs),
        )
        seen, out = set(), []
        for cs in combos:
            value = linear_combination(cs, basis, self.registry)
            if value not in seen:
                seen.add(value)
                out.append(value)
        return out

    # -- presentation ----------------------------------------------------------

    def to_text(self):
        return f"{self.span_mode.value} [{', '.join(g.to_text() for g in self.generators)}]"

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.span_mode is other.span_mode and self.basis() == other.basis()

    def __hash__(self):
        return hash((self.span_mode, self.basis()))

    def __repr__(self):
        return f"Subgroup({self.to_text()})"


def _vector_order(v):
    first = next(i for i, c in enumerate(v) if c)
    last = max(i for i, c in enumerate(v) if c)
    return (first, last, tuple(v))


def _height(q):
    if not q:
        return 0
    return max(abs(q.numerator), q.denominator)


def _coefficients(span_mode, height):
    if span_mode is SpanMode.Z:
        return [Fraction(c) for c in range(-height, height + 1)]
    values = {Fraction(0)}
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            values.add(Fraction(p, q))
    return sorted(values)


# -- operation-style API ------------------------------------------------------

def basis(group):
    return list(group.basis())


def member(group, x):
    return group.member(x)


def scale(group, lam):
    return group.scale(lam)


def element_enum(group, height):
    return group.element_enum(height)


def parse_subgroup(text, registry):
    """`z [g1, g2, ...]` or `q [...]`"""
    mode, _, rest = text.strip().partition(' ')
    try:
        span_mode = SpanMode(mode.lower())
    except ValueError:
        raise ParseError(f"Subgroup literal must start with z or q: {text!r}")
    return Subgroup(parse_expression_list(rest, registry), span_mode)
