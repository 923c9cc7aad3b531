#!/usr/bin/env python3
"""Tests for finite-support Hahn series over ordered exponent groups"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import algebraic_registry
from errors import ExponentGroupMismatch, ParseError, ZeroSeries
from symreal import SymbolicReal
from archgroup import OrderedVectorGroup, TypeVector
from reductions import ColoredLinearOrder, OdagElement, clo_to_odag, odag_embed_from_clo
from hahn import (
    HahnSeries,
    constant,
    format_series,
    hahn_compare,
    hahn_mul,
    leading_coefficient,
    lift_exponent_map,
    monomial,
    parse_series,
    valuation,
)

REGISTRY = algebraic_registry()
S1 = REGISTRY.symbol('s1')
ONE = SymbolicReal.constant(1, REGISTRY)

G = OrderedVectorGroup(TypeVector([ONE, S1]), integral=True)
ZERO = G.zero()
g = (1, 0)

exponents = st.tuples(st.integers(min_value=-2, max_value=2), st.integers(min_value=-2, max_value=2))
coefficients = st.builds(Fraction, st.integers(min_value=-4, max_value=4), st.integers(min_value=1, max_value=3))
series = st.lists(st.tuples(exponents, coefficients), max_size=4).map(lambda terms: HahnSeries(G, terms))


def t(exponent, coeff=1):
    return monomial(G, exponent, coeff)


# -- ring structure --------------------------------------------------------------------

def test_difference_of_squares():
    f = (t(ZERO) + t(g)) * (t(ZERO) - t(g))
    assert f == t(ZERO) - t((2, 0))


def test_zero_terms_dropped():
    f = HahnSeries(G, [(g, 2), (g, -2), (ZERO, 0)])
    assert f.is_zero()
    assert f == HahnSeries(G)


@given(series, series, series)
def test_ring_laws(f, h, k):
    assert f + h == h + f
    assert f * h == h * f
    assert (f * h) * k == f * (h * k)
    assert f * (h + k) == f * h + f * k
    assert (f - f).is_zero()
    assert f * constant(G, 1) == f


# -- valuation and order -------------------------------------------------------------------

def test_infinitesimal_below_constants():
    assert hahn_compare(t(g), t(ZERO)) == -1
    assert hahn_compare(t(g), HahnSeries(G)) == 1
    assert hahn_compare(t(ZERO), t(ZERO)) == 0


def test_valuation():
    f = t((0, 1), 3) + t((2, 0), -1) + t((1, 0), 5)
    # (1, 0) weighs 1 < sqrt 2 < 2
    assert valuation(f) == (1, 0)
    assert leading_coefficient(f) == 5
    with pytest.raises(ZeroSeries):
        valuation(HahnSeries(G))


def test_sign_follows_leading_coefficient():
    f = t(g, -1) + t((0, 1), 100)
    assert hahn_compare(f, HahnSeries(G)) == -1


@given(series, series)
def test_valuation_of_products(f, h):
    if f.is_zero() or h.is_zero():
        assert (f * h).is_zero()
        return
    assert G.compare(valuation(f * h), G.add(valuation(f), valuation(h))) == 0
    assert leading_coefficient(f * h) == leading_coefficient(f) * leading_coefficient(h)


@given(series, series, series)
def test_order_is_compatible(f, h, k):
    c = hahn_compare(f, h)
    assert c == -hahn_compare(h, f)
    assert hahn_compare(f + k, h + k) == c
    if hahn_compare(k, HahnSeries(G)) > 0:
        assert hahn_compare(f * k, h * k) == c


def test_mismatched_groups():
    other = OrderedVectorGroup(TypeVector([ONE]), integral=True)
    with pytest.raises(ExponentGroupMismatch):
        hahn_mul(t(ZERO), monomial(other, (0,)))


# -- ODAG exponents and lifting ------------------------------------------------------------

def test_odag_exponents():
    K = ColoredLinearOrder([0, 1], [0, 0])
    GK = clo_to_odag(K, REGISTRY)
    low, high = GK.indicator(0), GK.indicator(1)
    f = monomial(GK, low) + monomial(GK, high, -1)
    # high is the larger exponent, so t^high is the smaller infinitesimal
    assert valuation(f) == low
    assert hahn_compare(monomial(GK, high), monomial(GK, low)) == -1


def test_lift_exponent_map():
    K = ColoredLinearOrder([0], [0])
    L = ColoredLinearOrder([0, 1], [1, 0])
    phi = odag_embed_from_clo((1,), K, L, REGISTRY)
    x = OdagElement({0: (1, 2)})
    f = monomial(phi.source, x, 3) + constant(phi.source, -1)
    lifted = lift_exponent_map(f, phi, phi.target)
    assert lifted.coefficient(OdagElement({1: (1, 2)})) == 3
    assert lifted.coefficient(phi.target.zero()) == -1
    assert hahn_compare(lifted, HahnSeries(phi.target)) == hahn_compare(f, HahnSeries(phi.source))


# -- text ------------------------------------------------------------------------------------

def test_parse_series():
    f = parse_series('1 - 2*t^((2, 0)) + 1/2*t^((0, 1))', G)
    assert f == t(ZERO) - t((2, 0), 2) + t((0, 1), Fraction(1, 2))
    assert parse_series('0', G).is_zero()
    assert parse_series('-t^((1, 0))', G) == t(g, -1)
    with pytest.raises(ParseError):
        parse_series('1 +', G)
    with pytest.raises(ParseError):
        parse_series('2*x^((1, 0))', G)


@given(series)
def test_format_parses_back(f):
    assert parse_series(format_series(f), G) == f


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, '-v']))
