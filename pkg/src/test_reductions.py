#!/usr/bin/env python3
"""
Tests for the reductions: the GL2(Z) action and unit-span groups, fields of
countable sets, and colored linear orders against their ODAGs.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import algebraic_registry
from errors import ContractViolation, InvalidInjection, ParseError, PoleAtInput
from classify import Direction, decide_field_embed, decide_unit_span, verify_scaling
from symreal import SymbolRegistry, SymbolicReal
from reductions import (
    ColoredLinearOrder,
    GL2ZMatrix,
    OdagElement,
    _coefficient_relation,
    archimedean_compare,
    clo_embed_bruteforce,
    clo_to_odag,
    color_symbol,
    countable_set_reduction,
    enumerate_clos,
    extract_phi_star,
    gl2_apply,
    gl2_orbit_to_unit_span,
    odag_compare,
    odag_embed_from_clo,
    odag_valuation,
    parse_clo,
    random_gl2z,
    structured_embed_search,
)

REGISTRY = algebraic_registry()
T = REGISTRY.symbol('t')

ODAG_REGISTRY = SymbolRegistry()

matrices = st.integers(min_value=0, max_value=10 ** 6).map(lambda seed: random_gl2z(random.Random(seed)))
small_rationals = st.builds(Fraction, st.integers(min_value=-5, max_value=5), st.integers(min_value=1, max_value=3))


def chain(*colors):
    """Colored order 0 < 1 < ... with the given colors"""
    return ColoredLinearOrder(range(len(colors)), colors)


@st.composite
def odag_elements(draw, order):
    terms = {}
    for pos in order.positions():
        if draw(st.booleans()):
            terms[pos] = (draw(small_rationals), draw(small_rationals))
    return OdagElement(terms)


# -- GL2(Z) ------------------------------------------------------------------------------

def test_gl2_examples():
    assert gl2_apply(GL2ZMatrix(1, 0, 0, 1), T) == T
    assert gl2_apply(GL2ZMatrix(0, 1, 1, 0), T) == 1 / T
    assert gl2_apply(GL2ZMatrix(1, 1, 1, 0), T) == (T + 1) / T


def test_gl2_determinant():
    with pytest.raises(ContractViolation):
        GL2ZMatrix(2, 0, 0, 1)
    M = GL2ZMatrix(2, 1, 1, 1)
    assert M @ M.inverse() == GL2ZMatrix(1, 0, 0, 1)


def test_gl2_pole():
    with pytest.raises(PoleAtInput):
        gl2_apply(GL2ZMatrix(0, 1, 1, -1), SymbolicReal.constant(1, REGISTRY))


@given(matrices, matrices)
def test_group_action_law(M1, M2):
    assert gl2_apply(M1 @ M2, T) == gl2_apply(M1, gl2_apply(M2, T))


@given(matrices)
def test_orbit_gives_isomorphic_unit_spans(M):
    beta = gl2_apply(M, T)
    relation = decide_unit_span(T, beta, Direction.ISO)
    assert relation is not None
    lam = relation.scalar(beta)
    pole = T * M.c + M.d
    assert lam == 1 / (pole if pole.sign() > 0 else -pole)
    assert verify_scaling(gl2_orbit_to_unit_span(T), gl2_orbit_to_unit_span(beta), lam, Direction.ISO)


def test_color_groups_are_incomparable():
    sigmas = [color_symbol(ODAG_REGISTRY, c) for c in range(3)]
    for a in sigmas:
        for b in sigmas:
            if a != b:
                assert decide_unit_span(a, b, Direction.EMBED) is None


def test_countable_set_reduction():
    F = countable_set_reduction(REGISTRY, ['t', 't', 'u'])
    assert F.symbols == frozenset({'t', 'u'})
    assert countable_set_reduction(REGISTRY, []).symbols == frozenset()
    Ft, Fu = countable_set_reduction(REGISTRY, ['t']), countable_set_reduction(REGISTRY, ['u'])
    assert (decide_field_embed(Ft, Fu), decide_field_embed(Fu, Ft)) == (False, False)


# -- colored linear orders ----------------------------------------------------------------

def test_parse_clo():
    K = parse_clo('2<0<1', '0,1,0')
    assert K.ascending() == [2, 0, 1]
    assert K.less(2, 0) and not K.less(1, 0)
    with pytest.raises(ParseError):
        parse_clo('0<x', '0,0')
    with pytest.raises(ContractViolation):
        parse_clo('0<0', '0,0')


def test_clo_embed_examples():
    assert clo_embed_bruteforce(chain(0), chain(0, 1)) == (0,)
    assert clo_embed_bruteforce(chain(0, 1), chain(0)) is None
    assert clo_embed_bruteforce(chain(0, 0), chain(0, 1, 0)) == (0, 2)
    assert clo_embed_bruteforce(chain(), chain(1)) == ()


def test_enumerate_clos():
    orders = list(enumerate_clos(4, 3))
    assert len(orders) == 1 + 3 + 9 + 27 + 81
    assert len(set(orders)) == len(orders)


# -- ODAGs --------------------------------------------------------------------------------------

def test_odag_examples():
    single = clo_to_odag(chain(0), ODAG_REGISTRY)
    assert single.coefficient_group(0) == gl2_orbit_to_unit_span(color_symbol(ODAG_REGISTRY, 0))

    G = clo_to_odag(chain(0, 1), ODAG_REGISTRY)
    f = OdagElement({1: (-1, 0)})
    assert odag_compare(G, f, G.zero()) == -1
    assert odag_compare(G, G.zero(), G.indicator(1)) == -1
    assert odag_compare(G, OdagElement({0: (100, 0)}), OdagElement({1: (0, 1)})) == -1
    assert odag_compare(G, f, f) == 0

    empty = clo_to_odag(chain(), ODAG_REGISTRY)
    assert odag_compare(empty, empty.zero(), empty.zero()) == 0


def test_odag_valuation_and_classes():
    G = clo_to_odag(parse_clo('1<0<2', '0,0,1'), ODAG_REGISTRY)
    f = OdagElement({0: (1, 0), 1: (5, 0)})
    g = OdagElement({1: (1, 0)})
    assert odag_valuation(G, f) == 0
    assert archimedean_compare(G, g, f) == -1
    assert archimedean_compare(G, f, G.add(f, g)) == 0
    with pytest.raises(ContractViolation):
        odag_valuation(G, G.zero())
    with pytest.raises(ContractViolation):
        archimedean_compare(G, G.neg(f), g)


@given(st.data())
def test_odag_order_is_translation_invariant(data):
    G = clo_to_odag(parse_clo('2<0<1', '0,1,2'), ODAG_REGISTRY)
    f, g, h = (data.draw(odag_elements(G.order)) for _ in range(3))
    c = odag_compare(G, f, g)
    assert c == -odag_compare(G, g, f)
    assert (c == 0) == (f == g)
    assert odag_compare(G, G.add(f, h), G.add(g, h)) == c
    if c <= 0 and odag_compare(G, g, h) <= 0:
        assert odag_compare(G, f, h) <= 0


def test_odag_embedding_examples():
    K = chain(0, 1)
    phi = odag_embed_from_clo((0, 1), K, K, ODAG_REGISTRY)
    f = OdagElement({0: (1, 2), 1: (0, -1)})
    assert phi(f) == f

    psi = odag_embed_from_clo((2,), chain(1), chain(0, 0, 1), ODAG_REGISTRY)
    assert psi(OdagElement({0: (1, 1)})) == OdagElement({2: (1, 1)})
    assert extract_phi_star(psi.source, psi.target, psi) == {0: 2}

    with pytest.raises(InvalidInjection):
        odag_embed_from_clo((1, 0), K, K, ODAG_REGISTRY)
    with pytest.raises(InvalidInjection):
        odag_embed_from_clo((0,), chain(0), chain(1), ODAG_REGISTRY)


@given(st.data())
def test_odag_embedding_preserves_order(data):
    K = parse_clo('1<0<2', '0,1,0')
    L = parse_clo('3<0<1<2', '0,0,0,1')
    j = clo_embed_bruteforce(K, L)
    assert j is not None
    phi = odag_embed_from_clo(j, K, L, ODAG_REGISTRY)
    f = data.draw(odag_elements(K))
    g = data.draw(odag_elements(K))
    assert odag_compare(phi.target, phi(f), phi(g)) == odag_compare(phi.source, f, g)
    assert phi(phi.source.add(f, g)) == phi.target.add(phi(f), phi(g))


def test_embeddings_match_colored_order_embeddings():
    """Every pair of orders with at most 4 points and 3 colors"""
    orders = list(enumerate_clos(4, 3))
    groups = {K: clo_to_odag(K, ODAG_REGISTRY) for K in orders}
    rng = random.Random(7)
    for K in orders:
        for L in orders:
            j = clo_embed_bruteforce(K, L)
            found = structured_embed_search(groups[K], groups[L])
            if j is None:
                assert found is None, (K, L)
                continue
            assert found is not None and found.j == j, (K, L)
            if K.size and rng.random() < 0.02:
                phi = odag_embed_from_clo(j, K, L, ODAG_REGISTRY)
                f = OdagElement({n: (rng.randint(-3, 3), rng.randint(-3, 3)) for n in K.positions()})
                g = OdagElement({n: (rng.randint(-3, 3), rng.randint(-3, 3)) for n in K.positions()})
                assert odag_compare(groups[L], phi(f), phi(g)) == odag_compare(groups[K], f, g)
                assert extract_phi_star(groups[K], groups[L], phi) == dict(enumerate(j))


def test_coefficient_relation_cache_is_bounded():
    _coefficient_relation.cache_clear()
    K, L = parse_clo('0<1', '1,0'), parse_clo('0<1<2', '0,1,0')
    GK, GL = clo_to_odag(K, ODAG_REGISTRY), clo_to_odag(L, ODAG_REGISTRY)
    first = structured_embed_search(GK, GL)
    misses = _coefficient_relation.cache_info().misses
    assert misses > 0
    second = structured_embed_search(GK, GL)
    info = _coefficient_relation.cache_info()
    assert info.maxsize == 1024 and info.misses == misses
    assert info.currsize <= info.maxsize
    assert (first is None) == (second is None) == (clo_embed_bruteforce(K, L) is None)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, '-v']))
