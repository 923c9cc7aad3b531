#!/usr/bin/env python3
"""
Archimedean Groups - Acceptance Run

Runs the eight acceptance checks at full sample size with a fixed seed and
prints a step-by-step report. Exit code 0 only when every check passes.
"""

import sys
import time
import math
import random
import logging
from fractions import Fraction

import sympy

from symreal import Mode, SymbolRegistry, SymbolicReal, approx, floor, linear_combination, sign
from zmodule import SpanMode, Subgroup
from archgroup import OrderedVectorGroup, TypeVector, extract_type, type_order
from classify import (
    Decision,
    Direction,
    PointedGroup,
    decide_pointed_iso,
    decide_unit_span,
    emit_invariant,
    invariant_equal,
    invariant_slice,
    verify_scaling,
)
from reductions import (
    OdagElement,
    clo_embed_bruteforce,
    clo_to_odag,
    enumerate_clos,
    gl2_apply,
    odag_compare,
    odag_embed_from_clo,
    random_gl2z,
    structured_embed_search,
)
from circular import CircleElem, ZelevaElem, circle_mul, circle_pow, cocycle, find_separating_power, zeleva_pow
from hahn import HahnSeries, hahn_compare, monomial, valuation, leading_coefficient

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(),
        logging.FileHandler('run_acceptance.log')
    ]
)
logger = logging.getLogger('archgroups.acceptance')

SEED = 20240917


def build_registry():
    """s1..s3 linear (square roots), t, u, w algebraic (pi, e, ln 2)"""
    registry = SymbolRegistry()
    for name, const in (('s1', 'sqrt2'), ('s2', 'sqrt3'), ('s3', 'sqrt5')):
        registry.declare(name, Mode.LINEAR, f"const:{const}")
    for name, const in (('t', 'pi'), ('u', 'e'), ('w', 'ln2')):
        registry.declare(name, Mode.ALGEBRAIC, f"const:{const}")
    return registry


def random_rational(rng, height=10):
    return Fraction(rng.randint(1, height), rng.randint(1, height))


def random_group(rng, registry, symbols=('s1', 's2', 's3')):
    """Z-span of at most 3 integer combinations of 1 and the given symbols"""
    values = [SymbolicReal.constant(1, registry)] + [registry.symbol(s) for s in symbols]
    generators = []
    for _ in range(rng.randint(1, 3)):
        cs = [rng.randint(-3, 3) for _ in values]
        if not any(cs):
            cs[0] = 1
        generators.append(linear_combination(cs, values, registry))
    return Subgroup(generators, SpanMode.Z)


def positive(x):
    return x if x.sign() > 0 else -x


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_pointed(rng, registry):
    """Pointed isomorphism is decided on scaled copies and refuted after perturbing the point"""
    failures = 0
    for _ in range(200):
        G = random_group(rng, registry)
        g = positive(G.basis()[0])
        lam = random_rational(rng)
        H = G.scale(lam)
        witness = decide_pointed_iso(PointedGroup(G, g), PointedGroup(H, g * lam))
        if witness is None or not verify_scaling(G, H, witness.lam, Direction.ISO):
            failures += 1
        if decide_pointed_iso(PointedGroup(G, g), PointedGroup(H, g * (lam * 2))) is not None:
            failures += 1
    return failures, 200


def check_gl2(rng, registry):
    """GL2(Z) orbits give isomorphic unit-span groups; distinct symbols give none"""
    failures = 0
    alpha = registry.symbol('t')
    for _ in range(100):
        M = random_gl2z(rng)
        beta = gl2_apply(M, alpha)
        relation = decide_unit_span(alpha, beta, Direction.ISO)
        if relation is None:
            failures += 1
            continue
        pole = positive(alpha * M.c + M.d)
        lam = relation.scalar(beta)
        if lam != 1 / pole:
            failures += 1
    names = registry.names()
    for _ in range(50):
        a, b = rng.sample(names, 2)
        x, y = registry.symbol(a), registry.symbol(b)
        for direction in (Direction.ISO, Direction.EMBED):
            if decide_unit_span(x, y, direction) is not None:
                failures += 1
    return failures, 150


def check_holder(rng):
    """extract_type recovers decimal-bound type entries to 2^-20"""
    registry = SymbolRegistry()
    for i, p in enumerate((2, 3, 5), 1):
        digits = sympy.N(sympy.sqrt(p), 80)
        registry.declare(f"d{i}", Mode.LINEAR, f"decimal:{digits}")
    eps = Fraction(1, 2 ** 20)
    failures = 0
    for _ in range(25):
        n = rng.randint(1, 3)
        lead = rng.choice((1, -1))
        entries = [SymbolicReal.constant(lead, registry)]
        for i in range(1, n):
            d = registry.symbol(f"d{i}")
            entries.append(d * random_rational(rng, 5) - random_rational(rng, 5))
        V = TypeVector(entries)
        intervals = extract_type(type_order(V), n, eps)
        if intervals[0] != (lead, lead):
            failures += 1
        for (lo, hi), entry in zip(intervals, entries):
            if hi - lo > eps or (entry - lo).sign() < 0 or (entry - hi).sign() > 0:
                failures += 1
    return failures, 25


def check_invariants(rng, registry):
    """invariant_equal on scaled copies and unit-span pairs; fragment matching"""
    failures = 0
    for _ in range(50):
        G = random_group(rng, registry)
        verdict = invariant_equal(G, G.scale(random_rational(rng)), 2)
        if verdict.answer is not Decision.YES:
            failures += 1
    linear = ['s1', 's2', 's3']
    for _ in range(20):
        a, b = rng.sample(linear, 2)
        G = Subgroup([SymbolicReal.constant(1, registry), registry.symbol(a)], SpanMode.Q)
        H = Subgroup([SymbolicReal.constant(1, registry), registry.symbol(b) * random_rational(rng)], SpanMode.Q)
        if invariant_equal(G, H, 2).answer is not Decision.NO:
            failures += 1
    for _ in range(5):
        G = random_group(rng, registry, symbols=('t',))
        H = G.scale(random_rational(rng))
        verdict = invariant_equal(G, H, 2)
        if verdict.answer is not Decision.YES:
            failures += 1
            continue
        lam = verdict.witness.lam
        fragment = emit_invariant(G, 2)
        for S, r in zip(fragment.slices, fragment.representatives):
            if not invariant_slice(H, lam * r).same_set(S):
                failures += 1
    return failures, 75


def check_colored_orders(rng, registry):
    """Colored-order embeddings match group embeddings on all small orders"""
    orders = list(enumerate_clos(4, 3))
    groups = {K: clo_to_odag(K, registry) for K in orders}
    failures = cases = 0
    embeddable = []
    for K in orders:
        for L in orders:
            cases += 1
            j = clo_embed_bruteforce(K, L)
            found = structured_embed_search(groups[K], groups[L])
            if (j is None) != (found is None) or (found is not None and found.j != j):
                failures += 1
            if j is not None and K.size:
                embeddable.append((K, L, j))
    for K, L, j in rng.sample(embeddable, min(200, len(embeddable))):
        phi = odag_embed_from_clo(j, K, L, registry)
        for _ in range(100):
            f, g = (
                OdagElement({n: (rng.randint(-3, 3), rng.randint(-3, 3)) for n in K.positions() if rng.random() < 0.7})
                for _ in range(2)
            )
            if odag_compare(groups[L], phi(f), phi(g)) != odag_compare(groups[K], f, g):
                failures += 1
    return failures, cases


def check_circular(rng, registry):
    """Cocycle axioms, the Zeleva power law and separating powers"""
    failures = 0
    angle = lambda: CircleElem(Fraction(rng.randint(0, 59), 60), registry)
    for _ in range(1000):
        x, y, z, w = angle(), angle(), angle(), angle()
        if cocycle(x, y, z) != cocycle(y, z, x) or cocycle(x, y, z) != -cocycle(y, x, z):
            failures += 1
        if cocycle(y, z, w) - cocycle(x, z, w) + cocycle(x, y, w) - cocycle(x, y, z) != 0:
            failures += 1
        if cocycle(circle_mul(w, x), circle_mul(w, y), circle_mul(w, z)) != cocycle(x, y, z):
            failures += 1
    for _ in range(50):
        g = angle()
        for n in range(1, 51):
            power = zeleva_pow(ZelevaElem(g, 0), n)
            if power.n != math.floor(g.theta.as_rational() * n) or power.angle != circle_pow(g, n):
                failures += 1
    for _ in range(100):
        a, b = sorted(rng.sample(range(0, 200), 2))
        alpha, beta = Fraction(a, 200), Fraction(b, 200)
        expected = next(((n, math.floor(n * alpha)) for n in range(1, 1001)
                         if math.floor(n * alpha) < math.floor(n * beta)), None)
        found = find_separating_power(SymbolicReal.constant(alpha, registry), SymbolicReal.constant(beta, registry), 1000)
        if found != expected:
            failures += 1
    return failures, 1000 + 2500 + 100


def _random_series(rng, group, exponent):
    return HahnSeries(group, [(exponent(), Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(rng.randint(0, 4))])


def check_hahn(rng, registry):
    """Ordered ring laws, valuation multiplicativity and the monomial rule"""
    vector_group = OrderedVectorGroup(TypeVector([SymbolicReal.constant(1, registry), registry.symbol('s1')]), integral=True)
    odag = clo_to_odag(next(K for K in enumerate_clos(3, 2) if K.size == 3 and len(set(K.colors)) == 2), registry)
    kinds = [
        (vector_group, lambda: (rng.randint(-2, 2), rng.randint(-2, 2))),
        (odag, lambda: OdagElement({n: (rng.randint(-2, 2), rng.randint(-1, 1)) for n in range(3) if rng.random() < 0.5})),
    ]
    failures = 0
    for i in range(500):
        group, exponent = kinds[i % 2]
        f, g, h = (_random_series(rng, group, exponent) for _ in range(3))
        zero = HahnSeries(group)
        if f * (g + h) != f * g + f * h or (f * g) * h != f * (g * h):
            failures += 1
        c = hahn_compare(f, g)
        if hahn_compare(f + h, g + h) != c:
            failures += 1
        if hahn_compare(h, zero) > 0 and hahn_compare(f * h, g * h) != c:
            failures += 1
        if not f.is_zero() and not g.is_zero():
            if group.compare(valuation(f * g), group.add(valuation(f), valuation(g))) != 0:
                failures += 1
            if leading_coefficient(f * g) != leading_coefficient(f) * leading_coefficient(g):
                failures += 1
        a, b = exponent(), exponent()
        if monomial(group, a) * monomial(group, b) != monomial(group, group.add(a, b)):
            failures += 1
    return failures, 500


def check_kernel(rng, registry):
    """Ring laws, sign/approx coherence and floor correctness of symbolic reals"""
    symbols = [registry.symbol(s) for s in ('t', 'u', 'w')]

    def poly():
        value = SymbolicReal.constant(rng.randint(-4, 4), registry)
        for _ in range(rng.randint(0, 3)):
            term = SymbolicReal.constant(rng.randint(-4, 4), registry)
            for sym in symbols:
                for _ in range(rng.randint(0, 2)):
                    term = term * sym
            value = value + term
        return value

    def rational_function():
        den = poly()
        while den.is_zero():
            den = poly()
        return poly() / den

    failures = 0
    for _ in range(1000):
        x, y, z = rational_function(), rational_function(), rational_function()
        if x * (y + z) != x * y + x * z or (x + y) + z != x + (y + z) or not (x - x).is_zero():
            failures += 1
    eps = Fraction(1, 10 ** 6)
    for _ in range(1000):
        x = rational_function()
        s = sign(x)
        if x.is_zero():
            failures += s != 0
            continue
        lo, hi = approx(x, eps)
        if hi - lo > eps or not ((s > 0 and hi > 0) or (s < 0 and lo < 0)):
            failures += 1
    for _ in range(1000):
        x = poly()
        n = floor(x)
        lo, hi = approx(x, Fraction(1, 10 ** 9))
        if not (n <= hi and lo < n + 1):
            failures += 1
    return failures, 3000


CHECKS = [
    ("Pointed-group completeness", check_pointed, True),
    ("GL2(Z) orbits and unit-span groups", check_gl2, True),
    ("Type extraction round trip", check_holder, False),
    ("Invariant calculus", check_invariants, True),
    ("Colored orders vs ODAG embeddings", check_colored_orders, True),
    ("Circular orders and the Zeleva extension", check_circular, True),
    ("Hahn series", check_hahn, True),
    ("Symbolic real kernel", check_kernel, True),
]


def main():
    """Main acceptance function"""
    print("\n==============================================")
    print("   Archimedean Groups Acceptance Run ")
    print("==============================================\n")

    rng = random.Random(SEED)
    registry = build_registry()
    print(f"Seed: {SEED}")
    print(f"Symbols: {', '.join(registry.names())}\n")

    passed = 0
    for number, (title, check, needs_registry) in enumerate(CHECKS, 1):
        print(f"{number}. {title}...")
        start = time.time()
        try:
            failures, cases = check(rng, registry) if needs_registry else check(rng)
        except Exception as e:
            logger.error(f"{title} crashed: {str(e)}")
            print(f"❌ Crashed: {str(e)}\n")
            continue
        elapsed = time.time() - start
        if failures == 0:
            passed += 1
            print(f"✅ {cases} cases passed in {elapsed:.1f}s\n")
        else:
            print(f"❌ {failures} failures over {cases} cases ({elapsed:.1f}s)\n")
        logger.info(f"{title}: {failures} failures / {cases} cases in {elapsed:.1f}s")

    print("==============================================")
    print(f"   {passed}/{len(CHECKS)} checks passed")
    print("==============================================\n")
    return 0 if passed == len(CHECKS) else 1


if __name__ == "__main__":
    sys.exit(main())
