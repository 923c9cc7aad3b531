#!/usr/bin/env python3
"""
Constructive reductions between classification problems.

    GL2(Z) orbits   -> unit-span groups       (x -> span_Q{1, x})
    countable sets  -> ordered fields Q(S)
    colored orders  -> ordered divisible abelian groups (ODAGs)

The ODAG of a colored linear order (L, c) is the group of finitely supported
f: L -> R with f(n) in H_c(n), ordered reverse-lexicographically (the sign
of f at its largest support point decides). Every color c has a default
coefficient group H_c = span_Q{1, sigma_c} with sigma_c = ln(p_c) for the
c-th prime p_c, declared algebraic; distinct colors are assumed to give
pairwise non-embeddable coefficient groups.
"""

import random
import logging
import itertools
import threading
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from errors import ContractViolation, InvalidInjection, ParseError, PoleAtInput
from classify import Direction, countable_set_to_field, decide_unit_span, unit_span_group
from symreal import Mode, SymbolicReal

logger = logging.getLogger('archgroups.reductions')


# ---------------------------------------------------------------------------
# GL2(Z)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GL2ZMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ContractViolation(f"det = {self.det}; GL2(Z) needs determinant +-1")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return GL2ZMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        s = self.det
        return GL2ZMatrix(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def apply(self, x):
        return gl2_apply(self, x)


def gl2_apply(M, x):
    """(a x + b) / (c x + d)"""
    if not isinstance(x, SymbolicReal):
        raise ContractViolation("gl2_apply needs a symbolic real")
    den = x * M.c + M.d
    if den.is_zero():
        raise PoleAtInput(f"c*x + d vanishes at x = {x.to_text()}")
    return (x * M.a + M.b) / den


def random_gl2z(rng=None, bound=5):
    """Uniform over matrices with entries in [-bound, bound] and det +-1"""
    rng = rng or random.Random()
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c in (1, -1):
            return GL2ZMatrix(a, b, c, d)


def gl2_orbit_to_unit_span(x):
    return unit_span_group(x)


def countable_set_reduction(registry, names):
    return countable_set_to_field(registry, names)


# ---------------------------------------------------------------------------
# Colored linear orders
# ---------------------------------------------------------------------------

class ColoredLinearOrder:
    """
    Finite linear order on positions 0..size-1 with a color per position.

    Args:
        ranks: ranks[i] is the place of position i in the order (a permutation)
        colors: colors[i] is the color of position i
    """

    def __init__(self, ranks, colors):
        ranks, colors = list(ranks), list(colors)
        if len(ranks) != len(colors):
            raise ContractViolation("ranks and colors must have the same length")
        if sorted(ranks) != list(range(len(ranks))):
            raise ContractViolation(f"ranks {ranks} is not a permutation")
        if any(c < 0 for c in colors):
            raise ContractViolation("Colors must be non-negative")
        self.ranks = tuple(ranks)
        self.colors = tuple(colors)

    @classmethod
    def from_sequence(cls, order, colors):
        """order lists positions from least to greatest"""
        ranks = [0] * len(order)
        for place, pos in enumerate(order):
            if not 0 <= pos < len(order):
                raise ContractViolation(f"Position {pos} out of range")
            ranks[pos] = place
        if sorted(order) != list(range(len(order))):
            raise ContractViolation(f"{order} does not list each position once")
        return cls(ranks, colors)

    @property
    def size(self):
        return len(self.ranks)

    def positions(self):
        return range(self.size)

    def less(self, m, n):
        return self.ranks[m] < self.ranks[n]

    def ascending(self):
        return sorted(self.positions(), key=lambda p: self.ranks[p])

    def to_text(self):
        order = '<'.join(str(p) for p in self.ascending())
        colors = ','.join(str(c) for c in self.colors)
        return f"--order \"{order}\" --colors \"{colors}\""

    def __eq__(self, other):
        return isinstance(other, ColoredLinearOrder) and (self.ranks, self.colors) == (other.ranks, other.colors)

    def __hash__(self):
        return hash((self.ranks, self.colors))

    def __repr__(self):
        return f"ColoredLinearOrder(ranks={list(self.ranks)}, colors={list(self.colors)})"


def parse_clo(order_text, colors_text):
    """`0<1<2` and `0,1,0`"""
    try:
        order = [int(p) for p in order_text.split('<')] if order_text.strip() else []
        colors = [int(c) for c in colors_text.split(',')] if colors_text.strip() else []
    except ValueError:
        raise ParseError(f"Malformed colored order {order_text!r} / {colors_text!r}")
    return ColoredLinearOrder.from_sequence(order, colors)


def clo_embed_bruteforce(K, L):
    """
    Lexicographically least injection j: K -> L that preserves order and
    color, as a tuple (j(0), ..., j(|K|-1)), or None.
    """
    assignment = []

    def extend(n):
        if n == K.size:
            return True
        for target in L.positions():
            if target in assignment or L.colors[target] != K.colors[n]:
                continue
            if all(K.less(m, n) == L.less(assignment[m], target) for m in range(n)):
                assignment.append(target)
                if extend(n + 1):
                    return True
                assignment.pop()
        return False

    return tuple(assignment) if extend(0) else None


def _check_injection(j, K, L):
    j = tuple(j)
    if len(j) != K.size or len(set(j)) != len(j) or any(not 0 <= t < L.size for t in j):
        raise InvalidInjection(f"{j} is not an injection of {K.size} positions into {L.size}")
    for n in K.positions():
        if K.colors[n] != L.colors[j[n]]:
            raise InvalidInjection(f"Position {n} changes color under {j}")
        for m in K.positions():
            if K.less(m, n) != L.less(j[m], j[n]):
                raise InvalidInjection(f"{j} does not preserve the order")
    return j


def enumerate_clos(max_size, num_colors):
    """All colored linear orders up to isomorphism (canonical ranks 0..n-1)"""
    for size in range(max_size + 1):
        for colors in itertools.product(range(num_colors), repeat=size):
            yield ColoredLinearOrder(range(size), colors)


# ---------------------------------------------------------------------------
# ODAGs
# ---------------------------------------------------------------------------

_COLOR_LOCK = threading.Lock()


def color_symbol(registry, color):
    """sigma<c> = ln(p_c), declared algebraic on first use"""
    name = f"sigma{color}"
    with _COLOR_LOCK:
        if name not in registry:
            registry.declare(name, Mode.ALGEBRAIC, f"const:ln{sympy.prime(color + 1)}")
    return registry.symbol(name)


class OdagElement:
    """Finitely supported map position -> (q0, q1), standing for q0 + q1*sigma_c"""

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        clean = {}
        for pos, pair in (terms or {}).items():
            q0, q1 = (Fraction(v) for v in pair)
            if q0 or q1:
                clean[int(pos)] = (q0, q1)
        self.terms = clean

    def support(self):
        return set(self.terms)

    def at(self, pos):
        return self.terms.get(pos, (Fraction(0), Fraction(0)))

    def key(self):
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, OdagElement) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"OdagElement({format_odag_element(self)})"


def format_odag_element(f):
    return json.dumps({str(p): [str(q0), str(q1)] for p, (q0, q1) in sorted(f.terms.items())}, sort_keys=True)


class OdagGroup:
    """ODAG of a colored linear order; also usable as a Hahn-series exponent group"""

    def __init__(self, order, registry):
        self.order = order
        self.registry = registry
        self._sigma = {c: color_symbol(registry, c) for c in set(order.colors)}

    def sigma(self, pos):
        return self._sigma[self.order.colors[pos]]

    def coefficient_group(self, pos):
        return unit_span_group(self.sigma(pos))

    def value_at(self, f, pos):
        q0, q1 = f.at(pos)
        return self.sigma(pos) * q1 + q0

    def _check(self, f):
        if any(not 0 <= p < self.order.size for p in f.terms):
            raise ContractViolation(f"Support {sorted(f.terms)} outside the order")
        return f

    def compare(self, f, g):
        self._check(f)
        self._check(g)
        diff = [p for p in f.support() | g.support() if f.at(p) != g.at(p)]
        if not diff:
            return 0
        top = max(diff, key=lambda p: self.order.ranks[p])
        return (self.value_at(f, top) - self.value_at(g, top)).sign()

    def add(self, f, g):
        out = dict(f.terms)
        for p, (a, b) in g.terms.items():
            c, d = out.get(p, (0, 0))
            out[p] = (a + c, b + d)
        return OdagElement(out)

    def neg(self, f):
        return OdagElement({p: (-a, -b) for p, (a, b) in f.terms.items()})

    def zero(self):
        return OdagElement()

    def key(self, f):
        return f.key()

    def indicator(self, pos):
        return OdagElement({pos: (1, 0)})

    def parse_element(self, text):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"ODAG element must be a JSON object: {str(e)}")
        if not isinstance(raw, dict):
            raise ParseError("ODAG element must be a JSON object")
        try:
            terms = {}
            for pos, value in raw.items():
                pair = value if isinstance(value, list) else [value, 0]
                if len(pair) != 2:
                    raise ParseError(f"Coefficient at {pos} must be [q0, q1]")
                terms[int(pos)] = (Fraction(str(pair[0])), Fraction(str(pair[1])))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"Malformed ODAG element {text!r}")
        return self._check(OdagElement(terms))

    def format_element(self, f):
        return format_odag_element(f)

    def __eq__(self, other):
        return isinstance(other, OdagGroup) and self.order == other.order

    def __hash__(self):
        return hash(self.order)


def clo_to_odag(order, registry):
    """ODAG of a colored linear order with the default coefficient groups"""
    return OdagGroup(order, registry)


def odag_compare(G, f, g):
    return G.compare(f, g)


def odag_valuation(G, f):
    """Largest support point of a nonzero f"""
    if not f.terms:
        raise ContractViolation("The zero element has no valuation")
    return max(f.terms, key=lambda p: G.order.ranks[p])


def archimedean_compare(G, f, g):
    """
    -1 / 0 / +1 comparing the Archimedean classes of positive f and g: f is
    infinitely smaller than g iff its valuation lies lower.
    """
    zero = G.zero()
    if G.compare(f, zero) <= 0 or G.compare(g, zero) <= 0:
        raise ContractViolation("Archimedean classes are compared on positive elements")
    a, b = G.order.ranks[odag_valuation(G, f)], G.order.ranks[odag_valuation(G, g)]
    return (a > b) - (a < b)


class OdagEmbedding:
    """Order embedding G_K -> G_L built from a color- and order-preserving injection"""

    def __init__(self, j, GK, GL, scalars=None):
        self.j = tuple(j)
        self.source = GK
        self.target = GL
        self.scalars = scalars or {}

    def __call__(self, f):
        out = {}
        for n, (q0, q1) in f.terms.items():
            lam = self.scalars.get(n)
            if lam is None:
                out[self.j[n]] = (q0, q1)
                continue
            image = lam * self.source.value_at(f, n)
            coeffs = self.target.coefficient_group(self.j[n]).member(image)
            if coeffs is None:
                raise ContractViolation(f"Coordinate scalar at {n} leaves the coefficient group")
            out[self.j[n]] = tuple(coeffs)
        return OdagElement(out)

    def as_dict(self):
        return {
            'injection': list(self.j),
            'scalars': {str(n): lam.to_text() for n, lam in sorted(self.scalars.items())},
        }


def odag_embed_from_clo(j, K, L, registry):
    """Lift a color- and order-preserving injection to an ODAG embedding"""
    j = _check_injection(j, K, L)
    return OdagEmbedding(j, OdagGroup(K, registry), OdagGroup(L, registry))


def extract_phi_star(GK, GL, phi):
    """Induced map on supports: n -> valuation of phi(indicator at n)"""
    return {n: odag_valuation(GL, phi(GK.indicator(n))) for n in GK.order.positions()}


@lru_cache(maxsize=1024)
def _coefficient_relation(sigma_k, sigma_l):
    return decide_unit_span(sigma_k, sigma_l, Direction.EMBED)


def _coefficient_scalar(sigma_k, sigma_l):
    """Positive lambda with lambda*H_k <= H_l, or None"""
    if sigma_k == sigma_l:
        return SymbolicReal.constant(1, sigma_l.registry)
    relation = _coefficient_relation(sigma_k, sigma_l)
    return relation.scalar(sigma_l) if relation else None


def structured_embed_search(GK, GL):
    """
    Order embedding G_K -> G_L of the form f -> (j(n) -> lambda_n f(n)) for an
    order-preserving injection j and positive coordinate scalars lambda_n
    mapping H_c(n) into H_c(j(n)), or None. The lexicographically least j wins.
    """
    K, L = GK.order, GL.order
    assignment, scalars = [], {}

    def extend(n):
        if n == K.size:
            return True
        for target in L.positions():
            if target in assignment:
                continue
            if not all(K.less(m, n) == L.less(assignment[m], target) for m in range(n)):
                continue
            lam = _coefficient_scalar(GK.sigma(n), GL.sigma(target))
            if lam is None:
                continue
            assignment.append(target)
            if lam != 1:
                scalars[n] = lam
            if extend(n + 1):
                return True
            assignment.pop()
            scalars.pop(n, None)
        return False

    if not extend(0):
        return None
    logger.debug(f"structured_embed_search: injection {assignment}")
    return OdagEmbedding(assignment, GK, GL, scalars)
