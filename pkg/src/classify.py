#!/usr/bin/env python3
"""
Deciders for isomorphism and embeddability of Archimedean groups, all
realized as subgroups of R. Order-preserving maps between such groups are
multiplications by positive reals, so every positive answer comes with a
scaling witness lambda that is re-verified before it is returned.

Exact deciders cover pointed groups, rank-1 groups, unit-span groups
span_Q{1, alpha} and countable-set fields. For general finitely generated
groups only a bounded search plus invariant fragments is available; those
answers are yes / no / unknown with their provenance.
"""

import logging
import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, inf, lcm

import sympy

from errors import ContractViolation, ModeViolation, NotAMember, ParseError, RationalAlpha, UnknownSymbol
from symreal import Mode, SymbolicReal, coordinates, formal_product
from zmodule import SpanMode, Subgroup

logger = logging.getLogger('archgroups.classify')


class Decision(Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


class Direction(Enum):
    ISO = 'iso'
    EMBED = 'embed'


@dataclass(frozen=True)
class Witness:
    """Positive scaling lambda with lambda*G = H (iso) or lambda*G <= H (embed)"""
    lam: SymbolicReal
    direction: Direction
    verified: bool = True

    def as_dict(self):
        return {'lambda': self.lam.to_text(), 'direction': self.direction.value, 'verified': self.verified}


@dataclass(frozen=True)
class UnitSpanRelation:
    """
    Integers with alpha * (m*beta + n) = k*beta + l. lambda = |m*beta + n|
    maps span{1, alpha} into span{1, beta}.
    """
    k: int
    l: int
    m: int
    n: int

    @property
    def determinant(self):
        return self.k * self.n - self.l * self.m

    def scalar(self, beta):
        lam = beta * self.m + self.n
        return lam if lam.sign() > 0 else -lam

    def as_dict(self):
        return {'k': self.k, 'l': self.l, 'm': self.m, 'n': self.n, 'matrix': [[self.k, self.l], [self.m, self.n]]}


@dataclass
class Verdict:
    answer: Decision
    provenance: str
    witness: object = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        out = {'answer': self.answer.value, 'provenance': self.provenance}
        if self.witness is not None:
            out['witness'] = self.witness.as_dict()
        if self.details:
            out['details'] = self.details
        return out


# ---------------------------------------------------------------------------
# Witness verification
# ---------------------------------------------------------------------------

def verify_scaling(G, H, lam, direction):
    """
    Check that multiplication by lam maps G onto (iso) or into (embed) H.

    Raises:
        ContractViolation: when lam is not positive
    """
    direction = Direction(direction)
    if lam.sign() <= 0:
        raise ContractViolation(f"Scaling factor {lam.to_text()} must be positive")
    if G.span_mode is not H.span_mode and (direction is Direction.ISO or G.span_mode is SpanMode.Q):
        return False
    if not all(H.contains(lam * g) for g in G.basis()):
        return False
    if direction is Direction.EMBED:
        return True
    image = G.scale(lam)
    return all(image.contains(h) for h in H.basis())


def _certified(G, H, lam, direction):
    if verify_scaling(G, H, lam, direction):
        return Witness(lam, Direction(direction), True)
    return None


# ---------------------------------------------------------------------------
# Pointed groups
# ---------------------------------------------------------------------------

class PointedGroup:
    """Subgroup of R with a distinguished positive element"""

    def __init__(self, group, point):
        if point.is_zero() or point.sign() < 0:
            raise ContractViolation("The distinguished point must be positive")
        if not group.contains(point):
            raise NotAMember(f"{point.to_text()} is not in {group.to_text()}")
        self.group = group
        self.point = point

    def __repr__(self):
        return f"PointedGroup({self.group.to_text()}, {self.point.to_text()})"


def decide_pointed_iso(A, B):
    """
    An iso of pointed groups must send a to b, hence is x -> (b/a) x.
    Returns the witness or None.
    """
    lam = B.point / A.point
    return _certified(A.group, B.group, lam, Direction.ISO)


def decide_pointed_embed(A, B):
    """Pointed embedding A -> B: x -> (b/a) x must land inside B"""
    return _certified(A.group, B.group, B.point / A.point, Direction.EMBED)


# ---------------------------------------------------------------------------
# Rank-1 groups
# ---------------------------------------------------------------------------

class Rank1Characteristic:
    """
    prime -> height in {0, 1, ..., inf} with finite support; stands for the
    group of rationals whose denominator has p-adic valuation <= height(p).
    """

    def __init__(self, heights):
        clean = {}
        for p, h in dict(heights).items():
            p = int(p)
            if not sympy.isprime(p):
                raise ContractViolation(f"{p} is not prime")
            if h != inf and (int(h) != h or h < 0):
                raise ContractViolation(f"Height at {p} must be a non-negative integer or inf")
            if h:
                clean[p] = h if h == inf else int(h)
        self.heights = clean

    def height(self, p):
        return self.heights.get(p, 0)

    def infinite_primes(self):
        return frozenset(p for p, h in self.heights.items() if h == inf)

    def to_text(self):
        return ','.join(f"{p}:{'inf' if h == inf else h}" for p, h in sorted(self.heights.items()))

    def __eq__(self, other):
        return isinstance(other, Rank1Characteristic) and self.heights == other.heights

    def __hash__(self):
        return hash(tuple(sorted(self.heights.items())))

    def __repr__(self):
        return f"Rank1Characteristic({self.to_text() or '0'})"


def rank1_member(c, q):
    """Whether the rational q lies in A_c"""
    q = Fraction(q)
    if q == 0:
        return True
    for p, e in sympy.factorint(q.denominator).items():
        if e > c.height(p):
            return False
    return True


def decide_rank1_iso(c1, c2):
    """A_c1 and A_c2 are isomorphic iff the characteristics differ at finitely many primes only by finite amounts"""
    return c1.infinite_primes() == c2.infinite_primes()


def decide_rank1_embed(c1, c2):
    return c1.infinite_primes() <= c2.infinite_primes()


def rank1_scalar(c1, c2):
    """Positive rational q with q * A_c1 = A_c2 (requires decide_rank1_iso)"""
    if not decide_rank1_iso(c1, c2):
        raise ContractViolation("Characteristics are not equivalent")
    q = Fraction(1)
    for p in set(c1.heights) | set(c2.heights):
        h1, h2 = c1.height(p), c2.height(p)
        if h1 == inf:
            continue
        q *= Fraction(p) ** (h1 - h2)
    return q


# ---------------------------------------------------------------------------
# Unit-span groups span_Q{1, alpha}
# ---------------------------------------------------------------------------

def unit_span_group(alpha):
    if alpha.as_rational() is not None:
        raise RationalAlpha(f"{alpha.to_text()} is rational")
    return Subgroup([SymbolicReal.constant(1, alpha.registry), alpha], SpanMode.Q)


def _integral(vector):
    scale = lcm(*(c.denominator for c in vector))
    values = [int(c * scale) for c in vector]
    g = gcd(*values)
    return [v // g for v in values] if g else values


def _relation_candidates(null_vectors, limit=2):
    """Null-space basis vectors, then small integer combinations of them"""
    for v in null_vectors:
        yield v
    if len(null_vectors) < 2:
        return
    coeffs = range(-limit, limit + 1)
    for combo in itertools.product(coeffs, repeat=len(null_vectors)):
        if sum(1 for c in combo if c) < 2:
            continue
        yield [sum(c * v[i] for c, v in zip(combo, null_vectors)) for i in range(4)]


def _relation_from(vector, direction):
    m, n, k, l = _integral(vector)
    if m == 0 and n == 0:
        return None
    if direction is Direction.ISO and k * n - l * m == 0:
        return None
    lead = m if m else n
    if lead < 0:
        m, n, k, l = -m, -n, -k, -l
    return UnitSpanRelation(k, l, m, n)


def decide_unit_span(alpha, beta, direction):
    """
    Integer relation alpha*(m*beta + n) = k*beta + l with (m, n) != 0 (and
    kn - lm != 0 for iso), or None. Exact under the independence contract;
    for linear-mode symbols the product alpha*beta is taken as a new
    monomial independent of 1, alpha and beta.

    Raises:
        RationalAlpha: alpha or beta is rational
    """
    direction = Direction(direction)
    for value in (alpha, beta):
        if value.as_rational() is not None:
            raise RationalAlpha(f"{value.to_text()} is rational")
    one = SymbolicReal.constant(1, alpha.registry)
    columns = [formal_product(alpha, beta), alpha, -beta, -one]

    _, _, rows = coordinates(columns)
    matrix = sympy.Matrix(rows).T
    null_vectors = [[Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in v] for v in matrix.nullspace()]

    for vector in _relation_candidates(null_vectors):
        if not any(vector):
            continue
        relation = _relation_from(vector, direction)
        if relation is not None:
            logger.debug(f"unit-span relation {relation} for {alpha.to_text()} -> {beta.to_text()}")
            return relation
    return None


# ---------------------------------------------------------------------------
# Countable-set fields Q(S)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """Q(S) for a finite set S of algebraic-mode symbols"""
    symbols: frozenset

    def to_text(self):
        return '{' + ', '.join(sorted(self.symbols)) + '}'


def countable_set_to_field(registry, names):
    for name in names:
        if name not in registry:
            raise UnknownSymbol(f"Unknown symbol {name!r}")
        if registry.mode_of(name) is not Mode.ALGEBRAIC:
            raise ModeViolation(f"Field generators must be algebraic-mode symbols: {name}")
    return FieldDescriptor(frozenset(names))


def decide_field_embed(F1, F2):
    """Under the independence contract Q(S1) <= Q(S2) as ordered fields iff S1 <= S2"""
    return F1.symbols <= F2.symbols


def decide_field_iso(F1, F2):
    return F1.symbols == F2.symbols


# ---------------------------------------------------------------------------
# Bounded search and invariants
# ---------------------------------------------------------------------------

def search_embed(G, H, height, direction):
    """
    Try lambda = h / g1 for h enumerated from H up to the given height and g1
    the first basis element of G. Returns the first verified witness
    (smallest height first) or None.
    """
    direction = Direction(direction)
    if direction is Direction.ISO and (G.span_mode is not H.span_mode or G.rank() != H.rank()):
        return None
    if direction is Direction.EMBED and G.rank() > H.rank():
        return None
    g1 = G.basis()[0]
    evaluated = skipped = 0
    tried = set()
    for h in H.element_enum(height):
        if h.is_zero():
            continue
        try:
            lam = h / g1
            if lam.sign() < 0:
                lam = -lam
            if lam in tried:
                continue
            tried.add(lam)
            ok = verify_scaling(G, H, lam, direction)
        except ModeViolation:
            skipped += 1
            continue
        evaluated += 1
        if ok:
            logger.info(f"search_embed found lambda={lam.to_text()} at height <= {height}")
            return Witness(lam, direction, True)
    if evaluated == 0 and skipped:
        raise ModeViolation("Every candidate scaling needs field arithmetic on linear-mode symbols")
    logger.debug(f"search_embed: {evaluated} candidates rejected, {skipped} skipped")
    return None


def invariant_slice(G, r):
    """G / r for a nonzero r in G"""
    if r.is_zero():
        raise ContractViolation("Slice representative must be nonzero")
    if not G.contains(r):
        raise NotAMember(f"{r.to_text()} is not in {G.to_text()}")
    return G.scale(1 / r)


@dataclass
class InvariantFragment:
    """Slices G/r (deduplicated) and triples (i, j, r') with H_i / r' = H_j"""
    group: Subgroup
    height: int
    slices: list
    representatives: list
    triples: list

    def to_text(self):
        lines = [
            '# archgroups invariant fragment',
            f"group {self.group.to_text()}",
            f"height {self.height}",
            f"slices {len(self.slices)}",
        ]
        for i, (S, r) in enumerate(zip(self.slices, self.representatives)):
            basis = ', '.join(b.to_text() for b in S.basis())
            lines.append(f"S{i} rep={r.to_text()} {S.span_mode.value} [{basis}]")
        lines.append(f"triples {len(self.triples)}")
        for i, j, r in self.triples:
            lines.append(f"T S{i} S{j} r={r.to_text()}")
        return '\n'.join(lines) + '\n'


def emit_invariant(G, height):
    elements = [r for r in G.element_enum(height) if not r.is_zero()]
    slices, reps, slice_of = [], [], {}
    for r in elements:
        positive = r if r.sign() > 0 else -r
        S = invariant_slice(G, positive)
        index = next((i for i, T in enumerate(slices) if T.same_set(S)), None)
        if index is None:
            index = len(slices)
            slices.append(S)
            reps.append(positive)
        slice_of[r] = index

    triples, seen = [], set()
    for i, rep in enumerate(reps):
        for g in elements:
            ratio = g / rep
            if ratio.sign() <= 0:
                continue
            entry = (i, slice_of[g], ratio)
            if entry not in seen:
                seen.add(entry)
                triples.append(entry)
    logger.info(f"emit_invariant(height={height}): {len(slices)} slices, {len(triples)} triples")
    return InvariantFragment(G, height, slices, reps, triples)


def unit_span_parameter(G):
    """alpha when G = span_Q{1, alpha}, else None"""
    if G.span_mode is not SpanMode.Q or G.rank() != 2:
        return None
    one = SymbolicReal.constant(1, G.registry)
    if not G.contains(one):
        return None
    return next((b for b in G.basis() if b.as_rational() is None), None)


def _exact_mismatch(G, H, direction):
    if direction is Direction.ISO and G.span_mode is not H.span_mode:
        return 'exact:span-mode'
    if direction is Direction.EMBED and G.span_mode is SpanMode.Q and H.span_mode is SpanMode.Z:
        return 'exact:span-mode'
    if direction is Direction.ISO and G.rank() != H.rank():
        return 'exact:rank'
    if direction is Direction.EMBED and G.rank() > H.rank():
        return 'exact:rank'
    return None


def invariant_equal(G, H, height):
    """Isomorphism of G and H: yes with witness, no with an exact certificate, or unknown"""
    mismatch = _exact_mismatch(G, H, Direction.ISO)
    if mismatch:
        return Verdict(Decision.NO, mismatch)

    alpha, beta = unit_span_parameter(G), unit_span_parameter(H)
    if alpha is not None and beta is not None:
        relation = decide_unit_span(alpha, beta, Direction.ISO)
        if relation is None:
            return Verdict(Decision.NO, 'exact:unit-span')
        witness = _certified(G, H, relation.scalar(beta), Direction.ISO)
        if witness is not None:
            return Verdict(Decision.YES, 'exact:unit-span', witness, {'relation': relation.as_dict()})

    witness = search_embed(G, H, height, Direction.ISO)
    if witness is not None:
        return Verdict(Decision.YES, f"search:height={height}", witness)
    return Verdict(Decision.UNKNOWN, f"search:height={height}")


def invariant_embed(G, H, height):
    """
    Embeddability of G into H. A found scaling lambda is also checked against
    the slices of G at the given height: each G/r must lie inside H/(lambda r).
    """
    mismatch = _exact_mismatch(G, H, Direction.EMBED)
    if mismatch:
        return Verdict(Decision.NO, mismatch)
    witness = search_embed(G, H, height, Direction.EMBED)
    if witness is None:
        return Verdict(Decision.UNKNOWN, f"search:height={height}")
    checked = 0
    for r in G.basis():
        if r.sign() < 0:
            r = -r
        try:
            X = invariant_slice(G, r)
            Y = invariant_slice(H, witness.lam * r)
        except ModeViolation:
            continue
        if not all(Y.contains(x) for x in X.basis()):
            raise ContractViolation("Verified scaling does not respect slices")
        checked += 1
    return Verdict(Decision.YES, f"search:height={height}", witness, {'slices_checked': checked})


def decide_family(family, left, right, direction):
    """Dispatch to an exact decider; returns a Verdict"""
    direction = Direction(direction)
    if family == 'pointed':
        decide = decide_pointed_iso if direction is Direction.ISO else decide_pointed_embed
        witness = decide(left, right)
        return Verdict(Decision.YES if witness else Decision.NO, 'exact:pointed', witness)
    if family == 'rank1':
        decide = decide_rank1_iso if direction is Direction.ISO else decide_rank1_embed
        if not decide(left, right):
            return Verdict(Decision.NO, 'exact:rank1')
        details = {}
        if direction is Direction.ISO:
            details['scalar'] = str(rank1_scalar(left, right))
        return Verdict(Decision.YES, 'exact:rank1', None, details)
    if family == 'unit-span':
        relation = decide_unit_span(left, right, direction)
        if relation is None:
            return Verdict(Decision.NO, 'exact:unit-span')
        lam = relation.scalar(right)
        witness = _certified(unit_span_group(left), unit_span_group(right), lam, direction)
        return Verdict(Decision.YES, 'exact:unit-span', witness, {'relation': relation.as_dict()})
    if family == 'field':
        decide = decide_field_iso if direction is Direction.ISO else decide_field_embed
        answer = Decision.YES if decide(left, right) else Decision.NO
        return Verdict(answer, 'exact:field')
    raise ParseError(f"Unknown family {family!r}")
