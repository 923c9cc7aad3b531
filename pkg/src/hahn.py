#!/usr/bin/env python3
"""
Finite-support Hahn series Q((t^G)) over an ordered exponent group G.

The exponent group is any object with compare / add / neg / zero / key /
parse_element / format_element (OrderedVectorGroup, OdagGroup). A series
is positive when its coefficient at the least exponent is positive, so
t^g with g > 0 is a positive infinitesimal.
"""

import re
import logging
from fractions import Fraction
from functools import cmp_to_key

from errors import ExponentGroupMismatch, ParseError, ZeroSeries
from expr_parser import parse_rational

logger = logging.getLogger('archgroups.hahn')


class HahnSeries:
    """Immutable map exponent -> nonzero rational"""

    __slots__ = ('group', 'terms')

    def __init__(self, group, terms=()):
        self.group = group
        merged = {}
        for exponent, coeff in terms:
            coeff = Fraction(coeff)
            k = group.key(exponent)
            if k in merged:
                merged[k] = (merged[k][0], merged[k][1] + coeff)
            else:
                merged[k] = (exponent, coeff)
        self.terms = {k: v for k, v in merged.items() if v[1]}

    def items(self):
        return list(self.terms.values())

    def is_zero(self):
        return not self.terms

    def coefficient(self, exponent):
        entry = self.terms.get(self.group.key(exponent))
        return entry[1] if entry else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return self.group == other.group and {k: c for k, (_, c) in self.terms.items()} == {
            k: c for k, (_, c) in other.terms.items()
        }

    def __hash__(self):
        return hash(frozenset((k, c) for k, (_, c) in self.terms.items()))

    def __add__(self, other):
        return hahn_add(self, other)

    def __sub__(self, other):
        return hahn_add(self, hahn_neg(other))

    def __mul__(self, other):
        return hahn_mul(self, other)

    def __neg__(self):
        return hahn_neg(self)

    def __repr__(self):
        return f"HahnSeries({format_series(self)})"


def _same_group(f, g):
    if f.group != g.group:
        raise ExponentGroupMismatch("Series live over different exponent groups")


def monomial(group, exponent, coeff=1):
    return HahnSeries(group, [(exponent, coeff)])


def constant(group, coeff):
    return HahnSeries(group, [(group.zero(), coeff)])


def hahn_add(f, g):
    _same_group(f, g)
    return HahnSeries(f.group, f.items() + g.items())


def hahn_neg(f):
    return HahnSeries(f.group, [(e, -c) for e, c in f.items()])


def hahn_mul(f, g):
    _same_group(f, g)
    G = f.group
    return HahnSeries(G, [(G.add(e1, e2), c1 * c2) for e1, c1 in f.items() for e2, c2 in g.items()])


def _sorted_exponents(f):
    return sorted((e for e, _ in f.items()), key=cmp_to_key(f.group.compare))


def valuation(f):
    """Least exponent of the support"""
    if f.is_zero():
        raise ZeroSeries("The zero series has no valuation")
    return _sorted_exponents(f)[0]


def leading_coefficient(f):
    return f.coefficient(valuation(f))


def hahn_compare(f, g):
    _same_group(f, g)
    d = hahn_add(f, hahn_neg(g))
    if d.is_zero():
        return 0
    return 1 if leading_coefficient(d) > 0 else -1


def lift_exponent_map(f, phi, target):
    """sum a_g t^g -> sum a_g t^phi(g) for an order embedding phi into target"""
    return HahnSeries(target, [(phi(e), c) for e, c in f.items()])


# `c*t^(<element>)` terms joined by + / -, or bare rationals for t^0
_TERM = re.compile(r'^(?:(?P<coeff>\d+(?:/\d+)?)\s*\*\s*)?t\^\((?P<exp>.*)\)$|^(?P<const>\d+(?:/\d+)?)$', re.S)


def _split_terms(text):
    terms, depth, current, sign = [], 0, [], 1
    pending = False
    for ch in text.strip():
        if ch in '([{':
            depth += 1
        elif ch in ')]}':
            depth -= 1
        if depth == 0 and ch in '+-':
            body = ''.join(current).strip()
            if body:
                terms.append((sign, body))
            elif pending or terms:
                raise ParseError(f"Dangling operator in series {text!r}")
            sign = 1 if ch == '+' else -1
            pending = True
            current = []
            continue
        current.append(ch)
    body = ''.join(current).strip()
    if not body:
        raise ParseError(f"Series {text!r} ends without a term")
    terms.append((sign, body))
    return terms


def parse_series(text, group):
    """Parse `c*t^(<element>)` terms joined by + or -; `0` is the zero series"""
    if text.strip() == '0':
        return HahnSeries(group)
    terms = []
    for sign, body in _split_terms(text):
        m = _TERM.match(body)
        if not m:
            raise ParseError(f"Malformed series term {body!r}")
        if m.group('const') is not None:
            terms.append((group.zero(), sign * parse_rational(m.group('const'))))
            continue
        coeff = parse_rational(m.group('coeff')) if m.group('coeff') else Fraction(1)
        terms.append((group.parse_element(m.group('exp')), sign * coeff))
    return HahnSeries(group, terms)


def format_series(f):
    """Terms by increasing exponent; re-parses with parse_series"""
    if f.is_zero():
        return '0'
    parts = []
    for e in _sorted_exponents(f):
        c = f.coefficient(e)
        sign = '-' if c < 0 else '+'
        parts.append((sign, f"{abs(c)}*t^({f.group.format_element(e)})"))
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
