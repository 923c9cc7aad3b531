#!/usr/bin/env python3
"""
Text literals: expressions over declared symbols, expression lists,
rank-1 characteristics and ordered-group element tuples.

Expression grammar:
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := NUMBER | IDENT | '(' expr ')'
NUMBER is an integer or a finite decimal (read exactly); p/q is division.
"""

import re
import logging
from fractions import Fraction

from errors import ParseError
from symreal import SymbolicReal

logger = logging.getLogger('archgroups.expr_parser')

_TOKEN = re.compile(r'\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))')


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        number, ident, op = m.groups()
        if number is not None:
            tokens.append(('num', number))
        elif ident is not None:
            tokens.append(('ident', ident))
        elif op in '+-*/()':
            tokens.append(('op', op))
        else:
            raise ParseError(f"Unexpected character {op!r} in {text!r}")
        pos = m.end()
    return tokens


class _ExpressionParser:

    def __init__(self, text, registry):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.registry = registry

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("Empty expression")
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"Trailing input at token {self._peek()[1]!r} in {self.text!r}")
        return value

    def _expr(self):
        value = self._term()
        while self._peek() in (('op', '+'), ('op', '-')):
            op = self._take()[1]
            rhs = self._term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def _term(self):
        value = self._unary()
        while self._peek() in (('op', '*'), ('op', '/')):
            op = self._take()[1]
            rhs = self._unary()
            value = value * rhs if op == '*' else value / rhs
        return value

    def _unary(self):
        if self._peek() == ('op', '-'):
            self._take()
            return -self._unary()
        if self._peek() == ('op', '+'):
            self._take()
            return self._unary()
        return self._atom()

    def _atom(self):
        kind, value = self._take()
        if kind == 'num':
            return SymbolicReal.constant(Fraction(value), self.registry)
        if kind == 'ident':
            return self.registry.symbol(value)
        if (kind, value) == ('op', '('):
            inner = self._expr()
            if self._take() != ('op', ')'):
                raise ParseError(f"Missing ')' in {self.text!r}")
            return inner
        raise ParseError(f"Unexpected {value!r} in {self.text!r}")


def parse_expression(text, registry):
    """Parse an expression into a canonical SymbolicReal"""
    return _ExpressionParser(text, registry).parse()


def split_top_level(text, sep=','):
    """Split on sep outside any bracket nesting"""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in '([{':
            depth += 1
        elif ch in ')]}':
            depth -= 1
            if depth < 0:
                raise ParseError(f"Unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append(''.join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"Unbalanced brackets in {text!r}")
    parts.append(''.join(current))
    return [p.strip() for p in parts]


def strip_brackets(text, pairs=('[]', '()')):
    text = text.strip()
    for pair in pairs:
        if text.startswith(pair[0]) and text.endswith(pair[1]):
            return text[1:-1].strip()
    return text


def parse_expression_list(text, registry):
    """`[e1, e2, ...]` (brackets optional)"""
    body = strip_brackets(text)
    if not body:
        raise ParseError(f"Empty list {text!r}")
    return [parse_expression(part, registry) for part in split_top_level(body)]


def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Malformed rational {text!r}")


def parse_integer(text):
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"Malformed integer {text!r}")


def parse_rational_tuple(text):
    """`(q1, q2, ...)` of rationals, brackets optional"""
    body = strip_brackets(text)
    if not body:
        raise ParseError(f"Empty tuple {text!r}")
    return tuple(parse_rational(p) for p in split_top_level(body))


def parse_characteristic_map(text):
    """`2:inf,3:1` -> {2: inf, 3: 1}; an empty string is the zero map"""
    heights = {}
    body = text.strip()
    if not body:
        return heights
    for item in body.split(','):
        prime, sep, height = item.partition(':')
        if not sep:
            raise ParseError(f"Expected prime:height in {item!r}")
        p = parse_integer(prime)
        h = height.strip().lower()
        heights[p] = float('inf') if h in ('inf', 'infinity') else parse_integer(h)
    return heights
