#!/usr/bin/env python3
"""
Exact symbolic real numbers.

A SymbolicReal is a rational function with rational coefficients in a finite
set of declared symbols. Each symbol is bound to a real number through a
refinement oracle (nested rational intervals of any requested width) and is
declared either

    linear     - {1} together with the linear symbols is assumed Q-linearly
                 independent; only affine Q-combinations may be formed
    algebraic  - the algebraic symbols are assumed algebraically independent;
                 full field arithmetic is allowed

Under these assumptions a rational function is zero iff its numerator is the
zero polynomial, so zero tests are exact and structural. Signs, floors and
approximations are obtained by outward-rounded interval evaluation
(mpmath.iv) with geometrically shrinking symbol intervals.
"""

import re
import math
import logging
import threading
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import sympy
from mpmath import iv, libmp

import config
from errors import (
    ContractViolation,
    DivisionByZero,
    ModeViolation,
    ParseError,
    RefinementBudgetExceeded,
    UnknownSymbol,
)

logger = logging.getLogger('archgroups.symreal')

# mpmath's interval context keeps its working precision globally
_IV_LOCK = threading.RLock()

ONE_MONOMIAL = ()


class Mode(Enum):
    LINEAR = 'linear'
    ALGEBRAIC = 'algebraic'


# ---------------------------------------------------------------------------
# Monomials and sparse polynomials
#
# A monomial is a tuple of (name, exponent) pairs sorted by name; () is 1.
# A polynomial is a dict monomial -> nonzero Fraction.
# ---------------------------------------------------------------------------

def monomial_key(m):
    """Fixed graded order: total degree first, then the sorted (name, exp) list"""
    return (sum(e for _, e in m), m)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _poly_add(p, q, scale=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_scale(p, c):
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _poly_names(p):
    return {name for m in p for name, _ in m}


def _poly_degree(p):
    return max((sum(e for _, e in m) for m in p), default=0)


def _is_constant(p):
    return all(m == ONE_MONOMIAL for m in p)


def _constant_value(p):
    return p.get(ONE_MONOMIAL, Fraction(0))


@lru_cache(maxsize=None)
def _sympy_symbol(name):
    return sympy.Symbol(name)


def _to_sympy_poly(p, names):
    gens = [_sympy_symbol(n) for n in names]
    index = {n: i for i, n in enumerate(names)}
    rep = {}
    for m, c in p.items():
        exps = [0] * len(names)
        for name, e in m:
            exps[index[name]] = e
        rep[tuple(exps)] = sympy.Rational(c.numerator, c.denominator)
    if not rep:
        return sympy.Poly(0, *gens, domain='QQ')
    return sympy.Poly.from_dict(rep, *gens, domain='QQ')


def _from_sympy_poly(P, names):
    out = {}
    for exps, c in P.terms():
        if c == 0:
            continue
        m = tuple((names[i], e) for i, e in enumerate(exps) if e)
        out[m] = Fraction(int(c.p), int(c.q))
    return out


def _leading(p):
    return max(p, key=monomial_key)


def _normalize(num, den):
    """Cancel the gcd and make the leading denominator coefficient 1"""
    if not num:
        return {}, {ONE_MONOMIAL: Fraction(1)}
    if _is_constant(den):
        c = _constant_value(den)
        if c != 1:
            num = _poly_scale(num, 1 / c)
        return num, {ONE_MONOMIAL: Fraction(1)}
    names = sorted(_poly_names(num) | _poly_names(den))
    P = _to_sympy_poly(num, names)
    Q = _to_sympy_poly(den, names)
    g = P.gcd(Q)
    if not g.is_ground:
        P = P.exquo(g)
        Q = Q.exquo(g)
    num = _from_sympy_poly(P, names)
    den = _from_sympy_poly(Q, names)
    lc = den[_leading(den)]
    if lc != 1:
        num = _poly_scale(num, 1 / lc)
        den = _poly_scale(den, 1 / lc)
    return num, den


def poly_lcm(polys):
    """Least common multiple of polynomial dicts, normalized like denominators"""
    result = {ONE_MONOMIAL: Fraction(1)}
    for p in polys:
        if _is_constant(p):
            continue
        if result == p:
            continue
        names = sorted(_poly_names(result) | _poly_names(p))
        L = _to_sympy_poly(result, names).lcm(_to_sympy_poly(p, names))
        result = _from_sympy_poly(L, names)
        lc = result[_leading(result)]
        result = _poly_scale(result, 1 / lc)
    return result


def poly_exquo(p, q):
    """Exact quotient p / q of polynomial dicts"""
    if _is_constant(q):
        return _poly_scale(p, 1 / _constant_value(q))
    names = sorted(_poly_names(p) | _poly_names(q))
    return _from_sympy_poly(_to_sympy_poly(p, names).exquo(_to_sympy_poly(q, names)), names)


# ---------------------------------------------------------------------------
# Interval helpers on top of mpmath.iv
# ---------------------------------------------------------------------------

def _iv_from_fractions(lo, hi):
    a = libmp.from_rational(lo.numerator, lo.denominator, iv.prec, libmp.round_floor)
    b = libmp.from_rational(hi.numerator, hi.denominator, iv.prec, libmp.round_ceiling)
    return iv.make_mpf((a, b))


def _raw_to_fraction(raw):
    if raw in (libmp.finf, libmp.fninf, libmp.fnan):
        return None
    p, q = libmp.to_rational(raw)
    # gmpy backend hands back mpz
    return Fraction(int(p), int(q))


def _iv_endpoints(x):
    a, b = x._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def _bits_for(eps):
    """Number of binary digits needed to resolve a width of eps"""
    return max(1, eps.denominator.bit_length() - eps.numerator.bit_length() + 1)


def _coefficient_bits(p):
    return max((max(c.numerator.bit_length(), c.denominator.bit_length()) for c in p.values()), default=0)


# ---------------------------------------------------------------------------
# Bindings
# ---------------------------------------------------------------------------

class Binding:
    """
    Refinement oracle for one real number.

    Subclasses implement _compute(eps) returning a rational interval of width
    at most eps. The base class caches the tightest interval seen and
    intersects new answers with it, so successive answers are nested.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._best = None

    def interval(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ContractViolation("Refinement width must be positive")
        with self._lock:
            if self._best is not None and self._best[1] - self._best[0] <= eps:
                return self._best
            lo, hi = self._compute(eps)
            if self._best is not None:
                lo = max(lo, self._best[0])
                hi = min(hi, self._best[1])
            self._best = (lo, hi)
            return self._best

    def _compute(self, eps):
        raise NotImplementedError

    def spec_text(self):
        raise NotImplementedError

    @property
    def is_exact(self):
        return False


class RationalBinding(Binding):
    """Binds a symbol to an exact rational; always breaks independence"""

    def __init__(self, value):
        super().__init__()
        self.value = Fraction(value)

    def _compute(self, eps):
        return self.value, self.value

    def spec_text(self):
        return f"rat:{self.value.numerator}/{self.value.denominator}"

    @property
    def is_exact(self):
        return True


class DigitStreamBinding(Binding):
    """
    Decimal expansion read lazily from an iterator of digit characters.

    The value lies in [T_k, T_k + 10^-k] where T_k is the truncation after k
    fractional digits (mirrored for negative values). Raises
    RefinementBudgetExceeded when the stream runs out before the requested
    width is reached.
    """

    def __init__(self, integer_part, digits, negative=False, label='stream'):
        super().__init__()
        self.integer_part = int(integer_part)
        self.negative = negative
        self._source = iter(digits)
        self._digits = []
        self._exhausted = False
        self.label = label

    def _pull(self, k):
        while len(self._digits) < k and not self._exhausted:
            try:
                d = next(self._source)
            except StopIteration:
                self._exhausted = True
                break
            if not str(d).isdigit():
                raise ParseError(f"Non-digit {d!r} in decimal binding {self.label}")
            self._digits.append(int(d))
        return len(self._digits) >= k

    def _compute(self, eps):
        k = 0
        while Fraction(1, 10 ** k) > eps:
            k += 1
        if not self._pull(k):
            raise RefinementBudgetExceeded(
                f"Decimal binding {self.label} exhausted after {len(self._digits)} digits "
                f"(requested width {eps})"
            )
        trunc = Fraction(self.integer_part)
        for i, d in enumerate(self._digits[:k]):
            trunc += Fraction(d, 10 ** (i + 1))
        lo, hi = trunc, trunc + Fraction(1, 10 ** k)
        if self.negative:
            lo, hi = -hi, -lo
        return lo, hi

    def spec_text(self):
        raise ContractViolation(f"Digit stream {self.label} has no textual binding spec")


class DecimalBinding(DigitStreamBinding):
    """Finite decimal string such as 1.41421356; the digits are a truncation"""

    def __init__(self, text):
        m = re.fullmatch(r'\s*(-?)(\d+)(?:\.(\d*))?\s*', text)
        if not m:
            raise ParseError(f"Malformed decimal binding: {text!r}")
        self.text = text.strip()
        super().__init__(int(m.group(2)), m.group(3) or '', negative=bool(m.group(1)), label=self.text)

    def spec_text(self):
        return f"decimal:{self.text}"


def _constant_interval(name):
    """Rigorous enclosure of a named constant at the current iv precision"""
    one = iv.mpf(1)
    if name == 'pi':
        return one * iv.pi
    if name == 'e':
        return iv.exp(one)
    if name == 'golden':
        return (one + iv.sqrt(iv.mpf(5))) / 2
    m = re.fullmatch(r'(ln|sqrt)(\d+)', name)
    if m:
        arg = iv.mpf(int(m.group(2)))
        return iv.ln(arg) if m.group(1) == 'ln' else iv.sqrt(arg)
    raise ParseError(f"Unknown constant {name!r}")


class ConstantBinding(Binding):
    """
    Named constants computed with mpmath interval arithmetic at doubling
    precision: pi, e, golden, ln<N> (N >= 2) and sqrt<N> (N not a square).
    """

    def __init__(self, name):
        super().__init__()
        m = re.fullmatch(r'(ln|sqrt)(\d+)', name)
        if name not in ('pi', 'e', 'golden') and not m:
            raise ParseError(f"Unknown constant {name!r}")
        if m and m.group(1) == 'ln' and int(m.group(2)) < 2:
            raise ParseError(f"ln argument must be at least 2: {name!r}")
        if m and m.group(1) == 'sqrt' and math.isqrt(int(m.group(2))) ** 2 == int(m.group(2)):
            raise ParseError(f"sqrt of a perfect square is rational: {name!r}")
        self.name = name

    def _compute(self, eps):
        prec = 64
        while True:
            with _IV_LOCK:
                saved = iv.prec
                iv.prec = prec
                try:
                    lo, hi = _iv_endpoints(_constant_interval(self.name))
                finally:
                    iv.prec = saved
            if hi - lo <= eps:
                return lo, hi
            prec *= 2

    def spec_text(self):
        return f"const:{self.name}"


def parse_binding(spec):
    """decimal:<digits> | rat:<p>/<q> | const:<name>"""
    kind, sep, body = spec.partition(':')
    if not sep:
        raise ParseError(f"Binding spec needs a kind prefix: {spec!r}")
    if kind == 'decimal':
        return DecimalBinding(body)
    if kind == 'rat':
        try:
            return RationalBinding(Fraction(body))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"Malformed rational binding: {spec!r}")
    if kind == 'const':
        return ConstantBinding(body)
    raise ParseError(f"Unknown binding kind {kind!r}")


# ---------------------------------------------------------------------------
# Symbols and registry
# ---------------------------------------------------------------------------

class Symbol:
    """A named real with a refinement oracle and an independence mode"""

    def __init__(self, name, mode, binding):
        self.name = name
        self.mode = Mode(mode)
        self.binding = binding

    def declaration_line(self):
        return f"sym {self.name} {self.mode.value} {self.binding.spec_text()}"

    def __repr__(self):
        label = getattr(self.binding, 'label', None)
        spec = f"<{label}>" if isinstance(self.binding, DigitStreamBinding) and not isinstance(
            self.binding, DecimalBinding) else self.binding.spec_text()
        return f"Symbol({self.name!r}, {self.mode.value}, {spec})"


_IDENT = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


class SymbolRegistry:
    """Symbol table; names are unique"""

    def __init__(self, refine_cap=None):
        self._symbols = {}
        self._lock = threading.Lock()
        self.refine_cap = refine_cap

    def declare(self, name, mode, binding):
        if not _IDENT.fullmatch(name):
            raise ParseError(f"Invalid symbol name {name!r}")
        if isinstance(binding, str):
            binding = parse_binding(binding)
        symbol = Symbol(name, mode, binding)
        with self._lock:
            if name in self._symbols:
                raise ContractViolation(f"Symbol {name!r} already declared")
            self._symbols[name] = symbol
        if binding.is_exact:
            logger.warning(f"Symbol {name} is bound to a rational; independence contract cannot hold")
        logger.debug(f"Declared {name} ({symbol.mode.value})")
        return self.symbol(name)

    def declare_line(self, line):
        """Parse `sym <name> <mode> <binding-spec>`"""
        parts = line.split()
        if len(parts) != 4 or parts[0] != 'sym':
            raise ParseError(f"Expected 'sym <name> <mode> <binding>': {line!r}")
        try:
            mode = Mode(parts[2])
        except ValueError:
            raise ParseError(f"Unknown mode {parts[2]!r}")
        return self.declare(parts[1], mode, parts[3])

    def get(self, name):
        try:
            return self._symbols[name]
        except KeyError:
            raise UnknownSymbol(f"Unknown symbol {name!r}")

    def __contains__(self, name):
        return name in self._symbols

    def names(self):
        return list(self._symbols)

    def declaration_lines(self):
        return [s.declaration_line() for s in self._symbols.values()]

    def symbol(self, name):
        self.get(name)
        return SymbolicReal._raw({((name, 1),): Fraction(1)}, None, self)

    def const(self, value):
        return SymbolicReal.constant(value, self)

    def mode_of(self, name):
        return self.get(name).mode

    def cap(self):
        return self.refine_cap if self.refine_cap is not None else config.settings.refine_cap


# ---------------------------------------------------------------------------
# SymbolicReal
# ---------------------------------------------------------------------------

def _coerce_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None


class SymbolicReal:
    """
    Canonical rational function num/den over a SymbolRegistry.

    Canonical form: gcd(num, den) = 1, the leading denominator coefficient
    (in the fixed graded order) is 1, zero is 0/1. Two values are equal iff
    their canonical forms are equal.
    """

    __slots__ = ('num', 'den', 'registry', '_key', '_enclosure')

    def __init__(self, *args, **kwargs):
        raise TypeError("Use SymbolRegistry.symbol/const or SymbolicReal.constant")

    @classmethod
    def _raw(cls, num, den, registry):
        self = object.__new__(cls)
        self.num = num
        self.den = den if den is not None else {ONE_MONOMIAL: Fraction(1)}
        self.registry = registry
        self._key = None
        self._enclosure = None
        return self

    @classmethod
    def _make(cls, num, den, registry, normalized=False):
        if not normalized:
            num, den = _normalize(num, den)
        value = cls._raw(num, den, registry)
        value._check_mode()
        return value

    @classmethod
    def constant(cls, value, registry):
        q = Fraction(value)
        return cls._raw({ONE_MONOMIAL: q} if q else {}, None, registry)

    @classmethod
    def from_polynomial(cls, num, registry, den=None):
        return cls._make(dict(num), dict(den) if den else {ONE_MONOMIAL: Fraction(1)}, registry)

    # -- structure -----------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted(self.num.items(), key=lambda kv: monomial_key(kv[0]))),
                tuple(sorted(self.den.items(), key=lambda kv: monomial_key(kv[0]))),
            )
        return self._key

    def __eq__(self, other):
        if isinstance(other, SymbolicReal):
            return self.key() == other.key()
        q = _coerce_fraction(other)
        if q is not None:
            return self.as_rational() == q
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def symbols(self):
        return _poly_names(self.num) | _poly_names(self.den)

    @property
    def is_polynomial(self):
        return _is_constant(self.den)

    def degree(self):
        return max(_poly_degree(self.num), _poly_degree(self.den))

    def _check_mode(self):
        names = self.symbols()
        if not names:
            return
        linear = [n for n in names if self.registry.mode_of(n) is Mode.LINEAR]
        if linear and (not self.is_polynomial or _poly_degree(self.num) > 1):
            raise ModeViolation(
                f"Result is not an affine combination of linear-mode symbols {sorted(linear)}; "
                f"declare them algebraic to use field arithmetic"
            )

    def _coerce(self, other):
        if isinstance(other, SymbolicReal):
            if other.registry is not self.registry and other.symbols() and self.symbols():
                raise ContractViolation("Values come from different symbol registries")
            return other
        q = _coerce_fraction(other)
        if q is None:
            return None
        return SymbolicReal.constant(q, self.registry)

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        return SymbolicReal._raw(_poly_scale(self.num, -1), self.den, self.registry)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        registry = self.registry if self.symbols() else other.registry
        if self.is_polynomial and other.is_polynomial:
            return SymbolicReal._make(_poly_add(self.num, other.num), None, registry, normalized=True)
        num = _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den))
        return SymbolicReal._make(num, _poly_mul(self.den, other.den), registry)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        registry = self.registry if self.symbols() else other.registry
        a, b = self.as_rational(), other.as_rational()
        if b is not None:
            return SymbolicReal._raw(_poly_scale(self.num, b), self.den if b else None, registry)
        if a is not None:
            return SymbolicReal._raw(_poly_scale(other.num, a), other.den if a else None, registry)
        num = _poly_mul(self.num, other.num)
        den = _poly_mul(self.den, other.den)
        if self.is_polynomial and other.is_polynomial:
            return SymbolicReal._make(num, None, registry, normalized=True)
        return SymbolicReal._make(num, den, registry)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("Division by a symbolically zero value")
        b = other.as_rational()
        if b is not None:
            return SymbolicReal._raw(_poly_scale(self.num, 1 / b), self.den, self.registry)
        registry = self.registry if self.symbols() else other.registry
        return SymbolicReal._make(_poly_mul(self.num, other.den), _poly_mul(self.den, other.num), registry)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    # -- exact queries ---------------------------------------------------------

    def is_zero(self):
        return not self.num

    def as_rational(self):
        if _is_constant(self.num) and _is_constant(self.den):
            return _constant_value(self.num) / _constant_value(self.den)
        return None

    # -- interval evaluation ---------------------------------------------------

    def _evaluate(self, sym_eps, prec):
        """Interval enclosure with symbol intervals of width sym_eps, or None"""
        names = sorted(self.symbols())
        bounds = {n: self.registry.get(n).binding.interval(sym_eps) for n in names}
        with _IV_LOCK:
            saved = iv.prec
            iv.prec = prec
            try:
                ivs = {n: _iv_from_fractions(lo, hi) for n, (lo, hi) in bounds.items()}
                num = self._eval_poly(self.num, ivs)
                den = self._eval_poly(self.den, ivs)
                dlo, dhi = _iv_endpoints(den)
                if dlo is None or dhi is None or (dlo <= 0 <= dhi):
                    return None
                lo, hi = _iv_endpoints(num / den)
            finally:
                iv.prec = saved
        if lo is None or hi is None:
            return None
        return lo, hi

    @staticmethod
    def _eval_poly(p, ivs):
        total = iv.mpf(0)
        for m, c in p.items():
            term = _iv_from_fractions(c, c)
            for name, e in m:
                term = term * (ivs[name] ** e)
            total = total + term
        return total

    def _refine(self, done, start_eps=Fraction(1, 16)):
        """
        Halve the symbol width each round until done(lo, hi) accepts the
        enclosure; returns that enclosure.
        """
        cap = self.registry.cap() if self.registry is not None else config.settings.refine_cap
        sym_eps = Fraction(start_eps)
        extra = 16 + 8 * self.degree() + _coefficient_bits(self.num) + _coefficient_bits(self.den)
        for round_no in range(cap):
            enclosure = self._evaluate(sym_eps, _bits_for(sym_eps) + extra)
            if enclosure is not None:
                lo, hi = enclosure
                if done(lo, hi):
                    return lo, hi
                if lo == hi and self._all_exact():
                    raise RefinementBudgetExceeded(
                        f"Value of {self.to_text()} is exactly {lo} although it is not a "
                        f"constant; symbol bindings violate the independence contract"
                    )
            sym_eps /= 2
        raise RefinementBudgetExceeded(
            f"Refinement of {self.to_text()} did not settle within {cap} rounds"
        )

    def _all_exact(self):
        return all(self.registry.get(n).binding.is_exact for n in self.symbols())

    def sign(self):
        if self.is_zero():
            return 0
        q = self.as_rational()
        if q is not None:
            return (q > 0) - (q < 0)
        lo, hi = self._refine(lambda lo, hi: lo > 0 or hi < 0)
        return 1 if lo > 0 else -1

    def approx(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ContractViolation("approx needs a positive width")
        q = self.as_rational()
        if q is not None:
            return q, q
        best = self._enclosure
        if best is not None and best[1] - best[0] <= eps:
            return best
        lo, hi = self._refine(lambda lo, hi: hi - lo <= eps, start_eps=min(eps, Fraction(1, 16)))
        # answers shrink monotonically for this value
        if best is not None:
            lo, hi = max(lo, best[0]), min(hi, best[1])
        self._enclosure = (lo, hi)
        return lo, hi

    def floor(self):
        q = self.as_rational()
        if q is not None:
            return int(math.floor(q))

        def settled(lo, hi):
            if math.floor(lo) == math.floor(hi) and hi != math.floor(hi):
                return True
            # irrational value strictly below an integer upper end
            return hi == math.floor(hi) and math.floor(lo) == hi - 1

        lo, hi = self._refine(settled)
        return int(math.floor(lo))

    # -- output ---------------------------------------------------------------

    def to_text(self):
        num = _poly_text(self.num)
        if self.is_polynomial:
            return num
        return f"({num})/({_poly_text(self.den)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SymbolicReal({self.to_text()})"


def _monomial_text(m):
    return '*'.join(name for name, e in m for _ in range(e))


def _poly_text(p):
    if not p:
        return '0'
    parts = []
    for m in sorted(p, key=monomial_key, reverse=True):
        c = p[m]
        sign = '-' if c < 0 else '+'
        a = abs(c)
        if m == ONE_MONOMIAL:
            body = str(a)
        elif a == 1:
            body = _monomial_text(m)
        else:
            body = f"{a}*{_monomial_text(m)}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# Operation-style API
# ---------------------------------------------------------------------------

def arith(op, x, y=None):
    """op in {'add', 'sub', 'mul', 'div', 'neg'}"""
    if op == 'neg':
        return -x
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    if op == 'div':
        return x / y
    raise ContractViolation(f"Unknown arithmetic operation {op!r}")


def is_zero(x):
    return x.is_zero()


def sign(x):
    return x.sign()


def approx(x, eps):
    return x.approx(eps)


def floor(x):
    return x.floor()


def as_rational(x):
    return x.as_rational()


def linear_combination(coeffs, values, registry):
    """Sum of q_i * v_i computed without leaving the polynomial fast path"""
    total = SymbolicReal.constant(0, registry)
    for q, v in zip(coeffs, values):
        if q:
            total = total + v * q
    return total


# ---------------------------------------------------------------------------
# Coordinates in monomial space
# ---------------------------------------------------------------------------

def coordinates(values):
    """
    Express values over a common denominator D as coordinate rows in a
    sorted monomial basis: value_i = (sum_j rows[i][j] * monomials[j]) / D.

    The map p -> p / D is Q-linear and injective, so Q-linear relations
    among the values are exactly those among the rows.
    """
    D = poly_lcm([v.den for v in values])
    numerators = []
    for v in values:
        if _is_constant(D) and v.is_polynomial:
            numerators.append(v.num)
        else:
            numerators.append(_poly_mul(v.num, poly_exquo(D, v.den)))
    monomials = sorted({m for p in numerators for m in p}, key=monomial_key)
    rows = [[p.get(m, Fraction(0)) for m in monomials] for p in numerators]
    return monomials, D, rows


def from_coordinates(row, monomials, D, registry):
    num = {m: Fraction(c) for m, c in zip(monomials, row) if c}
    if _is_constant(D):
        return SymbolicReal._make(_poly_scale(num, 1 / _constant_value(D)), None, registry, normalized=True)
    return SymbolicReal._make(num, D, registry)


def formal_product(x, y):
    """
    x*y with the symbols' monomials taken as independent, skipping the
    linear-mode check. Only for coordinate computations.
    """
    num, den = _normalize(_poly_mul(x.num, y.num), _poly_mul(x.den, y.den))
    return SymbolicReal._raw(num, den, x.registry if x.registry is not None else y.registry)
