"""Exact coefficient arithmetic in the parameters r, s (and x).

``LaurentPoly`` is a sparse Laurent polynomial with rational coefficients,
``RationalFunction`` an element of its fraction field kept in a canonical
form so that equality is a structural comparison.  Numeric specializations
use Python ``complex`` values.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Union

import flint

VARS = ("r", "s", "x")
NVARS = len(VARS)
_ZERO_EXP = (0,) * NVARS
_FLINT_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")

Number = Union[int, Fraction]


class ScalarError(ArithmeticError):
    """Base class for errors raised by the scalar layer."""


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class EvaluationError(ScalarError, ValueError):
    """Missing variable or a pole at the requested assignment."""


class ParseError(ScalarError, ValueError):
    pass


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, bool):
        return int(c)
    return c


def _add_exp(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


class LaurentPoly:
    """Sparse Laurent polynomial in r, s, x over the rationals.

    ``terms`` maps exponent triples ``(a, b, d)`` (for ``r^a s^b x^d``) to
    nonzero ``int`` or ``Fraction`` coefficients.  Instances are treated as
    immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = _norm_coeff(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def monomial(cls, exps, c: Number = 1) -> "LaurentPoly":
        return cls({tuple(exps): c})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        e = [0] * NVARS
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Number:
        return self.terms.get(_ZERO_EXP, 0)

    def leading_term(self):
        """Largest exponent under lex order r > s > x, with its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self):
        keys = self.terms.keys()
        return tuple(min(k[i] for k in keys) for i in range(NVARS))

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used.add(VARS[i])
        return used

    # -- ring operations ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm_coeff(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ScalarError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentPoly({tuple(a * n for a in e): Fraction(c) ** n})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exps) -> "LaurentPoly":
        """Multiply by the monomial r^a s^b x^d."""
        return LaurentPoly._raw({_add_exp(e, exps): c for e, c in self.terms.items()})

    def scale(self, c: Number) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({e: _norm_coeff(v * c) for e, v in self.terms.items()})

    def substitute_monomial(self, images: Mapping[str, tuple]) -> "LaurentPoly":
        """Substitute each variable by a Laurent monomial given as an exponent triple.

        Variables absent from ``images`` are left unchanged.
        """
        cols = []
        for i, v in enumerate(VARS):
            if v in images:
                cols.append(tuple(images[v]))
            else:
                unit = [0] * NVARS
                unit[i] = 1
                cols.append(tuple(unit))
        out: dict = {}
        for e, c in self.terms.items():
            new = tuple(sum(e[i] * cols[i][k] for i in range(NVARS)) for k in range(NVARS))
            out[new] = out.get(new, 0) + c
        return LaurentPoly(out)

    def evaluate(self, assignment: Mapping[str, complex]) -> complex:
        needed = self.variables()
        missing = needed - set(assignment)
        if missing:
            raise EvaluationError(f"missing value for {sorted(missing)}")
        vals = [complex(assignment.get(v, 1)) for v in VARS]
        total = 0j
        for e, c in self.terms.items():
            term = complex(float(c))
            for v, a in zip(vals, e):
                if a:
                    term *= v ** a
            total += term
        return total

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


# -- flint bridge ----------------------------------------------------------

def _to_flint(p: LaurentPoly):
    return _FLINT_CTX.from_dict(p.terms)


def _from_flint(q) -> LaurentPoly:
    return LaurentPoly._raw({tuple(int(a) for a in e): int(c) for e, c in q.to_dict().items()})


def _integerize(p: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Return (m*p, m) with m the lcm of coefficient denominators."""
    dens = [c.denominator for c in p.terms.values() if isinstance(c, Fraction)]
    if not dens:
        return p, 1
    m = reduce(lcm, dens, 1)
    return p.scale(m), m


def _content(p: LaurentPoly) -> int:
    return reduce(gcd, p.terms.values(), 0)


class RationalFunction:
    """Element of Q(r, s, x) in canonical form.

    Canonical form: numerator and denominator have integer coefficients
    with overall gcd 1, the denominator is a polynomial not divisible by
    any variable, its lex-leading coefficient is positive, and numerator
    and denominator are coprime.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _canonical=False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num) if not isinstance(num, str) else parse_laurent(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls._make(LaurentPoly.var(name), _ONE_POLY)

    @classmethod
    def monomial(cls, exps, c: Number = 1) -> "RationalFunction":
        return cls(LaurentPoly.monomial(exps, c))

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, LaurentPoly):
            return cls(value)
        if isinstance(value, (int, Fraction)):
            return cls(LaurentPoly.const(value))
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to RationalFunction")

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def is_one(self) -> bool:
        return self.den.terms == _ONE_POLY.terms and self.num.terms == _ONE_POLY.terms

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # -- field operations --------------------------------------------------
    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den.is_constant() and other.den.constant_value() == 1:
            # (a/b + c) = (a + c*b)/b stays reduced and primitive
            return RationalFunction._make(self.num + other.num * self.den, self.den)
        if self.den.is_constant() and self.den.constant_value() == 1:
            return RationalFunction._make(other.num + self.num * other.den, other.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            if self.den.constant_value() == 1 and other.den.constant_value() == 1:
                return RationalFunction._make(self.num * other.num, _ONE_POLY)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.terms:
            raise DivisionByZero("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.num.is_monomial() and self.den.is_constant():
            return RationalFunction(self.num ** n, self.den ** n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_monomial(self, images: Mapping[str, tuple]) -> "RationalFunction":
        return RationalFunction(self.num.substitute_monomial(images), self.den.substitute_monomial(images))

    def swap_rs(self) -> "RationalFunction":
        """The image under r <-> s."""
        return self.substitute_monomial({"r": (0, 1, 0), "s": (1, 0, 0)})

    def evaluate(self, assignment: Mapping[str, complex], tol: float = 1e-12) -> complex:
        d = self.den.evaluate(assignment)
        if abs(d) <= tol:
            raise EvaluationError("denominator vanishes at the assignment")
        return self.num.evaluate(assignment) / d

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_scalar(self)


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return _ZERO_POLY, _ONE_POLY
    num, m1 = _integerize(num)
    den, m2 = _integerize(den)
    if m1 != 1 or m2 != 1:
        num, den = num.scale(m2), den.scale(m1)
    shift = tuple(-a for a in den.min_exponents())
    if any(shift):
        den = den.shift(shift)
        num = num.shift(shift)
    if not den.is_constant() and not num.is_monomial():
        nmin = num.min_exponents()
        npoly = num.shift(tuple(-a for a in nmin))
        fn, fd = _to_flint(npoly), _to_flint(den)
        g = fn.gcd(fd)
        if not g.is_constant():
            num = _from_flint(fn / g).shift(nmin)
            den = _from_flint(fd / g)
    c = gcd(_content(num), _content(den))
    _, lead = den.leading_term()
    if lead < 0:
        c = -c
    if c != 1:
        num = LaurentPoly._raw({e: v // c for e, v in num.terms.items()})
        den = LaurentPoly._raw({e: v // c for e, v in den.terms.items()})
    return num, den


_ZERO_POLY = LaurentPoly()
_ONE_POLY = LaurentPoly.const(1)
ZERO = RationalFunction._make(_ZERO_POLY, _ONE_POLY)
ONE = RationalFunction._make(_ONE_POLY, _ONE_POLY)
R = RationalFunction.var("r")
S = RationalFunction.var("s")
X = RationalFunction.var("x")


def rf(value) -> RationalFunction:
    """Shorthand coercion to ``RationalFunction``."""
    return RationalFunction.coerce(value)


def quantum_int(m: int, u) -> RationalFunction:
    """(m)_u = 1 + u + ... + u^(m-1); regular at u = 1 and u = -1."""
    if m < 0:
        raise ValueError("quantum_int needs m >= 0")
    u = rf(u)
    total = ZERO
    power = ONE
    for _ in range(m):
        total = total + power
        power = power * u
    return total


def quantum_factorial(m: int, u) -> RationalFunction:
    result = ONE
    for k in range(1, m + 1):
        result = result * quantum_int(k, u)
    return result


# -- numeric helpers -------------------------------------------------------

def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    """Symmetric approximate equality with a mixed absolute/relative scale."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def root_of_unity(n: int, k: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * k / n)


# -- text grammar ----------------------------------------------------------

def _format_rational(c: Number) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(e) -> str:
    parts = []
    for v, a in zip(VARS, e):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_laurent(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = Fraction(p.terms[e])
        mono = _format_monomial(e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_format_rational(mag)}*{mono}"
        else:
            body = _format_rational(mag)
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_scalar(f: RationalFunction) -> str:
    if f.den.terms == _ONE_POLY.terms:
        return format_laurent(f.num)
    return f"({format_laurent(f.num)})/({format_laurent(f.den)})"


_FACTOR_RE = re.compile(r"^(?:(\d+(?:/\d+)?)|([a-z])(?:\^(-?\d+))?)$")


def _split_terms(text: str) -> list[tuple[str, str]]:
    terms = []
    for piece in re.split(r"(?<!\^)(?=[+-])", text.replace(" ", "")):
        if not piece:
            continue
        sign = "+"
        if piece[0] in "+-":
            sign, piece = piece[0], piece[1:]
        if not piece:
            raise ParseError(f"dangling sign in {text!r}")
        terms.append((sign, piece))
    return terms


def parse_laurent(text: str) -> LaurentPoly:
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    out: dict = {}
    for sign, body in _split_terms(text):
        coeff = Fraction(1)
        exps = [0] * NVARS
        for factor in body.replace(" ", "").split("*"):
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            if m.group(1):
                coeff *= Fraction(m.group(1))
            else:
                name = m.group(2)
                if name not in VARS:
                    raise ParseError(f"unknown variable {name!r}")
                exps[VARS.index(name)] += int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            coeff = -coeff
        e = tuple(exps)
        out[e] = out.get(e, 0) + coeff
    return LaurentPoly({e: c for e, c in out.items() if c})


def parse_scalar(text: str) -> RationalFunction:
    """Parse ``poly`` or ``(poly)/(poly)`` in the scalar grammar."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
    if m:
        return RationalFunction(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return RationalFunction(parse_laurent(text))
