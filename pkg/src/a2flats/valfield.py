"""Exact valued fields.

Two instances are provided:

* :class:`PAdicRationals` -- the rationals with the ``p``-adic valuation.
  Elements are plain :class:`fractions.Fraction` objects.
* :class:`RationalFunctions` -- the field ``Q(t)`` with the ``t``-adic
  valuation.  Elements are :class:`RationalFunction` objects.

Valuations are exact rationals, or ``math.inf`` / ``-math.inf``.  With the
convention ``log|a| = -v(a)`` no base of logarithm is ever needed.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Union

from flint import fmpq, fmpq_poly

INF = math.inf

Val = Union[Fraction, float]


class FieldMismatchError(TypeError):
    """Scalars (or objects built on them) from different field instances were combined."""


class ProjectiveInfinity:
    """The point at infinity of ``K ∪ {∞}``; only ``logabs`` accepts it."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (ProjectiveInfinity, ())


INFINITY = ProjectiveInfinity()


def as_val(x) -> Val:
    """Coerce an int / Fraction / infinite float to a valuation value."""
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError(f"valuations are exact, got float {x!r}")
    return Fraction(x)


def format_val(v: Val) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return str(Fraction(v))


def parse_val(text: str) -> Val:
    text = text.strip()
    if text in ("inf", "+inf"):
        return INF
    if text == "-inf":
        return -INF
    return Fraction(text)


# --------------------------------------------------------------------------
# Q(t)


def _ord(poly: fmpq_poly) -> int:
    for i, c in enumerate(poly.coeffs()):
        if c != 0:
            return i
    raise ValueError("ord of zero polynomial")


class RationalFunction:
    """An element of ``Q(t)`` stored as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, fmpq_poly):
            num = _to_poly(num)
        if den is None:
            den = fmpq_poly([1])
        elif not isinstance(den, fmpq_poly):
            den = _to_poly(den)
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = fmpq_poly([1])
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lead = den[den.degree()]
            if lead != 1:
                num = num / lead
                den = den / lead
        self.num = num
        self.den = den
        self._hash = None

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return RationalFunction(fmpq_poly([other]), _reduced=True)
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot mix Q(t) scalars with Q_p scalars")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den.degree() == 0:
                return RationalFunction(self.num + other.num, self.den, _reduced=True)
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RationalFunction(self.num * other.num, self.den, _reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(t)")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(fmpq_poly([1])) / (self ** (-n))
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int) and not isinstance(other, bool):
            return self.den.degree() == 0 and self.num == fmpq_poly([other])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def ord(self) -> Val:
        if self.num.is_zero():
            return INF
        return Fraction(_ord(self.num) - _ord(self.den))

    def __str__(self):
        num = _poly_str(self.num)
        if self.den == 1:
            return num
        den = _poly_str(self.den)
        if len([c for c in self.num.coeffs() if c != 0]) > 1:
            num = f"({num})"
        if len([c for c in self.den.coeffs() if c != 0]) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"

    def __reduce__(self):
        return (_rf_from_coeffs, (
            [(int(c.p), int(c.q)) for c in self.num.coeffs()],
            [(int(c.p), int(c.q)) for c in self.den.coeffs()],
        ))


def _rf_from_coeffs(num, den):
    return RationalFunction(
        fmpq_poly([fmpq(a, b) for a, b in num]),
        fmpq_poly([fmpq(a, b) for a, b in den]),
    )


def _to_poly(x) -> fmpq_poly:
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, Fraction):
        return fmpq_poly([fmpq(x.numerator, x.denominator)])
    if isinstance(x, int):
        return fmpq_poly([x])
    if isinstance(x, (list, tuple)):
        return fmpq_poly([fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in x])
    raise TypeError(f"cannot build a polynomial from {x!r}")


def _coeff_str(c: fmpq) -> str:
    return str(Fraction(int(c.p), int(c.q)))


def _poly_str(poly: fmpq_poly) -> str:
    coeffs = poly.coeffs()
    if not any(c != 0 for c in coeffs):
        return "0"
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if deg == 0:
            body = _coeff_str(mag)
        else:
            mono = "t" if deg == 1 else f"t^{deg}"
            body = mono if mag == 1 else f"{_coeff_str(mag)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


# --------------------------------------------------------------------------
# field instances


class ValuedField:
    """Common interface of the two field instances."""

    name: str

    def val(self, a) -> Val:
        raise NotImplementedError

    def logabs(self, a) -> Val:
        """``log|a| = -v(a)``; the projective infinity maps to ``+inf``."""
        if a is INFINITY:
            return INF
        return -self.val(a)

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        if a is INFINITY:
            return "inf"
        return str(a)

    def random_scalar(self, rng: random.Random, nonzero: bool = False):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def check(self, a):
        """Raise :class:`FieldMismatchError` unless ``a`` is an element of this field."""
        raise NotImplementedError

    def arith(self, a, b, op: str):
        """Apply ``op`` in ``{'+', '-', '*', '/'}``; mostly useful from text front ends."""
        self.check(a)
        self.check(b)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op in ("*", "×"):
            return a * b
        if op in ("/", "÷"):
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return a / b
        raise ValueError(f"unknown operation {op!r}")

    def __repr__(self):
        return f"<{self.name}>"


class PAdicRationals(ValuedField):
    """``Q`` with the ``p``-adic valuation."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"qp:{p}"

    def __eq__(self, other):
        return isinstance(other, PAdicRationals) and other.p == self.p

    def __hash__(self):
        return hash(("qp", self.p))

    def _vp(self, n: int) -> int:
        k = 0
        while n % self.p == 0:
            n //= self.p
            k += 1
        return k

    def val(self, a) -> Val:
        a = Fraction(a)
        if a == 0:
            return INF
        return Fraction(self._vp(a.numerator) - self._vp(a.denominator))

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            raise FieldMismatchError("cannot use a Q(t) scalar in a p-adic field")
        return Fraction(x)

    def check(self, a):
        if not isinstance(a, (Fraction, int)) or isinstance(a, bool):
            raise FieldMismatchError(f"{a!r} is not an element of {self.name}")

    def parse(self, text: str):
        value = _parse_expr(text, allow_t=False)
        return Fraction(int(value.p), int(value.q))

    @property
    def uniformizer(self) -> Fraction:
        return Fraction(self.p)

    def random_scalar(self, rng, nonzero=False):
        while True:
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if a == 0 and nonzero:
                continue
            return a * Fraction(self.p) ** rng.randint(-2, 2)


class RationalFunctions(ValuedField):
    """``Q(t)`` with the ``t``-adic valuation."""

    name = "qt"

    def __eq__(self, other):
        return isinstance(other, RationalFunctions)

    def __hash__(self):
        return hash("qt")

    @property
    def t(self) -> RationalFunction:
        return RationalFunction(fmpq_poly([0, 1]), _reduced=True)

    @property
    def uniformizer(self) -> RationalFunction:
        return self.t

    def val(self, a) -> Val:
        if isinstance(a, int):
            return INF if a == 0 else Fraction(0)
        return a.ord()

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction(_to_poly(x), _reduced=True)
        raise FieldMismatchError(f"cannot coerce {x!r} into Q(t)")

    def check(self, a):
        if not isinstance(a, RationalFunction):
            raise FieldMismatchError(f"{a!r} is not an element of Q(t)")

    def parse(self, text: str):
        import sympy

        expr = _parse_expr(text, allow_t=True)
        sym = sympy.Symbol("t")
        num, den = sympy.fraction(sympy.together(expr))
        num_p = sympy.Poly(num, sym, domain="QQ")
        den_p = sympy.Poly(den, sym, domain="QQ")
        as_flint = lambda p: fmpq_poly(  # noqa: E731
            [fmpq(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        )
        return RationalFunction(as_flint(num_p), as_flint(den_p))

    def random_scalar(self, rng, nonzero=False):
        """Mostly Laurent polynomials of low degree; one draw in four has a linear denominator."""
        while True:
            num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
            if not any(num) and (nonzero or rng.random() < 0.5):
                continue
            den = [rng.randint(-3, 3), rng.randint(1, 3)] if rng.random() < 0.25 else [1]
            if not any(den):
                continue
            a = RationalFunction(_to_poly(num), _to_poly(den))
            return a * self.t ** rng.randint(-2, 2)


def _parse_expr(text: str, allow_t: bool):
    import sympy
    from sympy.parsing.sympy_parser import (
        implicit_multiplication,
        parse_expr,
        standard_transformations,
    )

    if not text or not text.strip():
        raise ValueError("empty scalar")
    local = {"t": sympy.Symbol("t")} if allow_t else {}
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict=local,
            global_dict={"Integer": sympy.Integer, "Rational": sympy.Rational,
                         "Symbol": sympy.Symbol},
            transformations=standard_transformations + (implicit_multiplication,),
            evaluate=True,
        )
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ValueError(f"cannot parse scalar {text!r}: {exc}") from None
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise ZeroDivisionError(f"scalar {text!r} divides by zero")
    free = expr.free_symbols
    if allow_t:
        if free - {sympy.Symbol("t")}:
            raise ValueError(f"unknown symbol in {text!r}")
        if not expr.is_rational_function(sympy.Symbol("t")):
            raise ValueError(f"{text!r} is not a rational function of t")
        return expr
    if free or not expr.is_Rational:
        raise ValueError(f"{text!r} is not a rational number")
    return expr


def field_from_spec(spec: str) -> ValuedField:
    """``"qp:5"`` -> 5-adic rationals, ``"qt"`` -> ``Q(t)``."""
    spec = spec.strip().lower()
    if spec == "qt":
        return RationalFunctions()
    if spec.startswith("qp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad prime in field selector {spec!r}") from None
        return PAdicRationals(p)
    raise ValueError(f"unknown field selector {spec!r} (use qp:<prime> or qt)")
