"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt(d)).

Rationals are plain ``int``/``Fraction`` values.  ``Quad`` carries a fixed
square-free radicand ``d``; arithmetic between two ``Quad`` values with
different radicands raises instead of coercing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "Quad"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def squarefree_split(m: int) -> tuple[int, int]:
    """Write ``m = f**2 * d`` with ``d`` square-free; returns ``(f, d)``."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0, 1
    f, d = 1, 1
    k, rest = 2, m
    while k * k <= rest:
        while rest % (k * k) == 0:
            rest //= k * k
            f *= k
        k += 1
    d = rest
    return f, d


class Quad:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and square-free ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        if d < 2 or squarefree_split(d)[0] != 1:
            raise ValueError(f"radicand must be square-free and > 1, got {d}")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    def _coerce(self, other) -> "Quad":
        if isinstance(other, Quad):
            if other.d != self.d:
                raise ValueError(f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return Quad(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quad(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quad(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def galois(self) -> "Quad":
        """The field automorphism sqrt(d) -> -sqrt(d)."""
        return Quad(self.a, -self.b, self.d)

    def conjugate(self) -> "Quad":
        # sqrt(d) is real, so complex conjugation is the identity
        return self

    def inverse(self) -> "Quad":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return Quad(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Quad(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Quad):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def sqrt_int(m: int) -> Scalar:
    """Exact square root of a nonnegative integer: ``int`` or ``Quad``."""
    f, d = squarefree_split(m)
    if d == 1:
        return f
    return Quad(0, f, d)


def conj(x: Scalar) -> Scalar:
    """Complex conjugate; every supported scalar is real."""
    return x


def radicand(x: Scalar) -> int:
    """The ring's radicand (0 for plain rationals)."""
    return x.d if isinstance(x, Quad) else 0


def normalize(x: Scalar) -> Scalar:
    """Collapse integral Fractions to ``int`` and rational ``Quad`` values to rationals."""
    if isinstance(x, Quad) and x.b == 0:
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def binom(a: int, b: int) -> int:
    """Binomial coefficient with ``binom(a, b) = 0`` outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def multinomial(total: int, parts) -> int:
    parts = list(parts)
    if sum(parts) != total or any(x < 0 for x in parts):
        return 0
    out = math.factorial(total)
    for x in parts:
        out //= math.factorial(x)
    return out


def to_json(x: Scalar):
    """Lossless JSON form: ``"num/den"`` string, or a dict for ``Quad``."""
    if isinstance(x, Quad):
        return {"value": _fstr(x.a), "sqrt_coeff": _fstr(x.b), "sqrt_of": x.d}
    return _fstr(_frac(x))


def from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        q = Quad(Fraction(obj["value"]), Fraction(obj["sqrt_coeff"]), int(obj["sqrt_of"]))
        return q
    if isinstance(obj, int) and not isinstance(obj, bool):
        return obj
    if isinstance(obj, str):
        return normalize(Fraction(obj))
    raise TypeError(f"cannot parse exact scalar from {obj!r}")


def _fstr(f: Fraction) -> str:
    f = _frac(f)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
