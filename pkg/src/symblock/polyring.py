"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of exponents.  For the profile calculus the ring has
``p*p`` variables ``x[i,j]`` stored row-major, so a monomial is exactly the
flattened exponent matrix of a :class:`~symblock.combinatorics.Profile`.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import Partition, Profile, dual_partition
from .scalars import Scalar, normalize


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Scalar] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} does not have {nvars} exponents")
                if c:
                    self.terms[tuple(mono)] = normalize(c)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Poly":
        mono = [0] * nvars
        mono[index] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar]) -> "Poly":
        """``sum_i coeffs[i] * x_i``."""
        nvars = len(coeffs)
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                mono = [0] * nvars
                mono[i] = 1
                out[tuple(mono)] = c
        return cls(nvars, out)

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = normalize(v)
            else:
                out.pop(mono, None)
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return _raw(self.nvars, {m: normalize(c) for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "Poly":
        if not c:
            return _raw(self.nvars, {})
        return _raw(self.nvars, {m: normalize(v * c) for m, v in self.terms.items() if v * c})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(mono), 0)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for mono in sorted(self.terms):
            factors = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}"
                               for i, e in enumerate(mono) if e)
            parts.append(f"{self.terms[mono]}" + (f"*{factors}" if factors else ""))
        return "Poly(" + " + ".join(parts) + ")"


def _raw(nvars: int, terms: dict) -> Poly:
    p = Poly.__new__(Poly)
    p.nvars = nvars
    p.terms = terms
    return p


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_scale(f: Poly, c: Scalar) -> Poly:
    return f.scale(c)


def x(i: int, j: int, p: int) -> Poly:
    """The variable x[i,j] (1-based) of the p*p-variable ring."""
    return Poly.variable((i - 1) * p + (j - 1), p * p)


def monomial(D: Profile) -> Poly:
    """x^D."""
    return Poly(D.p * D.p, {D.flat: 1})


def coefficient(f: Poly, D: Profile) -> Scalar:
    """[x^D] f."""
    return f.coefficient(D.flat)


def ring_size(f: Poly) -> int:
    p = math.isqrt(f.nvars)
    if p * p != f.nvars:
        raise ValueError(f"{f.nvars} variables is not a p*p ring")
    return p


@lru_cache(maxsize=None)
def q_poly(k: int, p: int) -> Poly:
    """Q_k = k! * det of the leading k x k block of (x[i,j])."""
    if not 0 <= k <= p:
        raise ValueError(f"Q_k needs 0 <= k <= p, got k={k}, p={p}")
    nv = p * p
    if k == 0:
        return Poly.constant(1, nv)
    fact = math.factorial(k)
    terms = {}
    for perm in itertools.permutations(range(k)):
        mono = [0] * nv
        for col, row in enumerate(perm):
            mono[row * p + col] += 1
        terms[tuple(mono)] = fact * _sign(perm)
    return Poly(nv, terms)


def _sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def p_lambda(lam: Partition, p: int) -> Poly:
    """P_lambda = prod over columns of Q_(column length)."""
    lam = Partition(lam)
    if len(lam) > p:
        raise ValueError(f"partition {tuple(lam)} has more than {p} parts")
    result = Poly.constant(1, p * p)
    for col in dual_partition(lam):
        result = result * q_poly(col, p)
    return result


def apply_d(f: Poly, i: int, j: int) -> Poly:
    """d_{i->j} = sum_s x[i,s] d/dx[j,s]."""
    p = ring_size(f)
    return _transfer(f, p, [((j - 1) * p + s, (i - 1) * p + s) for s in range(p)])


def apply_d_star(f: Poly, i: int, j: int) -> Poly:
    """d*_{i->j} = sum_s x[s,j] d/dx[s,i]."""
    p = ring_size(f)
    return _transfer(f, p, [(s * p + (i - 1), s * p + (j - 1)) for s in range(p)])


def _transfer(f: Poly, p: int, moves: Iterable[tuple[int, int]]) -> Poly:
    # each move (src, dst) is the operator x_dst * d/dx_src
    out: dict[tuple[int, ...], Scalar] = {}
    moves = list(moves)
    for mono, c in f.terms.items():
        for src, dst in moves:
            e = mono[src]
            if not e:
                continue
            new = list(mono)
            new[src] -= 1
            new[dst] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * e
    return _raw(f.nvars, {m: normalize(v) for m, v in out.items() if v})
