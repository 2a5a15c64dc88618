"""The algebra of S_n-invariant matrices on [p]^n in the basis {A_D}.

Elements are sparse maps from :class:`Profile` to exact scalars.  The dense
``brute_force_*`` functions build the actual p^n x p^n objects and exist only
to check the sparse calculus on small cases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .combinatorics import (
    Profile,
    Tableau,
    compositions,
    enum_profiles,
    word_profile,
)
from .scalars import Scalar, conj, multinomial, normalize

DEFAULT_CAP = 4096


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(eq=False)
class AlgebraElement:
    """``sum_D coeffs[D] * A_D``."""

    n: int
    p: int
    coeffs: dict[Profile, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for D, c in self.coeffs.items():
            if D.p != self.p or D.n != self.n:
                raise ValueError(f"profile {D} does not belong to P({self.n},{self.p})")
            if c:
                clean[D] = normalize(c)
        self.coeffs = clean

    @classmethod
    def basis(cls, D: Profile) -> "AlgebraElement":
        return cls(D.n, D.p, {D: 1})

    @classmethod
    def zero(cls, n: int, p: int) -> "AlgebraElement":
        return cls(n, p, {})

    @classmethod
    def identity(cls, n: int, p: int) -> "AlgebraElement":
        return cls(n, p, {Profile.diag(mu): 1 for mu in compositions(n, p)})

    def _check(self, other: "AlgebraElement"):
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError(f"algebra mismatch: (n,p)={self.n, self.p} vs {other.n, other.p}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.coeffs)
        for D, c in other.coeffs.items():
            out[D] = out.get(D, 0) + c
        return AlgebraElement(self.n, self.p, out)

    def __neg__(self):
        return AlgebraElement(self.n, self.p, {D: -c for D, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.n, self.p, {D: c * other for D, c in self.coeffs.items()})

    def __rmul__(self, other):
        return AlgebraElement(self.n, self.p, {D: other * c for D, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and self.coeffs == other.coeffs

    @property
    def T(self) -> "AlgebraElement":
        """Conjugate transpose; A_D^T = A_{D^T}."""
        return AlgebraElement(self.n, self.p, {D.T: conj(c) for D, c in self.coeffs.items()})

    def coefficient(self, D: Profile) -> Scalar:
        return self.coeffs.get(D, 0)

    def is_hermitian(self) -> bool:
        return self == self.T

    def dense(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        out = np.zeros((self.p ** self.n,) * 2, dtype=object)
        for D, c in self.coeffs.items():
            out = out + brute_force_AD(D, cap) * c
        return out


@lru_cache(maxsize=None)
def _product_expansion(L: Profile, M: Profile) -> tuple[tuple[Profile, int], ...]:
    """A_L A_M = sum_N c[L,M,N] A_N, as ((N, c), ...) with c > 0.

    Enumerates B[r,s,t] slice by slice in s: slice s is an r x t table with
    row sums L[.,s] and column sums M[s,.].  Then N = sum_s B[.,s,.] and the
    weight is prod_{r,t} multinomial(N[r,t]; B[r,1,t], ..., B[r,p,t]).
    """
    p = L.p
    col_L = L.col_sums()
    row_M = M.row_sums()
    if col_L != row_M:
        return ()
    slices = [list(_tables(tuple(L.rows[r][s] for r in range(p)), M.rows[s])) for s in range(p)]
    out: dict[Profile, int] = {}
    for choice in itertools.product(*slices):
        weight = 1
        N = [[0] * p for _ in range(p)]
        for r in range(p):
            for t in range(p):
                parts = [choice[s][r][t] for s in range(p)]
                N[r][t] = sum(parts)
                weight *= multinomial(N[r][t], parts)
        key = Profile(tuple(map(tuple, N)))
        out[key] = out.get(key, 0) + weight
    return tuple(sorted(out.items(), key=lambda kv: kv[0].flat))


def _tables(row_sums: tuple[int, ...], col_sums: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Nonnegative integer matrices with the given margins."""
    if sum(row_sums) != sum(col_sums):
        return
    if not row_sums:
        yield ()
        return
    first, rest = row_sums[0], row_sums[1:]
    for row in _bounded_compositions(first, col_sums):
        remaining = tuple(c - x for c, x in zip(col_sums, row))
        for tail in _tables(rest, remaining):
            yield (row,) + tail


def _bounded_compositions(total: int, bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not bounds:
        if total == 0:
            yield ()
        return
    head_max = min(total, bounds[0])
    tail_cap = sum(bounds[1:])
    for head in range(max(0, total - tail_cap), head_max + 1):
        for tail in _bounded_compositions(total - head, bounds[1:]):
            yield (head,) + tail


def structure_constant(L: Profile, M: Profile, N: Profile) -> int:
    """c_{L,M}^N: number of words b with D(a,b)=L, D(b,c)=M for any fixed a, c with D(a,c)=N."""
    if not (L.n == M.n == N.n) or not (L.p == M.p == N.p):
        raise ValueError("profiles must share n and p")
    for key, c in _product_expansion(L, M):
        if key == N:
            return c
    return 0


def multiply(A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    A._check(B)
    out: dict[Profile, Scalar] = {}
    for L, a in A.coeffs.items():
        for M, b in B.coeffs.items():
            ab = a * b
            for N, c in _product_expansion(L, M):
                out[N] = out.get(N, 0) + ab * c
    return AlgebraElement(A.n, A.p, out)


def elementary(i: int, j: int, n: int, p: int) -> AlgebraElement:
    """A_{i->j}: word pairs differing in exactly one position, holding i in a and j in b."""
    if i == j:
        raise ValueError("A_{i->j} needs i != j")
    if n < 1:
        return AlgebraElement.zero(n, p)
    out = {}
    for mu in compositions(n - 1, p):
        rows = [list(r) for r in Profile.diag(mu).rows]
        rows[i - 1][j - 1] += 1
        out[Profile(tuple(map(tuple, rows)))] = 1
    return AlgebraElement(n, p, out)


def weight_idempotent(mu) -> AlgebraElement:
    """I_mu = A_{diag(mu)}."""
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in mu):
        raise ValueError(f"bad weight {mu}")
    return AlgebraElement.basis(Profile.diag(mu))


def decompose_lower_triangular(D: Profile) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...], int]:
    """Factor a lower-triangular profile into lowering operators.

    Returns ``(word, mu, factor)`` with
    ``factor * A_D = A_{w_1} A_{w_2} ... A_{w_k} I_mu``, where each ``w`` is a
    pair ``(i, j)`` meaning A_{i->j}.  The word lists j ascending, then i
    ascending, each pair repeated D[i,j] times.
    """
    if not D.is_lower_triangular():
        raise ValueError(f"profile {D} is not lower triangular")
    p = D.p
    word = []
    factor = 1
    for j in range(1, p):
        for i in range(j + 1, p + 1):
            word.extend([(i, j)] * D[i, j])
            factor *= math.factorial(D[i, j])
    return tuple(word), D.col_sums(), factor


def apply_word(word, element: AlgebraElement) -> AlgebraElement:
    """Left-multiply ``element`` by ``A_{w_1} ... A_{w_k}`` (rightmost first)."""
    for i, j in reversed(word):
        element = multiply(elementary(i, j, element.n, element.p), element)
    return element


def words(n: int, p: int) -> list[tuple[int, ...]]:
    """[p]^n in lexicographic order."""
    return list(itertools.product(range(1, p + 1), repeat=n))


@lru_cache(maxsize=64)
def _word_index(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {w: k for k, w in enumerate(words(n, p))}


def _guard(n: int, p: int, cap: int):
    if p ** n > cap:
        raise OracleCapExceeded(f"p^n = {p ** n} exceeds oracle cap {cap}")


def brute_force_AD(D: Profile, cap: int = DEFAULT_CAP) -> np.ndarray:
    n, p = D.n, D.p
    _guard(n, p, cap)
    ws = words(n, p)
    out = np.zeros((len(ws), len(ws)), dtype=np.int64)
    for a_idx, a in enumerate(ws):
        for b_idx, b in enumerate(ws):
            if word_profile(a, b, p) == D:
                out[a_idx, b_idx] = 1
    return out


def brute_force_et(t: Tableau, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """e_t = sum_{sigma in C_lambda} sgn(sigma) sum_{t' ~ t} chi^{sigma t'}."""
    n = t.n
    _guard(n, p, cap)
    if len(t.shape) > p:
        raise ValueError("shape has more rows than symbols")
    index = _word_index(n, p)
    out = np.zeros(p ** n, dtype=np.int64)
    row_options = [sorted(set(itertools.permutations(row))) for row in t.rows]
    columns = t.columns()
    col_perms = [list(itertools.permutations(range(len(c)))) for c in columns]
    for rows in itertools.product(*row_options):
        base = [x for row in rows for x in row]
        for choice in itertools.product(*col_perms):
            word = list(base)
            sign = 1
            for col, perm in zip(columns, choice):
                sign *= _perm_sign(perm)
                for src, dst in enumerate(perm):
                    word[col[dst]] = base[col[src]]
            out[index[tuple(word)]] += sign
    return out


def _perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def expand_dense(M: np.ndarray, n: int, p: int) -> Optional[AlgebraElement]:
    """Read an S_n-invariant dense matrix back into the {A_D} basis; None if not invariant."""
    ws = words(n, p)
    coeffs: dict[Profile, Scalar] = {}
    for a_idx, a in enumerate(ws):
        for b_idx, b in enumerate(ws):
            D = word_profile(a, b, p)
            v = M[a_idx, b_idx]
            if D in coeffs:
                if coeffs[D] != v:
                    return None
            else:
                coeffs[D] = v
    return AlgebraElement(n, p, {D: int(v) if isinstance(v, np.integer) else v
                                 for D, v in coeffs.items()})


def orbit_size(D: Profile) -> int:
    """Number of word pairs (a, b) with D(a, b) = D, i.e. the support size of A_D."""
    return multinomial(D.n, D.flat)


def random_element(n: int, p: int, rng, low: int = -3, high: int = 3) -> AlgebraElement:
    """Element with independent integer coefficients in [low, high]."""
    return AlgebraElement(n, p, {D: int(rng.integers(low, high + 1)) for D in enum_profiles(n, p)})
