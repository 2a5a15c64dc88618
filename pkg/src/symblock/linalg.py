"""Small dense exact linear algebra over Q or Q(sqrt d).

Matrices are lists of row lists.  Entries only need ``+ - * /`` and a
truth value, so ``int``, ``Fraction`` and ``Quad`` all work.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import Scalar, normalize

Matrix = list[list[Scalar]]


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(k: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(len(A), cols)
    for i, row in enumerate(A):
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(cols):
                if Bk[j]:
                    out[i][j] += a * Bk[j]
    return [[normalize(x) for x in r] for r in out]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[normalize(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Matrix, c: Scalar) -> Matrix:
    return [[normalize(a * c) for a in r] for r in A]


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([normalize(a * b) for a in ra for b in rb])
    return out


def is_zero(A: Matrix) -> bool:
    return not any(x for r in A for x in r)


def to_numpy(A: Matrix) -> np.ndarray:
    if not A:
        return np.zeros((0, 0))
    return np.array([[float(x) for x in r] for r in A], dtype=float)


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank by fraction-free row reduction."""
    M = [[_field(x) for x in r] for r in rows]
    if not M:
        return 0
    r, ncols = 0, len(M[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def solve(A: Matrix, b: Sequence[Scalar]):
    """A unique-or-consistent solution of A x = b, or None if inconsistent.

    A may be tall; free variables are set to zero.
    """
    rows = len(A)
    ncols = len(A[0]) if A else 0
    M = [[_field(x) for x in A[i]] + [_field(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, rows) if M[i][c]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][ncols] for i in range(r, rows)):
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = normalize(M[i][ncols])
    return x


def inverse(G: Matrix) -> Matrix:
    k = len(G)
    M = [[_field(x) for x in G[i]] + [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for c in range(k):
        pivot = next((i for i in range(c, k) if M[i][c]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        M[c], M[pivot] = M[pivot], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(k):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [[normalize(x) for x in r[k:]] for r in M]


def ldl(S: Matrix) -> tuple[Matrix, list[Scalar]]:
    """S = L diag(delta) L^T with L unit lower triangular; pivots must be positive."""
    k = len(S)
    L = identity(k)
    delta: list[Scalar] = []
    for j in range(k):
        dj = _field(S[j][j]) - sum(L[j][m] * L[j][m] * delta[m] for m in range(j))
        if dj <= 0:
            raise ValueError(f"matrix is not positive definite (pivot {j} is {dj})")
        delta.append(normalize(dj))
        for i in range(j + 1, k):
            s = _field(S[i][j]) - sum(L[i][m] * L[j][m] * delta[m] for m in range(j))
            L[i][j] = normalize(s / dj)
    return L, delta
