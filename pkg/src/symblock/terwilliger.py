"""Closed forms for Terwilliger algebras of Hamming schemes.

Binary case: B = M_2, profiles indexed by (i, j, t).  The element
A^t_{i,j} = A_{D} with D = [[n+t-i-j, i-t], [j-t, t]] maps weight-i words to
weight-j words, so in block k (shape (n-k, k)) its only nonzero entry sits in
row j, column i (rows and columns are labelled k..n-k).  Its value is
2^k beta^t_{i,j,k} for the exact map psi' and
beta^t_{i,j,k} / sqrt(C(n-2k,i-k) C(n-2k,j-k)) after orthonormalization; the
2^k of the Gram norm cancels between the two normalizing factors.

Nonbinary case: B is the 5-dimensional algebra of q x q matrices invariant
under permutations of the symbols 1..q-1, with phi into M_2 + M_1.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import linalg
from .combinatorics import Profile
from .general import BaseAlgebra, GeneralElement, SectorProfile
from .scalars import Scalar, binom, normalize, sqrt_int


def binary_indices(n: int) -> list[tuple[int, int, int]]:
    """Valid (i, j, t): 0 <= t <= min(i, j) and i + j - t <= n."""
    return [(i, j, t) for i in range(n + 1) for j in range(n + 1)
            for t in range(min(i, j) + 1) if i + j - t <= n]


def _check_index(i, j, t, n):
    if not (0 <= t <= min(i, j) and i + j - t <= n):
        raise ValueError(f"invalid binary index (i,j,t)=({i},{j},{t}) for n={n}")


def binary_profile(i: int, j: int, t: int, n: int) -> Profile:
    _check_index(i, j, t, n)
    return Profile(((n + t - i - j, i - t), (j - t, t)))


def binary_index_of(D: Profile) -> tuple[int, int, int]:
    """Inverse of :func:`binary_profile`."""
    (a, b), (c, d) = D.rows
    return b + d, c + d, d


def _check_beta(i, j, k, t, n):
    _check_index(i, j, t, n)
    if not (0 <= 2 * k <= n and k <= i <= n - k and k <= j <= n - k):
        raise ValueError(f"invalid block index k={k} for (i,j)=({i},{j}), n={n}")


def binary_beta(i: int, j: int, k: int, t: int, n: int) -> int:
    """beta^t_{i,j,k} from the lowering-operator derivation, sign inside the sum."""
    _check_beta(i, j, k, t, n)
    total = 0
    for s in range(j - k + 1):
        term = binom(n - k - i, s) * binom(i - k, j - k - s) * binom(k, j - t - s)
        total += (-1) ** ((j - t - s) % 2) * term
    return binom(n - 2 * k, i - k) * total


def binary_beta_schrijver(i: int, j: int, k: int, t: int, n: int) -> int:
    """The same beta as an alternating sum over u."""
    _check_beta(i, j, k, t, n)
    total = 0
    for u in range(n + 1):
        total += ((-1) ** ((u - t) % 2) * binom(u, t) * binom(n - 2 * k, u - k)
                  * binom(n - k - u, i - u) * binom(n - k - u, j - u))
    return total


def binary_blockdiag(n: int, exact: bool = False) -> dict:
    """(i, j, t) -> {k: block} for every valid index.

    Block k has rows/columns k..n-k.  With ``exact`` the entry is
    beta^t_{i,j,k} (multiply by 2^k to get psi'); otherwise it is the
    orthonormalized value beta / sqrt(C(n-2k,i-k) C(n-2k,j-k)).
    """
    out = {}
    for i, j, t in binary_indices(n):
        blocks = {}
        for k in range(n // 2 + 1):
            size = n - 2 * k + 1
            if exact:
                M = linalg.zeros(size, size)
            else:
                M = np.zeros((size, size))
            if k <= min(i, j) and max(i, j) <= n - k:
                beta = binary_beta(i, j, k, t, n)
                if exact:
                    M[j - k][i - k] = beta
                else:
                    M[j - k, i - k] = beta / math.sqrt(binom(n - 2 * k, i - k) * binom(n - 2 * k, j - k))
            blocks[k] = M
        out[(i, j, t)] = blocks
    return out


def nonbinary_basis(q: int) -> list[list[list[int]]]:
    """B_1..B_5 with rows/columns indexed 0..q-1, symbol 0 distinguished."""
    if q < 3:
        raise ValueError("nonbinary Terwilliger algebra needs q >= 3")
    mats = [linalg.zeros(q, q) for _ in range(5)]
    for a in range(q):
        for b in range(q):
            if a == 0 and b == 0:
                idx = 0
            elif a == 0:
                idx = 1
            elif b == 0:
                idx = 2
            elif a == b:
                idx = 3
            else:
                idx = 4
            mats[idx][a][b] = 1
    return mats


def nonbinary_base(q: int) -> BaseAlgebra:
    """The base algebra with phi(sum x_i B_i) = [[x1, x2 r], [x3 r, x4 + (q-2) x5]] + [x4 - x5], r = sqrt(q-1)."""
    basis = nonbinary_basis(q)
    r = sqrt_int(q - 1)
    big = [
        [[1, 0], [0, 0]],
        [[0, r], [0, 0]],
        [[0, 0], [r, 0]],
        [[0, 0], [0, 1]],
        [[0, 0], [0, q - 2]],
    ]
    small = [[[0]], [[0]], [[0]], [[1]], [[-1]]]
    return BaseAlgebra(q, basis, [big, small])


def nonbinary_psi(nu, n: int, q: int) -> dict[int, tuple[Profile, Scalar]]:
    """w -> (2x2 profile, coefficient) for the image of A_nu; zero sectors omitted.

    Sector w carries the 1x1 factor A_(w); the 2x2 profile is
    [[nu1, nu2], [nu3, nu4 + nu5 - w]].
    """
    nu = tuple(int(x) for x in nu)
    if len(nu) != 5 or sum(nu) != n or min(nu) < 0:
        raise ValueError(f"{nu} is not a weight of n={n} into 5 parts")
    if q < 3:
        raise ValueError("nonbinary Terwilliger algebra needs q >= 3")
    radical = sqrt_int(q - 1) ** (nu[1] + nu[2]) if (nu[1] + nu[2]) else 1
    out = {}
    for w in range(n + 1):
        rest = nu[3] + nu[4] - w
        if rest < 0:
            continue
        total = 0
        for g in range(rest + 1):
            total += binom(rest, g) * binom(w, nu[4] - g) * (q - 2) ** g * (-1) ** ((nu[4] - g) % 2)
        if total:
            coeff = normalize(radical * total)
            out[w] = (Profile(((nu[0], nu[1]), (nu[2], rest))), coeff)
    return out


def nonbinary_psi_as_y(nu, n: int, q: int) -> dict[SectorProfile, Scalar]:
    """:func:`nonbinary_psi` keyed like :func:`symblock.general.y_coefficients`."""
    out = {}
    for w, (D, c) in nonbinary_psi(nu, n, q).items():
        out[SectorProfile((n - w, w), (D, Profile(((w,),))))] = c
    return out


def _complement(bits):
    return tuple(1 - b for b in bits)


def binary_tfold_base(t: int) -> BaseAlgebra:
    """S_2-invariant matrices on {0,1}^t, blocks A+B and A-B of size 2^(t-1).

    X is ordered lexicographically.  Writing x = (x_1, x'), an invariant M has
    A[x',y'] = M[(0,x'),(0,y')] and B[x',y'] = M[(0,x'),(1,comp(y'))].
    The basis is the orbit indicators, one per pair ((0,x'), y).
    """
    if t < 1:
        raise ValueError("t must be positive")
    X = list(itertools.product((0, 1), repeat=t))
    index = {x: k for k, x in enumerate(X)}
    half = list(itertools.product((0, 1), repeat=t - 1))
    m = len(X)
    basis = []
    for xp in half:
        x = (0,) + xp
        for y in X:
            R = linalg.zeros(m, m)
            R[index[x]][index[y]] = 1
            R[index[_complement(x)]][index[_complement(y)]] = 1
            basis.append(R)
    plus, minus = [], []
    for R in basis:
        A = [[R[index[(0,) + a]][index[(0,) + b]] for b in half] for a in half]
        Bm = [[R[index[(0,) + a]][index[(1,) + _complement(b)]] for b in half] for a in half]
        plus.append(linalg.add(A, Bm))
        minus.append(linalg.add(A, linalg.scale(Bm, -1)))
    return BaseAlgebra(m, basis, [plus, minus])


def hamming_distance_element(k: int, n: int) -> GeneralElement:
    """Distance-k adjacency of the n-cube in the t=1 construction: R_(n-k, k)."""
    return GeneralElement.basis((n - k, k))


def krawtchouk(k: int, w: int, n: int) -> int:
    return sum((-1) ** j * binom(w, j) * binom(n - w, k - j) for j in range(k + 1))
