"""Block diagonalization of the symmetrized tensor power of M_p.

For each partition ``lam`` of n with at most p parts, the block is indexed by
the semistandard tableaux of shape ``lam`` (see :func:`enum_ssyt`).  The
inner products <A_D e_s, e_t> are read off as coefficients of polynomials
obtained from P_lambda by the raising/lowering operators, so no vector of
length p^n is ever formed.

Index convention for blocks.  ``InnerProductTable.table[D][s][t]`` holds
<A_D e_s, e_t>.  The block of an element A puts <A e_t, e_s> in row s,
column t, i.e. the *transpose* of the summed table.  This is the matrix of
A acting on the span of the e_t, and with it ``psi(AB) = psi(A) psi(B)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import linalg
from .algebra import AlgebraElement
from .combinatorics import (
    Partition,
    Profile,
    Tableau,
    enum_partitions,
    enum_ssyt,
    tableau_profile,
)
from .linalg import Matrix
from .polyring import Poly, apply_d, apply_d_star, p_lambda
from .scalars import Scalar, normalize


@dataclass
class InnerProductTable:
    lam: Partition
    n: int
    p: int
    basis: list[Tableau]
    table: dict[Profile, Matrix]

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, D: Profile) -> Matrix:
        """The m x m matrix of <A_D e_s, e_t>; zero matrix when D never occurs."""
        got = self.table.get(D)
        if got is None:
            return linalg.zeros(self.size, self.size)
        return got


@dataclass
class BlockImage:
    """Per-block matrices; exact lists of rows, or numpy arrays when numeric."""

    blocks: dict = field(default_factory=dict)
    exact: bool = True

    def sizes(self) -> dict:
        return {k: len(v) for k, v in self.blocks.items()}

    def numeric(self) -> dict:
        return {k: (linalg.to_numpy(v) if self.exact else v) for k, v in self.blocks.items()}

    def __matmul__(self, other: "BlockImage") -> "BlockImage":
        a, b = self.numeric(), other.numeric()
        return BlockImage({k: a[k] @ b[k] for k in a}, exact=False)


def lowering_chain(D: Profile):
    """Pairs (i, j), i > j, in product order: j ascending outer, i ascending inner."""
    p = D.p
    return [(i, j, D[i, j]) for j in range(1, p) for i in range(j + 1, p + 1)]


def _apply_chain(f: Poly, D: Profile, star: bool) -> Poly:
    # the product is written left to right, so the rightmost factor acts first
    for i, j, power in reversed(lowering_chain(D)):
        for _ in range(power):
            f = apply_d_star(f, j, i) if star else apply_d(f, i, j)
    return f


def _factorial_weight(D: Profile) -> int:
    out = 1
    for i, j, power in lowering_chain(D):
        out *= math.factorial(power)
    return out


@lru_cache(maxsize=None)
def inner_product_table(lam, n: int, p: int) -> InnerProductTable:
    """All <A_D e_s, e_t> for SSYT s, t of shape ``lam``.

    For s, t with D' = D(s, t_lam), D'' = D(t, t_lam) the generating
    polynomial sum_D x^D <A_D e_s, e_t> equals the lowering operators
    d_{i->j}^{D''[i,j]} and d*_{j->i}^{D'[i,j]} applied to P_lam, divided
    by prod D'[i,j]! D''[i,j]!.
    """
    lam = Partition(lam)
    if lam.n != n:
        raise ValueError(f"{tuple(lam)} is not a partition of {n}")
    if len(lam) > p:
        raise ValueError(f"{tuple(lam)} has more than {p} parts")
    basis = enum_ssyt(lam, p)
    m = len(basis)
    profiles = [tableau_profile(t, p) for t in basis]
    base = p_lambda(lam, p)
    right = [_apply_chain(base, Dp, star=True) for Dp in profiles]
    weights = [_factorial_weight(Dp) for Dp in profiles]
    table: dict[Profile, Matrix] = {}
    for s in range(m):
        for t in range(m):
            q = _apply_chain(right[s], profiles[t], star=False)
            norm = weights[s] * weights[t]
            for mono, c in q.terms.items():
                value, rem = divmod(c, norm)
                if rem:
                    raise ArithmeticError(f"non-integral inner product {c}/{norm} at {mono}")
                D = Profile.from_flat(mono, p)
                block = table.get(D)
                if block is None:
                    block = table[D] = linalg.zeros(m, m)
                block[s][t] = value
    return InnerProductTable(lam, n, p, basis, table)


def inner_product_tables(n: int, p: int, threads: int = 1) -> dict[Partition, InnerProductTable]:
    """Tables for every partition of n with at most p parts, in partition order."""
    lams = enum_partitions(n, p)
    if threads > 1 and len(lams) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(inner_product_table, lams, [n] * len(lams), [p] * len(lams)))
    else:
        results = [inner_product_table(lam, n, p) for lam in lams]
    return dict(zip(lams, results))


def gram(lam, n: int, p: int) -> Matrix:
    """G[s][t] = <e_s, e_t>, read from the tables at diagonal profiles."""
    tab = inner_product_table(Partition(lam), n, p)
    m = tab.size
    G = linalg.zeros(m, m)
    for t, tt in enumerate(tab.basis):
        D = Profile.diag(tt.weight(p))
        block = tab.entry(D)
        for s in range(m):
            G[s][t] = block[s][t]
    return G


@dataclass
class Orthonormalizer:
    L: Matrix
    delta: list[Scalar]
    R: np.ndarray


def orthonormalizer(G: Matrix) -> Orthonormalizer:
    """G^{-1} = L diag(delta) L^T exactly, and R = L diag(delta)^{1/2} in floats.

    R^T G R = I, so the columns of B R are orthonormal when G = B^T B.
    """
    Ginv = linalg.inverse(G)
    L, delta = linalg.ldl(Ginv)
    R = linalg.to_numpy(L) * np.sqrt(np.array([float(d) for d in delta]))[None, :]
    return Orthonormalizer(L, delta, R)


@lru_cache(maxsize=None)
def _orthonormalizer(lam: Partition, n: int, p: int) -> Orthonormalizer:
    return orthonormalizer(gram(lam, n, p))


def block_of(A: AlgebraElement, tab: InnerProductTable) -> Matrix:
    """Exact block: row s, column t holds <A e_t, e_s>."""
    m = tab.size
    out = linalg.zeros(m, m)
    for D, c in A.coeffs.items():
        M = tab.table.get(D)
        if M is None:
            continue
        for s in range(m):
            for t in range(m):
                v = M[t][s]
                if v:
                    out[s][t] += c * v
    return [[normalize(x) for x in r] for r in out]


def psi_prime(A: AlgebraElement) -> BlockImage:
    """The exact PSD-preserving bijection: one unnormalized block per partition."""
    blocks = {}
    for lam in enum_partitions(A.n, A.p):
        blocks[lam] = block_of(A, inner_product_table(lam, A.n, A.p))
    return BlockImage(blocks, exact=True)


def psi(A: AlgebraElement, exact_image: Optional[BlockImage] = None) -> BlockImage:
    """The *-isomorphism: R^T psi'(A) R per block, in floating point."""
    exact_image = exact_image or psi_prime(A)
    blocks = {}
    for lam, M in exact_image.blocks.items():
        R = _orthonormalizer(lam, A.n, A.p).R
        blocks[lam] = R.T @ linalg.to_numpy(M) @ R
    return BlockImage(blocks, exact=False)


def psi_prime_basis(D: Profile) -> BlockImage:
    return psi_prime(AlgebraElement.basis(D))


def block_sizes(n: int, p: int) -> dict[Partition, int]:
    return {lam: len(enum_ssyt(lam, p)) for lam in enum_partitions(n, p)}


def specht_dimension(lam) -> int:
    """Number of standard tableaux of shape lam (hook length formula)."""
    lam = Partition(lam)
    n = lam.n
    cols = [sum(1 for x in lam if x > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, length in enumerate(lam):
        for j in range(length):
            hooks *= (length - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(n) // hooks
