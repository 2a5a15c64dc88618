"""Symmetrized tensor powers of an arbitrary matrix *-algebra.

Input is a base algebra B with basis R_1..R_s and a block diagonalization
phi = phi_1 + ... + phi_t into full matrix algebras M_{p_i}.  An element of
(B^{(x)n})^{S_n} is written in the basis R_nu (nu a weak composition of n
into s parts).  :func:`y_coefficients` re-expresses it in the basis
tensor_i A_{D_i} of the direct sum over sectors mu, and
:func:`compose_blockdiag` finishes with the per-factor block
diagonalizations from :mod:`symblock.blockdiag`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .algebra import AlgebraElement
from .blockdiag import _orthonormalizer, block_of, inner_product_table
from .combinatorics import Partition, Profile, compositions, enum_partitions, enum_profiles
from .linalg import Matrix
from .polyring import Poly
from .scalars import Scalar, normalize, radicand


@dataclass
class BaseAlgebra:
    """basis[j] is the m x m matrix R_{j+1}; blocks[i][j] is phi_{i+1}(R_{j+1})."""

    m: int
    basis: list[Matrix]
    blocks: list[list[Matrix]]

    @property
    def s(self) -> int:
        return len(self.basis)

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b[0]) if b else 0 for b in self.blocks)

    @property
    def radicand(self) -> int:
        ds = {radicand(x) for mats in [self.basis] + self.blocks for M in mats for r in M for x in r}
        ds.discard(0)
        if len(ds) > 1:
            raise ValueError(f"entries from several quadratic fields: {sorted(ds)}")
        return ds.pop() if ds else 0

    def phi(self, coeffs: Sequence[Scalar]) -> list[Matrix]:
        """phi(sum_j coeffs[j] R_j), block by block."""
        out = []
        for mats in self.blocks:
            k = len(mats[0])
            acc = linalg.zeros(k, k)
            for c, M in zip(coeffs, mats):
                if c:
                    acc = linalg.add(acc, linalg.scale(M, c))
            out.append(acc)
        return out

    def coordinates(self, M: Matrix) -> Optional[list[Scalar]]:
        """Coefficients of M in the basis, or None if M is outside the span."""
        A = [[R[i][j] for R in self.basis] for i in range(self.m) for j in range(self.m)]
        b = [M[i][j] for i in range(self.m) for j in range(self.m)]
        return linalg.solve(A, b)


@dataclass
class Failure:
    check: str
    detail: str


@dataclass
class ValidationReport:
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def validate_base_algebra(B: BaseAlgebra) -> ValidationReport:
    """Check shapes, independence, dimension, injectivity, closure, the homomorphism and *-properties.

    Stops at the first failing check.
    """
    report = ValidationReport()
    fail = report.failures.append

    for j, R in enumerate(B.basis):
        if len(R) != B.m or any(len(r) != B.m for r in R):
            fail(Failure("shape", f"R_{j + 1} is not {B.m}x{B.m}"))
            return report
    for i, mats in enumerate(B.blocks):
        if len(mats) != B.s:
            fail(Failure("shape", f"block {i + 1} lists {len(mats)} images for {B.s} basis elements"))
            return report
        k = len(mats[0])
        if any(len(M) != k or any(len(r) != k for r in M) for M in mats):
            fail(Failure("shape", f"block {i + 1} images are not all {k}x{k}"))
            return report

    flat = [[x for r in R for x in r] for R in B.basis]
    rk = linalg.rank(flat)
    if rk != B.s:
        fail(Failure("independence", f"basis has rank {rk}, expected {B.s}"))
        return report

    dim = sum(k * k for k in B.block_sizes)
    if dim != B.s:
        fail(Failure("dimension", f"sum of squared block sizes is {dim}, basis has {B.s} elements"))
        return report

    images = [[x for mats in B.blocks for r in mats[j] for x in r] for j in range(B.s)]
    rk = linalg.rank(images)
    if rk != B.s:
        fail(Failure("injectivity", f"phi has rank {rk} on a basis of size {B.s}"))
        return report

    for j, k in itertools.product(range(B.s), repeat=2):
        prod = linalg.matmul(B.basis[j], B.basis[k])
        coords = B.coordinates(prod)
        if coords is None:
            fail(Failure("closure", f"R_{j + 1} R_{k + 1} is not in the span of the basis"))
            return report
        lhs = B.phi(coords)
        for i, mats in enumerate(B.blocks):
            rhs = linalg.matmul(mats[j], mats[k])
            if lhs[i] != rhs:
                fail(Failure("homomorphism",
                             f"phi_{i + 1}(R_{j + 1} R_{k + 1}) != phi_{i + 1}(R_{j + 1}) phi_{i + 1}(R_{k + 1})"))
                return report

    for j, R in enumerate(B.basis):
        coords = B.coordinates(linalg.transpose(R))
        if coords is None:
            fail(Failure("adjoint", f"R_{j + 1}^T is not in the span of the basis"))
            return report
        lhs = B.phi(coords)
        for i, mats in enumerate(B.blocks):
            if lhs[i] != linalg.transpose(mats[j]):
                fail(Failure("adjoint", f"phi_{i + 1}(R_{j + 1}^T) != phi_{i + 1}(R_{j + 1})^T"))
                return report
    return report


@dataclass(eq=False)
class GeneralElement:
    """sum_nu coeffs[nu] R_nu, with R_nu the sum of all tensor words of weight nu."""

    n: int
    s: int
    coeffs: dict[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for nu, c in self.coeffs.items():
            nu = tuple(nu)
            if len(nu) != self.s or sum(nu) != self.n or min(nu, default=0) < 0:
                raise ValueError(f"{nu} is not a weight of n={self.n} into {self.s} parts")
            if c:
                clean[nu] = normalize(c)
        self.coeffs = clean

    @classmethod
    def basis(cls, nu: Sequence[int]) -> "GeneralElement":
        nu = tuple(nu)
        return cls(sum(nu), len(nu), {nu: 1})

    def __eq__(self, other):
        if not isinstance(other, GeneralElement):
            return NotImplemented
        return (self.n, self.s, self.coeffs) == (other.n, other.s, other.coeffs)


@dataclass(frozen=True)
class SectorProfile:
    mu: tuple[int, ...]
    parts: tuple[Profile, ...]

    def __post_init__(self):
        if tuple(D.n for D in self.parts) != self.mu:
            raise ValueError(f"profile totals {[D.n for D in self.parts]} do not match sector {self.mu}")


def sectors(n: int, t: int) -> list[tuple[int, ...]]:
    """Weak compositions of n into t parts, decreasing lexicographic."""
    return sorted(compositions(n, t), reverse=True)


def enum_sector_profiles(n: int, block_sizes: Sequence[int]) -> list[SectorProfile]:
    out = []
    for mu in sectors(n, len(block_sizes)):
        per = [enum_profiles(mi, pi) for mi, pi in zip(mu, block_sizes)]
        for combo in itertools.product(*per):
            out.append(SectorProfile(mu, tuple(combo)))
    return out


def _linear_forms(B: BaseAlgebra) -> list[list[list[Poly]]]:
    # forms[i][k][l] = sum_j x_j phi_i(R_j)[k][l]
    forms = []
    for mats in B.blocks:
        size = len(mats[0])
        forms.append([[Poly.linear([M[k][l] for M in mats]) for l in range(size)]
                      for k in range(size)])
    return forms


def expansion_polynomial(sp: SectorProfile, forms) -> Poly:
    """prod_i prod_{k,l} (sum_j x_j phi_i(R_j)[k,l]) ^ (D_i)[k,l]."""
    result = None
    for D, block_forms in zip(sp.parts, forms):
        for k, row in enumerate(D.rows):
            for l, e in enumerate(row):
                if e:
                    factor = block_forms[k][l] ** e
                    result = factor if result is None else result * factor
    if result is None:
        s = forms[0][0][0].nvars
        result = Poly.constant(1, s)
    return result


def y_coefficients(A: GeneralElement, B: BaseAlgebra) -> dict[SectorProfile, Scalar]:
    """Coordinates of phi^{(x)n}(A) in the basis tensor_i A_{D_i}; zeros are omitted."""
    if A.s != B.s:
        raise ValueError(f"element has {A.s} coordinates, base algebra has {B.s}")
    forms = _linear_forms(B)
    out: dict[SectorProfile, Scalar] = {}
    for sp in enum_sector_profiles(A.n, B.block_sizes):
        poly = expansion_polynomial(sp, forms)
        acc = 0
        for nu, c in A.coeffs.items():
            v = poly.coefficient(nu)
            if v:
                acc = acc + c * v
        if acc:
            out[sp] = normalize(acc)
    return out


def partition_tuples(mu: Sequence[int], block_sizes: Sequence[int]) -> list[tuple[Partition, ...]]:
    per = [enum_partitions(mi, pi) for mi, pi in zip(mu, block_sizes)]
    return list(itertools.product(*per))


def compose_blockdiag(A: GeneralElement, B: BaseAlgebra, orthonormal: bool = False,
                      y: Optional[dict] = None) -> dict:
    """Blocks keyed by (mu, (lam_1, ..., lam_t)).

    Each block is sum_D y_D kron_i psi'_{lam_i}(A_{D_i}), exact; with
    ``orthonormal`` every factor is replaced by its orthonormalized image and
    the result is a numpy array.
    """
    y = y_coefficients(A, B) if y is None else y
    sizes = B.block_sizes
    by_sector: dict[tuple[int, ...], list] = {}
    for sp, c in y.items():
        by_sector.setdefault(sp.mu, []).append((sp, c))
    out = {}
    for mu in sectors(A.n, B.t):
        terms = by_sector.get(mu, [])
        for lams in partition_tuples(mu, sizes):
            tabs = [inner_product_table(lam, mi, pi) for lam, mi, pi in zip(lams, mu, sizes)]
            dims = [tab.size for tab in tabs]
            total = int(np.prod(dims)) if dims else 1
            if orthonormal:
                Rs = [_orthonormalizer(lam, mi, pi).R for lam, mi, pi in zip(lams, mu, sizes)]
                acc = np.zeros((total, total))
            else:
                acc = linalg.zeros(total, total)
            for sp, c in terms:
                blocks = [block_of(AlgebraElement.basis(D), tab) for D, tab in zip(sp.parts, tabs)]
                if orthonormal:
                    factor = np.ones((1, 1))
                    for blk, R in zip(blocks, Rs):
                        factor = np.kron(factor, R.T @ linalg.to_numpy(blk) @ R)
                    acc = acc + float(c) * factor
                else:
                    factor = [[1]]
                    for blk in blocks:
                        factor = linalg.kron(factor, blk)
                    acc = linalg.add(acc, linalg.scale(factor, c))
            out[(mu, lams)] = acc
    return out


def identity_base(p: int) -> BaseAlgebra:
    """M_p with the matrix units E_{k,l} (row-major) and phi the identity."""
    units = []
    for k in range(p):
        for l in range(p):
            E = linalg.zeros(p, p)
            E[k][l] = 1
            units.append(E)
    return BaseAlgebra(p, units, [units])


def from_profile_element(A: AlgebraElement) -> GeneralElement:
    """Rewrite an element of the M_p-case in the R_nu basis of :func:`identity_base`."""
    return GeneralElement(A.n, A.p * A.p, {D.flat: c for D, c in A.coeffs.items()})


def dense_basis_element(nu: Sequence[int], B: BaseAlgebra) -> np.ndarray:
    """R_nu = sum over words x in [s]^n of weight nu of R_{x_1} (x) ... (x) R_{x_n}; float."""
    n = sum(nu)
    mats = [linalg.to_numpy(R) for R in B.basis]
    out = np.zeros((B.m ** n, B.m ** n))
    for word in set(itertools.permutations([j for j, k in enumerate(nu) for _ in range(k)])):
        acc = np.ones((1, 1))
        for j in word:
            acc = np.kron(acc, mats[j])
        out += acc
    return out


def dense_element(A: GeneralElement, B: BaseAlgebra) -> np.ndarray:
    out = np.zeros((B.m ** A.n, B.m ** A.n))
    for nu, c in A.coeffs.items():
        out += float(c) * dense_basis_element(nu, B)
    return out
