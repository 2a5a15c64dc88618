from math import comb

import numpy as np
import pytest

from symblock import linalg
from symblock.algebra import random_element
from symblock.blockdiag import psi, psi_prime
from symblock.combinatorics import Profile, compositions
from symblock.general import (
    BaseAlgebra,
    GeneralElement,
    SectorProfile,
    compose_blockdiag,
    dense_basis_element,
    dense_element,
    enum_sector_profiles,
    from_profile_element,
    identity_base,
    sectors,
    validate_base_algebra,
    y_coefficients,
)
from symblock.polyring import Poly
from symblock.terwilliger import binary_tfold_base, nonbinary_base


def diagonal_pair():
    """C + C: diagonal 2x2 matrices, phi_1 and phi_2 the two coordinates."""
    E1, E2 = [[1, 0], [0, 0]], [[0, 0], [0, 1]]
    return BaseAlgebra(2, [E1, E2], [[[[1]], [[0]]], [[[0]], [[1]]]])


def test_validation_accepts_known_algebras():
    assert validate_base_algebra(identity_base(2)).ok
    assert validate_base_algebra(identity_base(3)).ok
    assert validate_base_algebra(diagonal_pair()).ok
    for q in (3, 4, 5, 10):
        assert validate_base_algebra(nonbinary_base(q)).ok
    for t in (1, 2, 3):
        assert validate_base_algebra(binary_tfold_base(t)).ok


def first_failure(B):
    report = validate_base_algebra(B)
    assert not report.ok and not report
    assert len(report.failures) == 1
    return report.failures[0].check


def test_validation_failures():
    B = identity_base(2)
    dependent = BaseAlgebra(2, B.basis[:3] + [linalg.add(B.basis[0], B.basis[1])], B.blocks)
    assert first_failure(dependent) == "independence"

    wrong_shape = BaseAlgebra(2, B.basis[:3] + [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]], B.blocks)
    assert first_failure(wrong_shape) == "shape"

    too_few = BaseAlgebra(2, B.basis, [B.blocks[0][:3]])
    assert first_failure(too_few) == "shape"

    # diagonal algebra forced into a 2x2 block: dimension 2 != 4
    D = diagonal_pair()
    assert first_failure(BaseAlgebra(2, D.basis, [[[[1, 0], [0, 0]], [[0, 0], [0, 1]]]])) == "dimension"

    # both coordinates sent to the same block twice: phi not injective
    squashed = BaseAlgebra(2, D.basis, [[[[1]], [[1]]], [[[0]], [[0]]]])
    assert first_failure(squashed) == "injectivity"

    # conjugation by a non-orthogonal matrix is a homomorphism but not a *-map
    S, Sinv = [[1, 1], [0, 1]], [[1, -1], [0, 1]]
    conj = [linalg.matmul(linalg.matmul(S, E), Sinv) for E in B.basis]
    assert first_failure(BaseAlgebra(2, B.basis, [conj])) == "adjoint"

    # swapping the images of E12 and E21 breaks the homomorphism
    swapped = [B.blocks[0][0], B.blocks[0][2], B.blocks[0][1], B.blocks[0][3]]
    assert first_failure(BaseAlgebra(2, B.basis, [swapped])) == "homomorphism"

    # span{I, E12} is closed, but E12 is nilpotent and cannot map to 1
    span = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert first_failure(BaseAlgebra(2, span, [[[[1]], [[0]]], [[[1]], [[1]]]])) == "homomorphism"


def test_nonbinary_phi_products():
    B = nonbinary_base(3)
    one = B.phi([1, 0, 0, 0, 0])
    assert [linalg.matmul(M, M) for M in one] == one


def test_y_coefficients_diagonal_pair():
    B = diagonal_pair()
    for n in range(0, 5):
        for nu in compositions(n, 2):
            y = y_coefficients(GeneralElement.basis(nu), B)
            assert len(y) == 1
            (sp, c), = y.items()
            assert sp.mu == nu and c == 1


def nonbinary_formula(nu, sp, q):
    """[x^nu] x1^a x2^b x3^c (x4 + (q-2) x5)^d (x4 - x5)^w times (q-1)^((b+c)/2), via Poly."""
    (a, b), (c, d) = sp.parts[0].rows
    w = sp.parts[1].rows[0][0]
    x = [Poly.variable(k, 5) for k in range(5)]
    poly = x[0] ** a * x[1] ** b * x[2] ** c * (x[3] + x[4] * (q - 2)) ** d * (x[3] - x[4]) ** w
    return poly.coefficient(nu), b + c


@pytest.mark.parametrize("q", [3, 4, 7])
def test_y_coefficients_nonbinary_closed_form(q):
    from symblock.scalars import sqrt_int
    B = nonbinary_base(q)
    r = sqrt_int(q - 1)
    for n in range(0, 4):
        for nu in compositions(n, 5):
            y = y_coefficients(GeneralElement.basis(nu), B)
            for sp in enum_sector_profiles(n, (2, 1)):
                coeff, power = nonbinary_formula(nu, sp, q)
                want = coeff * r ** power if coeff else 0
                assert y.get(sp, 0) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_composed_map_equals_full_for_identity_base(n):
    B = identity_base(2)
    for _ in range(3):
        A = random_element(n, 2, np.random.default_rng(n))
        composed = compose_blockdiag(from_profile_element(A), B)
        direct = psi_prime(A).blocks
        assert len(composed) == len(direct)
        for ((mu, lams), M) in composed.items():
            assert mu == (n,)
            assert M == direct[lams[0]]


def test_composed_orthonormal_equals_psi():
    n = 3
    A = random_element(n, 2, np.random.default_rng(5))
    composed = compose_blockdiag(from_profile_element(A), identity_base(2), orthonormal=True)
    direct = psi(A).blocks
    for (mu, lams), M in composed.items():
        assert np.allclose(M, direct[lams[0]], atol=1e-10)


def expand_invariant(M, n, B):
    nus = list(compositions(n, B.s))
    basis = np.array([dense_basis_element(nu, B).ravel() for nu in nus]).T
    coef, *_ = np.linalg.lstsq(basis, M.ravel(), rcond=None)
    assert np.allclose(basis @ coef, M.ravel(), atol=1e-8)
    return GeneralElement(n, B.s, {nu: _rationalize(c) for nu, c in zip(nus, coef)})


def _rationalize(c):
    from fractions import Fraction
    return Fraction(c).limit_denominator(10 ** 6)


def random_general(n, s, rng):
    return GeneralElement(n, s, {nu: int(rng.integers(-2, 3)) for nu in compositions(n, s)})


@pytest.mark.parametrize("name,B,ns", [
    ("nonbinary q=3", nonbinary_base(3), [1, 2, 3]),
    ("tfold t=1", binary_tfold_base(1), [2, 3, 4]),
    ("tfold t=2", binary_tfold_base(2), [1, 2]),
])
def test_composed_map_is_multiplicative_against_dense(name, B, ns, rng):
    for n in ns:
        for _ in range(3):
            X, Y = random_general(n, B.s, rng), random_general(n, B.s, rng)
            XY = expand_invariant(dense_element(X, B) @ dense_element(Y, B), n, B)
            bx = compose_blockdiag(X, B, orthonormal=True)
            by = compose_blockdiag(Y, B, orthonormal=True)
            bxy = compose_blockdiag(XY, B, orthonormal=True)
            for key in bxy:
                ref = bx[key] @ by[key]
                assert np.abs(bxy[key] - ref).max() <= 1e-8 * max(1.0, np.abs(ref).max()), (name, n, key)


@pytest.mark.parametrize("B,n", [(nonbinary_base(3), 3), (binary_tfold_base(2), 2), (identity_base(2), 3)])
def test_y_coefficients_injective(B, n):
    nus = list(compositions(n, B.s))
    sps = enum_sector_profiles(n, B.block_sizes)
    rows = []
    for nu in nus:
        y = y_coefficients(GeneralElement.basis(nu), B)
        rows.append([y.get(sp, 0) for sp in sps])
    if B.radicand:
        rows = [[float(v) for v in r] for r in rows]
        assert np.linalg.matrix_rank(np.array(rows)) == len(nus)
    else:
        assert linalg.rank(rows) == len(nus)
    assert len(sps) == len(nus)


@pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (1, 1, 1), (2, 2), (2, 1, 1)])
def test_dimension_bookkeeping(sizes):
    s = sum(k * k for k in sizes)
    for n in range(0, 7):
        lhs = sum(np.prod([comb(mi + k * k - 1, k * k - 1) for mi, k in zip(mu, sizes)])
                  for mu in sectors(n, len(sizes)))
        assert lhs == comb(n + s - 1, s - 1)
        if n <= 4:
            assert len(enum_sector_profiles(n, sizes)) == lhs


def test_hermitian_preservation_nonbinary():
    # the basis involution swaps B_2 and B_3
    B = nonbinary_base(3)
    rng = np.random.default_rng(3)
    n = 3
    coeffs = {}
    for nu in compositions(n, 5):
        mirror = (nu[0], nu[2], nu[1], nu[3], nu[4])
        if mirror in coeffs:
            coeffs[nu] = coeffs[mirror]
        else:
            coeffs[nu] = int(rng.integers(-3, 4))
    blocks = compose_blockdiag(GeneralElement(n, 5, coeffs), B)
    for M in blocks.values():
        assert M == linalg.transpose(M)


def test_sector_layout():
    assert sectors(2, 2) == [(2, 0), (1, 1), (0, 2)]
    B = nonbinary_base(3)
    keys = list(compose_blockdiag(GeneralElement.basis((1, 0, 0, 0, 1)), B))
    for mu, lams in keys:
        w = mu[1]
        assert lams[1] == ((w,) if w else ())
        assert sum(lams[0]) == mu[0] and len(lams[0]) <= 2
    with pytest.raises(ValueError):
        SectorProfile((2,), (Profile.of([[1]]),))
    with pytest.raises(ValueError):
        y_coefficients(GeneralElement.basis((1, 0)), B)
