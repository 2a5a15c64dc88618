import itertools
from math import comb

import numpy as np
import pytest

from symblock import linalg
from symblock.algebra import AlgebraElement
from symblock.blockdiag import inner_product_table, psi, psi_prime
from symblock.combinatorics import Profile, compositions
from symblock.general import GeneralElement, compose_blockdiag, y_coefficients
from symblock.scalars import Quad, binom
from symblock.terwilliger import (
    binary_beta,
    binary_beta_schrijver,
    binary_blockdiag,
    binary_index_of,
    binary_indices,
    binary_profile,
    binary_tfold_base,
    hamming_distance_element,
    krawtchouk,
    nonbinary_base,
    nonbinary_basis,
    nonbinary_psi,
    nonbinary_psi_as_y,
)


def block_labels(n, k):
    lam = (n - k, k) if k else (n,)
    return lam, [t.weight(2)[1] for t in inner_product_table(lam, n, 2).basis]


def test_binary_profile_examples():
    n = 5
    assert binary_profile(0, 0, 0, n) == Profile.of([[n, 0], [0, 0]])
    for i in range(n + 1):
        assert binary_profile(i, i, i, n) == Profile.diag((n - i, i))
    assert len(binary_indices(4)) == 35 == comb(7, 3)
    for i, j, t in binary_indices(4):
        assert binary_index_of(binary_profile(i, j, t, 4)) == (i, j, t)
    with pytest.raises(ValueError):
        binary_profile(1, 1, 2, 4)
    with pytest.raises(ValueError):
        binary_profile(3, 3, 1, 4)


def valid_beta_indices(n):
    for i, j, t in binary_indices(n):
        for k in range(n // 2 + 1):
            if k <= min(i, j) and max(i, j) <= n - k:
                yield i, j, k, t


def test_beta_k0_collapse():
    for n in range(0, 8):
        for i, j, k, t in valid_beta_indices(n):
            if k == 0:
                assert binary_beta(i, j, 0, t, n) == binom(n, i) * binom(n - i, j - t) * binom(i, t)


@pytest.mark.parametrize("n", range(0, 8))
def test_beta_two_formulas_agree(n):
    for i, j, k, t in valid_beta_indices(n):
        assert binary_beta(i, j, k, t, n) == binary_beta_schrijver(i, j, k, t, n)


def test_beta_hand_triples_n6():
    # evaluated by hand from both sums
    for (i, j, k, t), want in [((2, 3, 1, 1), 0), ((3, 3, 2, 2), -2), ((1, 2, 0, 0), 60), ((1, 1, 1, 0), -1)]:
        assert binary_beta(i, j, k, t, 6) == binary_beta_schrijver(i, j, k, t, 6) == want


def test_beta_diagonal_norm():
    for n in range(0, 9):
        for i in range(n + 1):
            for k in range(min(i, n - i) + 1):
                assert binary_beta(i, i, k, i, n) == binom(n - 2 * k, i - k)


def test_beta_rejects_bad_index():
    with pytest.raises(ValueError):
        binary_beta(0, 1, 1, 0, 4)
    with pytest.raises(ValueError):
        binary_beta_schrijver(2, 2, 3, 1, 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_binary_blockdiag_matches_generic_psi(n):
    numeric = binary_blockdiag(n)
    exact = binary_blockdiag(n, exact=True)
    for (i, j, t), blocks in numeric.items():
        A = AlgebraElement.basis(binary_profile(i, j, t, n))
        generic = psi(A).blocks
        generic_exact = psi_prime(A).blocks
        for k, M in blocks.items():
            lam, labels = block_labels(n, k)
            order = [label - k for label in labels]
            reordered = M[np.ix_(order, order)]
            assert np.abs(reordered - generic[lam]).max() <= 1e-9
            for r, a in enumerate(order):
                for c, b in enumerate(order):
                    assert generic_exact[lam][r][c] == 2 ** k * exact[(i, j, t)][k][a][b]


def test_binary_identity_maps_to_identity():
    for n in range(0, 8):
        image = binary_blockdiag(n)
        for k in range(n // 2 + 1):
            total = sum(image[(i, i, i)][k] for i in range(n + 1))
            assert np.abs(total - np.eye(n - 2 * k + 1)).max() <= 1e-10


def test_binary_identity_component_example():
    n = 4
    image = binary_blockdiag(n, exact=True)[(0, 0, 0)]
    assert image[0][0][0] == binary_beta(0, 0, 0, 0, n) == 1
    assert all(linalg.is_zero(image[k]) for k in (1, 2))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_nonbinary_closure_table_against_dense(q):
    basis = nonbinary_basis(q)
    B = nonbinary_base(q)
    dense = [np.array(R) for R in basis]
    for a, b in itertools.product(range(5), repeat=2):
        prod = dense[a] @ dense[b]
        coords = B.coordinates(linalg.matmul(basis[a], basis[b]))
        assert coords is not None
        assert np.array_equal(sum(float(c) * M for c, M in zip(coords, dense)), prod)
    assert sum(dense[k] for k in range(5)).tolist() == np.ones((q, q)).tolist()


def test_nonbinary_base_shape():
    B = nonbinary_base(3)
    assert (B.m, B.s, B.t, B.block_sizes, B.radicand) == (3, 5, 2, (2, 1), 2)
    assert nonbinary_base(5).radicand == 0
    assert nonbinary_base(10).radicand == 0
    with pytest.raises(ValueError):
        nonbinary_base(2)


def test_nonbinary_psi_examples():
    for n in range(0, 5):
        out = nonbinary_psi((n, 0, 0, 0, 0), n, 3)
        assert out == {0: (Profile.of([[n, 0], [0, 0]]), 1)}
    out = nonbinary_psi((0, 1, 0, 0, 0), 1, 3)
    (D, c), = out.values()
    assert isinstance(c, Quad) and c.b == 1 and c.a == 0 and c.d == 2
    for nu in compositions(3, 5):
        odd = (nu[1] + nu[2]) % 2 == 1
        for D, c in nonbinary_psi(nu, 3, 3).values():
            assert isinstance(c, Quad) == odd
            if odd:
                assert c.a == 0 and c.b != 0
    with pytest.raises(ValueError):
        nonbinary_psi((1, 0, 0, 0), 1, 3)
    with pytest.raises(ValueError):
        nonbinary_psi((1, 0, 0, 0, 0), 2, 3)


@pytest.mark.parametrize("q,nmax", [(3, 3), (4, 3), (6, 2)])
def test_nonbinary_psi_agrees_with_pipeline(q, nmax):
    B = nonbinary_base(q)
    for n in range(0, nmax + 1):
        for nu in compositions(n, 5):
            assert nonbinary_psi_as_y(nu, n, q) == y_coefficients(GeneralElement.basis(nu), B)


def test_tfold_structure():
    B1 = binary_tfold_base(1)
    assert (B1.m, B1.s, B1.block_sizes) == (2, 2, (1, 1))
    for n in range(1, 5):
        blocks = compose_blockdiag(hamming_distance_element(1, n), B1)
        assert all(len(M) == 1 for M in blocks.values())
        assert len(blocks) == n + 1
    B2 = binary_tfold_base(2)
    assert (B2.m, B2.s, B2.block_sizes) == (4, 8, (2, 2))
    n = 2
    mus = sorted({mu for mu, _ in compose_blockdiag(GeneralElement.basis((2,) + (0,) * 7), B2)})
    assert mus == sorted((i, n - i) for i in range(n + 1))
    with pytest.raises(ValueError):
        binary_tfold_base(0)


def cube_distance_matrix(k, n):
    pts = list(itertools.product((0, 1), repeat=n))
    return np.array([[int(sum(a != b for a, b in zip(x, y)) == k) for y in pts] for x in pts]), pts


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_krawtchouk_blocks_match_dense_eigenvalues(n):
    B = binary_tfold_base(1)
    for k in range(n + 1):
        A, pts = cube_distance_matrix(k, n)
        blocks = compose_blockdiag(hamming_distance_element(k, n), B)
        for (mu, lams), M in blocks.items():
            w = mu[1]
            chi = np.array([(-1) ** sum(x[:w]) for x in pts])
            eig = (A @ chi)[0] // chi[0]
            assert np.array_equal(A @ chi, eig * chi)
            assert M == [[eig]] == [[krawtchouk(k, w, n)]]
