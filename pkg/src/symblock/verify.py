"""Check the sparse calculus against dense p^n x p^n oracles."""

from __future__ import annotations

import logging
from math import comb

import numpy as np

from .algebra import (
    DEFAULT_CAP,
    AlgebraElement,
    apply_word,
    brute_force_AD,
    brute_force_et,
    decompose_lower_triangular,
    elementary,
    expand_dense,
    structure_constant,
    weight_idempotent,
)
from .blockdiag import inner_product_table
from .combinatorics import enum_partitions, enum_profiles, enum_ssyt

log = logging.getLogger(__name__)


def check_dimension(n: int, p: int) -> list[str]:
    lhs = sum(len(enum_ssyt(lam, p)) ** 2 for lam in enum_partitions(n, p))
    rhs = comb(n + p * p - 1, p * p - 1)
    return [] if lhs == rhs else [f"dimension: sum m_lam^2 = {lhs} but dim A = {rhs}"]


def check_tables(n: int, p: int, cap: int = DEFAULT_CAP) -> list[str]:
    bad = []
    dense = {D: brute_force_AD(D, cap) for D in enum_profiles(n, p)}
    for lam in enum_partitions(n, p):
        tab = inner_product_table(lam, n, p)
        es = [brute_force_et(t, p, cap) for t in tab.basis]
        for D, AD in dense.items():
            M = tab.entry(D)
            for s, es_ in enumerate(es):
                image = AD @ es_
                for t, et in enumerate(es):
                    want = int(et @ image)
                    if M[s][t] != want:
                        bad.append(f"table {tuple(lam)} D={D.tolist()} (s,t)=({s},{t}): "
                                   f"got {M[s][t]}, oracle {want}")
    return bad


def check_structure_constants(n: int, p: int, cap: int = DEFAULT_CAP) -> list[str]:
    bad = []
    profiles = enum_profiles(n, p)
    dense = {D: brute_force_AD(D, cap) for D in profiles}
    for L in profiles:
        for M in profiles:
            prod = expand_dense(dense[L] @ dense[M], n, p)
            for N in profiles:
                want = prod.coefficient(N)
                got = structure_constant(L, M, N)
                if got != want:
                    bad.append(f"c[{L.tolist()},{M.tolist()}]^{N.tolist()}: got {got}, oracle {want}")
    return bad


def check_elementary_action(n: int, p: int, cap: int = DEFAULT_CAP) -> list[str]:
    """Both product rules for A_{i->j} against dense products."""
    bad = []
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            if i == j:
                continue
            Aij = elementary(i, j, n, p)
            dense_ij = Aij.dense(cap)
            for D in enum_profiles(n, p):
                AD = brute_force_AD(D, cap)
                # A_D A_{i->j}: sum over k with D[k,i] > 0 of (D[k,j]+1) A_{D - E_ki + E_kj}
                right = {}
                for k in range(1, p + 1):
                    E = D.moved((k, i), (k, j))
                    if E is not None:
                        right[E] = right.get(E, 0) + D[k, j] + 1
                left = {}
                for k in range(1, p + 1):
                    E = D.moved((j, k), (i, k))
                    if E is not None:
                        left[E] = left.get(E, 0) + D[i, k] + 1
                got_r = expand_dense(AD @ dense_ij, n, p)
                got_l = expand_dense(dense_ij @ AD, n, p)
                if got_r != AlgebraElement(n, p, right):
                    bad.append(f"A_D A_{{{i}->{j}}} rule fails at D={D.tolist()}")
                if got_l != AlgebraElement(n, p, left):
                    bad.append(f"A_{{{i}->{j}}} A_D rule fails at D={D.tolist()}")
    return bad


def check_decompose(n: int, p: int, cap: int = DEFAULT_CAP) -> list[str]:
    bad = []
    for D in enum_profiles(n, p):
        if not D.is_lower_triangular():
            continue
        word, mu, factor = decompose_lower_triangular(D)
        lhs = apply_word(word, weight_idempotent(mu))
        dense = np.zeros((p ** n, p ** n), dtype=np.int64)
        dense += np.eye(p ** n, dtype=np.int64)
        for i, j in reversed(word):
            dense = elementary(i, j, n, p).dense(cap) @ dense
        dense = dense @ weight_idempotent(mu).dense(cap)
        want = brute_force_AD(D, cap) * factor
        if lhs != AlgebraElement.basis(D) * factor:
            bad.append(f"decompose (sparse) fails at D={D.tolist()}")
        if not np.array_equal(dense.astype(np.int64), want):
            bad.append(f"decompose (dense) fails at D={D.tolist()}")
    return bad


def run_all(n: int, p: int, cap: int = DEFAULT_CAP) -> dict[str, list[str]]:
    checks = {
        "dimension": check_dimension,
        "tables": lambda n, p: check_tables(n, p, cap),
        "structure_constants": lambda n, p: check_structure_constants(n, p, cap),
        "elementary_action": lambda n, p: check_elementary_action(n, p, cap),
        "decompose": lambda n, p: check_decompose(n, p, cap),
    }
    report = {}
    for name, fn in checks.items():
        log.info("running %s for n=%d p=%d", name, n, p)
        report[name] = fn(n, p)
    return report
