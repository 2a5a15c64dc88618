"""Export an invariant SDP in block-reduced SDPA sparse format.

The program  max <C, X>  s.t.  <A_i, X> = b_i,  X PSD,  X in the algebra
is rewritten in the variable Y = psi'(X), one symmetric block per partition.
Since psi' is a congruence of the *-isomorphism psi, Y is PSD exactly when X
is, and the trace pairing becomes

    <C, X> = sum_lam f_lam <G_lam^{-1} psi'_lam(C) G_lam^{-1}, Y_lam>,

with f_lam the number of standard tableaux of shape lam (the multiplicity of
the block) and G_lam the Gram matrix.  All coefficients are exact rationals
until they are printed.  This is SDPA's dual form
``max <F0, Y> s.t. <Fi, Y> = ci, Y PSD``; inequality rows get slack
variables in a trailing diagonal (LP) block.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import AlgebraElement
from .blockdiag import block_of, gram, inner_product_table, specht_dimension
from .combinatorics import Partition, enum_partitions
from .fileio import SdpProgram, write_text_atomic
from .linalg import Matrix

PRECISION = 17


def _symmetrize(A: AlgebraElement) -> AlgebraElement:
    return (A + A.T) * Fraction(1, 2)


def reduced_blocks(A: AlgebraElement, tables=None) -> dict[Partition, Matrix]:
    """f_lam G^{-1} psi'_lam(A_sym) G^{-1} for each partition, exact."""
    out = {}
    A = _symmetrize(A)
    for lam in enum_partitions(A.n, A.p):
        tab = tables[lam] if tables is not None else inner_product_table(lam, A.n, A.p)
        Ginv = linalg.inverse(gram(lam, A.n, A.p))
        M = block_of(A, tab)
        out[lam] = linalg.scale(linalg.matmul(linalg.matmul(Ginv, M), Ginv), specht_dimension(lam))
    return out


def _fmt(x) -> str:
    return format(float(x), f".{PRECISION}g")


def export_sdpa(prog: SdpProgram, path=None, tables=None) -> str:
    """Write the reduced program; returns the file text (deterministic)."""
    lams = enum_partitions(prog.n, prog.p)
    sizes = [len(inner_product_table(lam, prog.n, prog.p).basis) for lam in lams]
    slacks = [k for k, (_, rel, _) in enumerate(prog.constraints) if rel != "="]

    objective = prog.objective if prog.sense == "max" else -prog.objective
    mats = [reduced_blocks(objective, tables)]
    mats += [reduced_blocks(A, tables) for A, _, _ in prog.constraints]

    lines = [
        f'"symmetry-reduced SDP: n={prog.n} p={prog.p} sense={prog.sense} '
        f'blocks={[list(lam) for lam in lams]}"',
        str(len(prog.constraints)),
        str(len(sizes) + (1 if slacks else 0)),
        " ".join(str(s) for s in sizes) + (f" -{len(slacks)}" if slacks else ""),
        " ".join(_fmt(b) for _, _, b in prog.constraints) if prog.constraints else "",
    ]
    for matno, blocks in enumerate(mats):
        for blkno, lam in enumerate(lams, start=1):
            M = blocks[lam]
            for i in range(len(M)):
                for j in range(i, len(M)):
                    if M[i][j]:
                        lines.append(f"{matno} {blkno} {i + 1} {j + 1} {_fmt(M[i][j])}")
        if matno >= 1 and slacks:
            k = matno - 1
            rel = prog.constraints[k][1]
            if rel != "=":
                pos = slacks.index(k) + 1
                sign = 1 if rel == "<=" else -1
                lines.append(f"{matno} {len(lams) + 1} {pos} {pos} {sign}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        write_text_atomic(path, text)
    return text


def read_sdpa(text: str):
    """Parse SDPA sparse text: (c, block_struct, {matno: {blkno: [(i, j, v)]}})."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and ln[0] not in '"*']
    m = int(rows[0].split()[0])
    nblocks = int(rows[1].split()[0])
    struct = [int(x) for x in rows[2].replace(",", " ").replace("{", " ").replace("}", " ").split()[:nblocks]]
    k = 3
    if m:
        c = [float(x) for x in rows[3].replace(",", " ").split()[:m]]
        k = 4
    else:
        c = []
    entries: dict[int, dict[int, list]] = {}
    for ln in rows[k:]:
        mat, blk, i, j, v = ln.split()[:5]
        entries.setdefault(int(mat), {}).setdefault(int(blk), []).append((int(i), int(j), float(v)))
    return c, struct, entries
