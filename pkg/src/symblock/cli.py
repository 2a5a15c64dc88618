"""Command-line entry point: ``symblock <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import fileio, scalars
from .algebra import DEFAULT_CAP, OracleCapExceeded
from .blockdiag import _orthonormalizer, gram, inner_product_table
from .combinatorics import Partition, compositions, enum_partitions
from .fileio import SchemaError, TableCache
from .general import (
    GeneralElement,
    compose_blockdiag,
    partition_tuples,
    sectors,
    validate_base_algebra,
)
from .linalg import to_numpy

log = logging.getLogger("symblock")


def _float_matrix(M) -> list:
    return [[float(format(float(x), ".17g")) for x in row] for row in np.asarray(M)]


def _emit(text: str, out) -> None:
    if out:
        fileio.write_text_atomic(out, text)
    else:
        sys.stdout.write(text)


def _tables(args, n: int, p: int):
    lams = enum_partitions(n, p)
    cache = TableCache(args.cache) if args.cache else fileio.default_cache()
    if cache is not None:
        return [cache.table(lam, n, p) for lam in lams]
    if args.threads > 1:
        from .blockdiag import inner_product_tables
        return list(inner_product_tables(n, p, threads=args.threads).values())
    return [inner_product_table(lam, n, p) for lam in lams]


def _check_orthonormal(lam, n: int, p: int, tol: float) -> float:
    R = _orthonormalizer(Partition(lam), n, p).R
    G = to_numpy(gram(lam, n, p))
    err = float(np.abs(R.T @ G @ R - np.eye(len(R))).max()) if len(R) else 0.0
    if err > tol:
        raise ArithmeticError(f"R^T G R deviates from I by {err:.3e} > --tol {tol:g} for lambda={tuple(lam)}")
    return err


def cmd_blockdiag_full(args) -> int:
    tables = _tables(args, args.n, args.p)
    doc = {"format_version": fileio.FORMAT_VERSION, "p": args.p, "n": args.n,
           "orthonormal": bool(args.orthonormal),
           "convention": "entries[D].matrix[s][t] = <A_D e_s, e_t>; the block of A_D is its transpose",
           "blocks": []}
    for tab in tables:
        block = fileio.table_to_json(tab)
        if args.orthonormal:
            _check_orthonormal(tab.lam, args.n, args.p, args.tol)
            R = _orthonormalizer(tab.lam, args.n, args.p).R
            block["R"] = _float_matrix(R)
            for entry, (D, M) in zip(block["entries"], sorted(tab.table.items(), key=lambda kv: kv[0].flat)):
                entry["psi"] = _float_matrix(R.T @ to_numpy(M).T @ R)
        doc["blocks"].append(block)
    _emit(fileio.dumps(doc), args.out)
    return 0


def cmd_blockdiag_general(args) -> int:
    B = fileio.load_base_algebra(args.base)
    report = validate_base_algebra(B)
    if not report.ok:
        for f in report.failures:
            print(f"invalid base algebra [{f.check}]: {f.detail}", file=sys.stderr)
        return 2
    sizes = B.block_sizes
    layout = []
    for mu in sectors(args.n, B.t):
        for lams in partition_tuples(mu, sizes):
            if args.orthonormal:
                for lam, mi, pi in zip(lams, mu, sizes):
                    _check_orthonormal(lam, mi, pi, args.tol)
            layout.append({"mu": list(mu), "lambdas": [list(l) for l in lams]})
    images = []
    for nu in compositions(args.n, B.s):
        blocks = compose_blockdiag(GeneralElement.basis(nu), B, orthonormal=args.orthonormal)
        items = []
        for (mu, lams), M in blocks.items():
            if args.orthonormal:
                if not np.any(M):
                    continue
                mat = _float_matrix(M)
            else:
                if not any(x for r in M for x in r):
                    continue
                mat = fileio.matrix_to_json(M)
            items.append({"mu": list(mu), "lambdas": [list(l) for l in lams], "matrix": mat})
        images.append({"nu": list(nu), "blocks": items})
    doc = {"format_version": fileio.FORMAT_VERSION, "n": args.n, "s": B.s, "block_sizes": list(sizes),
           "orthonormal": bool(args.orthonormal), "layout": layout, "images": images}
    _emit(fileio.dumps(doc), args.out)
    return 0


def cmd_terwilliger_binary(args) -> int:
    from .terwilliger import binary_beta, binary_indices, binary_profile
    from .scalars import binom
    n = args.n
    rows = []
    for i, j, t in binary_indices(n):
        entries = []
        for k in range(n // 2 + 1):
            if k <= min(i, j) and max(i, j) <= n - k:
                beta = binary_beta(i, j, k, t, n)
                if beta:
                    norm = binom(n - 2 * k, i - k) * binom(n - 2 * k, j - k)
                    entries.append({"k": k, "row": j, "col": i, "beta": beta,
                                    "psi_prime": 2 ** k * beta,
                                    "psi": float(format(beta / norm ** 0.5, ".17g"))})
        rows.append({"i": i, "j": j, "t": t, "D": binary_profile(i, j, t, n).tolist(), "entries": entries})
    doc = {"n": n, "convention": "A^t_{i,j} has its block-k entry at row j, column i (labels k..n-k); "
                                 "psi = beta / sqrt(C(n-2k,i-k) C(n-2k,j-k)), psi' = 2^k beta",
           "images": rows}
    _emit(fileio.dumps(doc), args.out)
    return 0


def cmd_terwilliger_nonbinary(args) -> int:
    from .terwilliger import nonbinary_psi
    q, n = args.q, args.n
    if q < 3:
        print("error: --q must be at least 3", file=sys.stderr)
        return 2
    images = []
    for nu in compositions(n, 5):
        sect = [{"w": w, "D": D.tolist(), "coefficient": scalars.to_json(c)}
                for w, (D, c) in sorted(nonbinary_psi(nu, n, q).items())]
        images.append({"nu": list(nu), "sectors": sect})
    doc = {"q": q, "n": n, "sqrt_of": scalars.squarefree_split(q - 1)[1], "images": images}
    _emit(fileio.dumps(doc), args.out)
    return 0


def cmd_beta(args) -> int:
    from .terwilliger import binary_beta, binary_beta_schrijver, binary_indices
    fn = binary_beta_schrijver if args.schrijver else binary_beta
    n = args.n
    rows = []
    for i, j, t in binary_indices(n):
        for k in range(n // 2 + 1):
            if k <= min(i, j) and max(i, j) <= n - k:
                rows.append((i, j, k, t, fn(i, j, k, t, n)))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "k", "t", "beta"])
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = fileio.dumps({"n": n, "formula": "schrijver" if args.schrijver else "operator",
                             "beta": [dict(zip("ijkt", r[:4]), beta=r[4]) for r in rows]})
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all
    report = run_all(args.n, args.p, args.cap)
    failed = 0
    for name, problems in report.items():
        status = "ok" if not problems else f"FAIL ({len(problems)})"
        print(f"{name}: {status}")
        for line in problems[:20]:
            print(f"  {line}")
        failed += len(problems)
    return 1 if failed else 0


def cmd_export_sdpa(args) -> int:
    from .sdpa import export_sdpa
    prog = fileio.load_program(args.program)
    export_sdpa(prog, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symblock",
                                     description="Block diagonalization of symmetrized tensor algebras.")
    parser.add_argument("--cache", metavar="DIR",
                        help=f"on-disk table cache (default: ${fileio.CACHE_ENV} if set)")
    parser.add_argument("--tol", type=float, default=1e-12,
                        help="max deviation of R^T G R from I accepted for --orthonormal output")
    parser.add_argument("--threads", type=int, default=1, help="parallel workers for per-partition tables")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    bd = sub.add_parser("blockdiag", help="block diagonalize (M_p)^n or (B)^n")
    bd_sub = bd.add_subparsers(dest="mode", required=True)
    full = bd_sub.add_parser("full", help="inner-product tables for the symmetrized M_p tensor power")
    full.add_argument("--p", type=int, required=True)
    full.add_argument("--n", type=int, required=True)
    full.add_argument("--orthonormal", action="store_true", help="also emit R and orthonormalized blocks")
    full.add_argument("--out")
    full.set_defaults(func=cmd_blockdiag_full)
    gen = bd_sub.add_parser("general", help="compose a given base-algebra block diagonalization")
    gen.add_argument("--base", required=True, help="BaseAlgebra JSON file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--orthonormal", action="store_true")
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_blockdiag_general)

    ter = sub.add_parser("terwilliger", help="Terwilliger algebra closed forms")
    ter_sub = ter.add_subparsers(dest="mode", required=True)
    tb = ter_sub.add_parser("binary")
    tb.add_argument("--n", type=int, required=True)
    tb.add_argument("--out")
    tb.set_defaults(func=cmd_terwilliger_binary)
    tn = ter_sub.add_parser("nonbinary")
    tn.add_argument("--q", type=int, required=True)
    tn.add_argument("--n", type=int, required=True)
    tn.add_argument("--out")
    tn.set_defaults(func=cmd_terwilliger_nonbinary)

    beta = sub.add_parser("beta", help="binary beta table")
    beta.add_argument("--n", type=int, required=True)
    beta.add_argument("--schrijver", action="store_true", help="use the alternating sum over u")
    beta.add_argument("--format", choices=["json", "csv"], default="json")
    beta.add_argument("--out")
    beta.set_defaults(func=cmd_beta)

    ver = sub.add_parser("verify", help="check the sparse calculus against dense oracles")
    ver.add_argument("--p", type=int, required=True)
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max p^n for dense oracles")
    ver.set_defaults(func=cmd_verify)

    exp = sub.add_parser("export", help="export a reduced SDP")
    exp_sub = exp.add_subparsers(dest="mode", required=True)
    sd = exp_sub.add_parser("sdpa")
    sd.add_argument("--program", required=True, help="SdpProgram JSON file")
    sd.add_argument("--out", required=True)
    sd.set_defaults(func=cmd_export_sdpa)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for name in ("n", "p", "q"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.error(f"--{name} must be nonnegative")
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error at {exc}", file=sys.stderr)
        return 2
    except OracleCapExceeded as exc:
        print(f"error: {exc}; raise --cap to allow larger dense checks", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
