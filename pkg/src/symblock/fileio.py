"""JSON formats, the on-disk table cache, and schema validation.

Exact scalars are written as ``"num/den"`` strings; elements of Q(sqrt d)
as ``{"value": ..., "sqrt_coeff": ..., "sqrt_of": d}``.  Matrices are
row-major lists, profiles are p x p integer lists.  Output is deterministic:
keys keep insertion order and lists follow the library's enumeration orders.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional

import jsonschema

from . import scalars
from .algebra import AlgebraElement
from .blockdiag import InnerProductTable, inner_product_table
from .combinatorics import Partition, Profile, Tableau
from .general import BaseAlgebra
from .linalg import Matrix

FORMAT_VERSION = 1
CACHE_ENV = "SYMBLOCK_CACHE"


class SchemaError(ValueError):
    """Input does not match its JSON schema; ``pointer`` locates the offending value."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _schema(name: str) -> dict:
    text = resources.files("symblock").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(obj: Any, name: str) -> None:
    validator = jsonschema.Draft202012Validator(_schema(name))
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "".join(f"/{part}" for part in err.absolute_path)
        raise SchemaError(pointer, err.message)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def write_text_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def matrix_to_json(M: Matrix) -> list:
    return [[scalars.to_json(x) for x in row] for row in M]


def matrix_from_json(rows) -> Matrix:
    return [[scalars.from_json(x) for x in row] for row in rows]


def table_to_json(tab: InnerProductTable) -> dict:
    entries = [{"D": D.tolist(), "matrix": matrix_to_json(M)}
               for D, M in sorted(tab.table.items(), key=lambda kv: kv[0].flat)]
    return {
        "lambda": list(tab.lam),
        "size": tab.size,
        "basis": [list(t.word) for t in tab.basis],
        "entries": entries,
    }


def table_from_json(obj: dict, n: int, p: int) -> InnerProductTable:
    lam = Partition(obj["lambda"])
    basis = [Tableau.from_word(lam, w) for w in obj["basis"]]
    table = {Profile.of(e["D"]): matrix_from_json(e["matrix"]) for e in obj["entries"]}
    return InnerProductTable(lam, n, p, basis, table)


def dump_tables(tables, path, n: int, p: int, extra: Optional[dict] = None) -> str:
    """Write per-partition tables as one JSON document; returns the text."""
    doc = {"format_version": FORMAT_VERSION, "p": p, "n": n}
    doc.update(extra or {})
    doc["blocks"] = [table_to_json(tab) for tab in tables]
    text = dumps(doc)
    if path is not None:
        write_text_atomic(path, text)
    return text


def load_tables(path) -> list[InnerProductTable]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [table_from_json(b, doc["n"], doc["p"]) for b in doc["blocks"]]


class TableCache:
    """Inner-product tables on disk, keyed by (p, n, lambda, format version)."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, lam, n: int, p: int) -> Path:
        name = "-".join(map(str, lam)) or "empty"
        return self.root / f"v{FORMAT_VERSION}" / f"p{p}" / f"n{n}" / f"{name}.json"

    def get(self, lam, n: int, p: int) -> Optional[InnerProductTable]:
        path = self.path(lam, n, p)
        if not path.exists():
            return None
        doc = json.loads(path.read_text(encoding="utf-8"))
        if doc.get("format_version") != FORMAT_VERSION or doc.get("p") != p or doc.get("n") != n:
            return None
        return table_from_json(doc["table"], n, p)

    def put(self, tab: InnerProductTable) -> None:
        doc = {"format_version": FORMAT_VERSION, "p": tab.p, "n": tab.n, "table": table_to_json(tab)}
        write_text_atomic(self.path(tab.lam, tab.n, tab.p), dumps(doc))

    def table(self, lam, n: int, p: int) -> InnerProductTable:
        got = self.get(lam, n, p)
        if got is None:
            got = inner_product_table(Partition(lam), n, p)
            self.put(got)
        return got


def default_cache() -> Optional[TableCache]:
    root = os.environ.get(CACHE_ENV)
    return TableCache(root) if root else None


def base_algebra_to_json(B: BaseAlgebra) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "m": B.m,
        "basis": [matrix_to_json(R) for R in B.basis],
        "blocks": [[matrix_to_json(M) for M in mats] for mats in B.blocks],
    }


def base_algebra_from_json(obj: dict) -> BaseAlgebra:
    validate(obj, "base_algebra")
    B = BaseAlgebra(obj["m"], [matrix_from_json(R) for R in obj["basis"]],
                    [[matrix_from_json(M) for M in mats] for mats in obj["blocks"]])
    for k, R in enumerate(B.basis):
        if len(R) != B.m or any(len(r) != B.m for r in R):
            raise SchemaError(f"/basis/{k}", f"expected a {B.m}x{B.m} matrix")
    for i, mats in enumerate(B.blocks):
        if len(mats) != B.s:
            raise SchemaError(f"/blocks/{i}", f"expected {B.s} images, one per basis matrix")
    return B


def load_base_algebra(path) -> BaseAlgebra:
    return base_algebra_from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def dump_base_algebra(B: BaseAlgebra, path) -> None:
    write_text_atomic(path, dumps(base_algebra_to_json(B)))


def element_to_json(A: AlgebraElement) -> list:
    return [{"D": D.tolist(), "value": scalars.to_json(c)}
            for D, c in sorted(A.coeffs.items(), key=lambda kv: kv[0].flat)]


def element_from_json(items, n: int, p: int, where: str) -> AlgebraElement:
    coeffs: dict[Profile, Any] = {}
    for k, item in enumerate(items):
        rows = item["D"]
        if len(rows) != p or any(len(r) != p for r in rows):
            raise SchemaError(f"{where}/{k}/D", f"expected a {p}x{p} profile")
        D = Profile.of(rows)
        if D.n != n:
            raise SchemaError(f"{where}/{k}/D", f"profile entries sum to {D.n}, expected {n}")
        coeffs[D] = coeffs.get(D, 0) + scalars.from_json(item["value"])
    return AlgebraElement(n, p, coeffs)


@dataclass
class SdpProgram:
    """maximize (or minimize) <C, X> s.t. <A_i, X> (=, <=, >=) b_i, X PSD, X in the algebra."""

    n: int
    p: int
    objective: AlgebraElement
    constraints: list[tuple[AlgebraElement, str, Fraction]]
    sense: str = "max"


_RELATIONS = {"=": "=", "<=": "<=", ">=": ">=", "≤": "<=", "≥": ">="}


def program_from_json(obj: dict) -> SdpProgram:
    validate(obj, "sdp_program")
    n, p = obj["n"], obj["p"]
    objective = element_from_json(obj["objective"], n, p, "/objective")
    constraints = []
    for k, con in enumerate(obj.get("constraints", [])):
        A = element_from_json(con["coeffs"], n, p, f"/constraints/{k}/coeffs")
        constraints.append((A, _RELATIONS[con["relation"]], Fraction(str(con["rhs"]))))
    return SdpProgram(n, p, objective, constraints, obj.get("sense", "max"))


def program_to_json(prog: SdpProgram) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": prog.n,
        "p": prog.p,
        "sense": prog.sense,
        "objective": element_to_json(prog.objective),
        "constraints": [{"coeffs": element_to_json(A), "relation": rel, "rhs": scalars.to_json(b)}
                        for A, rel, b in prog.constraints],
    }


def load_program(path) -> SdpProgram:
    return program_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
