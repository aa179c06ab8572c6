"""JSON field documents: ingestion with schema checks, and canonical emission."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..exact_linalg import FgAbGroup, IntMatrix, LinalgError
from .core import FieldError, FieldPresentation, IntegralCell

__all__ = ["load_field", "load_field_file", "field_to_document", "dump_field"]


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise FieldError(f"schema: missing key {where}.{key}")
    val = obj[key]
    if kind is int and isinstance(val, bool):
        raise FieldError(f"schema: {where}.{key} must be an integer")
    if not isinstance(val, kind):
        raise FieldError(f"schema: {where}.{key} has type {type(val).__name__}")
    return val


def _bitmask(vec, n, where):
    if not isinstance(vec, list) or len(vec) != n or any(v not in (0, 1) or isinstance(v, bool) for v in vec):
        raise FieldError(f"schema: {where} must be a 0/1 list of length {n}")
    return sum(v << k for k, v in enumerate(vec))


def load_field(doc: dict[str, Any]) -> FieldPresentation:
    """Validate a field document and build the presentation."""
    if not isinstance(doc, dict):
        raise FieldError("schema: document must be a JSON object")
    name = _require(doc, "name", str, "")
    N = _require(doc, "truncation", int, "")
    if N < 2:
        raise FieldError(f"truncation {N} too small (need at least 2)")
    milnor = _require(doc, "milnor", dict, "")
    dims = _require(milnor, "dims", list, "milnor")
    if len(dims) != N + 1 or any(not isinstance(d, int) or isinstance(d, bool) or d < 0 for d in dims):
        raise FieldError(f"schema: milnor.dims must list {N + 1} nonnegative integers")
    basis = _require(milnor, "basis", list, "milnor")
    if len(basis) != N + 1 or any(not isinstance(b, list) or not all(isinstance(s, str) for s in b) for b in basis):
        raise FieldError("schema: milnor.basis must be a list of string lists, one per degree")
    rho = _require(milnor, "rho", list, "milnor")
    if dims[1] and len(rho) != dims[1]:
        raise FieldError("schema: milnor.rho must have length dims[1]")
    _bitmask(rho, dims[1], "milnor.rho")
    mult: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
    for k, entry in enumerate(_require(milnor, "mult", list, "milnor")):
        where = f"milnor.mult[{k}]"
        if not isinstance(entry, dict):
            raise FieldError(f"schema: {where} must be an object")
        a = _require(entry, "deg_a", int, where)
        b = _require(entry, "deg_b", int, where)
        if a < 1 or b < 1 or a + b > N:
            raise FieldError(f"schema: {where} degrees ({a},{b}) outside 1 ≤ a,b, a+b ≤ {N}")
        table = _require(entry, "table", list, where)
        if len(table) != dims[a] or any(not isinstance(r, list) or len(r) != dims[b] for r in table):
            raise FieldError(f"schema: {where}.table must be {dims[a]}×{dims[b]}×{dims[a + b]}")
        t = tuple(
            tuple(_bitmask(cell, dims[a + b], f"{where}.table[{i}][{j}]") for j, cell in enumerate(row))
            for i, row in enumerate(table)
        )
        if (a, b) in mult:
            raise FieldError(f"schema: duplicate mult entry ({a},{b})")
        mult[(a, b)] = t
    # fill the transposed tables so that commutativity is checked, not assumed
    for (a, b), t in list(mult.items()):
        if (b, a) not in mult:
            mult[(b, a)] = tuple(tuple(t[i][j] for i in range(dims[a])) for j in range(dims[b]))
    integral: dict[tuple[int, int], IntegralCell] = {}
    zero_cells: set[tuple[int, int]] = set()
    bs = False
    if "integral" in doc:
        idoc = _require(doc, "integral", dict, "")
        for k, c in enumerate(idoc.get("cells", [])):
            where = f"integral.cells[{k}]"
            if not isinstance(c, dict):
                raise FieldError(f"schema: {where} must be an object")
            p = _require(c, "p", int, where)
            q = _require(c, "q", int, where)
            free = _require(c, "free_rank", int, where)
            tors = _require(c, "torsion", list, where)
            pr = _require(c, "pr_matrix", list, where)
            div = _require(c, "divisible", bool, where)
            try:
                group = FgAbGroup(free, tuple(tors))
                prm = IntMatrix.from_rows(pr, group.ngens)
            except (LinalgError, TypeError, ValueError) as exc:
                raise FieldError(f"schema: {where}: {exc}") from exc
            if (p, q) in integral:
                raise FieldError(f"schema: duplicate integral cell ({p},{q})")
            integral[(p, q)] = IntegralCell(p, q, group, prm, div)
        flags = idoc.get("flags", {})
        if not isinstance(flags, dict):
            raise FieldError("schema: integral.flags must be an object")
        bs = bool(flags.get("beilinson_soule", False))
        for pq in flags.get("zero_cells", []):
            if not (isinstance(pq, list) and len(pq) == 2 and all(isinstance(v, int) for v in pq)):
                raise FieldError("schema: zero_cells entries must be [p, q] pairs")
            zero_cells.add((pq[0], pq[1]))
    return FieldPresentation(
        name,
        N,
        tuple(dims),
        tuple(tuple(b) for b in basis),
        tuple(rho),
        mult,
        integral,
        bs,
        frozenset(zero_cells),
    )


def _unbits(word: int, n: int) -> list[int]:
    return [(word >> k) & 1 for k in range(n)]


def field_to_document(F: FieldPresentation) -> dict[str, Any]:
    """Canonical document: mult listed for a ≤ b only, cells and zero cells sorted."""
    mult = []
    for (a, b) in sorted(F.mult):
        if a > b:
            continue
        t = F.mult[(a, b)]
        mult.append(
            {
                "deg_a": a,
                "deg_b": b,
                "table": [[_unbits(v, F.dims[a + b]) for v in row] for row in t],
            }
        )
    cells = []
    for (p, q) in sorted(F.integral, key=lambda k: (k[1], k[0])):
        c = F.integral[(p, q)]
        cells.append(
            {
                "p": p,
                "q": q,
                "free_rank": c.group.free_rank,
                "torsion": list(c.group.torsion),
                "pr_matrix": c.pr.to_rows(),
                "divisible": c.divisible,
            }
        )
    return {
        "name": F.name,
        "truncation": F.truncation,
        "milnor": {
            "dims": list(F.dims),
            "basis": [list(b) for b in F.basis],
            "rho": list(F.rho),
            "mult": mult,
        },
        "integral": {
            "cells": cells,
            "flags": {
                "beilinson_soule": F.beilinson_soule,
                "zero_cells": [list(pq) for pq in sorted(F.zero_cells, key=lambda k: (k[1], k[0]))],
            },
        },
    }


def dump_field(F: FieldPresentation) -> str:
    return json.dumps(field_to_document(F), indent=1, ensure_ascii=False) + "\n"


def load_field_file(path: str | Path) -> FieldPresentation:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FieldError(f"cannot read field document {path}: {exc}") from exc
    return load_field(doc)
