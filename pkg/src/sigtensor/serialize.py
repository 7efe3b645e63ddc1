"""JSON and CSV wire formats.

All numbers travel as exact rational strings "p/q" (or "p"); nothing is
ever rounded. Parse failures raise ParseError with a position annotation so
the CLI can report exactly where an input file went wrong.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from io import StringIO
from typing import Any

from .linalg import Subspace, Vector
from .lie import LogSignature
from .ranks import Decomposition, RankCertificate
from .signatures import Path, TruncatedSignature
from .symmetry import SymmetryReport
from .tensors import Tensor
from .words import WordSum


class ParseError(ValueError):
    """Malformed input, with enough position information to locate it."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_rational(text: Any, where: str = "") -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}", where)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", where) from None


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"missing key {key!r}", where)
    return obj[key]


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", path) from None


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- tensors ---------------------------------------------------------------

def tensor_to_json(t: Tensor) -> dict:
    return {"order": t.order, "dim": t.dim, "entries": [format_rational(x) for x in t.entries]}


def tensor_from_json(obj: Any, where: str = "tensor") -> Tensor:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    order = _require(obj, "order", where)
    dim = _require(obj, "dim", where)
    entries = _require(obj, "entries", where)
    if not isinstance(order, int) or not isinstance(dim, int):
        raise ParseError("order and dim must be integers", where)
    if not isinstance(entries, list):
        raise ParseError("entries must be a list", where)
    if dim < 1 or order < 0 or len(entries) != dim**order:
        raise ParseError(f"expected {dim}^{order} entries, got {len(entries)}", where)
    values = [parse_rational(e, f"{where}.entries[{i}]") for i, e in enumerate(entries)]
    return Tensor(order, dim, tuple(values))


# -- vectors and paths -----------------------------------------------------

def vector_to_json(v: Vector) -> list[str]:
    return [format_rational(x) for x in v]


def vector_from_json(obj: Any, where: str) -> Vector:
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a nonempty list of rationals", where)
    return tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(obj))


def path_to_json(p: Path) -> dict:
    return {"dim": p.dim, "increments": [vector_to_json(u) for u in p.increments]}


def path_from_json(obj: Any, where: str = "path") -> Path:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    dim = _require(obj, "dim", where)
    incs = _require(obj, "increments", where)
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("dim must be a positive integer", where)
    if not isinstance(incs, list) or not incs:
        raise ParseError("increments must be a nonempty list", where)
    vectors = [vector_from_json(u, f"{where}.increments[{i}]") for i, u in enumerate(incs)]
    if any(len(u) != dim for u in vectors):
        raise ParseError("every increment must have length dim", where)
    return Path(dim, tuple(vectors))


# -- signatures ------------------------------------------------------------

def signature_to_json(s: TruncatedSignature) -> dict:
    return {
        "dim": s.dim,
        "max_level": s.max_level,
        "levels": [tensor_to_json(s.level(k)) for k in range(0, s.max_level + 1)],
    }


def signature_from_json(obj: Any, where: str = "signature") -> TruncatedSignature:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    dim = _require(obj, "dim", where)
    max_level = _require(obj, "max_level", where)
    levels = _require(obj, "levels", where)
    if not isinstance(levels, list) or len(levels) != max_level + 1:
        raise ParseError("levels must list tensors for 0..max_level", where)
    tensors = [tensor_from_json(t, f"{where}.levels[{k}]") for k, t in enumerate(levels)]
    try:
        return TruncatedSignature(dim, max_level, tuple(tensors))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def log_signature_to_json(l: LogSignature) -> dict:
    return {
        "dim": l.dim,
        "max_level": l.max_level,
        "levels": [tensor_to_json(l.level(k)) for k in range(1, l.max_level + 1)],
    }


def log_signature_from_json(obj: Any, where: str = "log-signature") -> LogSignature:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    dim = _require(obj, "dim", where)
    max_level = _require(obj, "max_level", where)
    levels = _require(obj, "levels", where)
    if not isinstance(levels, list) or len(levels) != max_level:
        raise ParseError("levels must list tensors for 1..max_level", where)
    tensors = [tensor_from_json(t, f"{where}.levels[{k+1}]") for k, t in enumerate(levels)]
    try:
        return LogSignature(dim, max_level, tuple(tensors))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


# -- decompositions and certificates ----------------------------------------

def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "dim": d.dim,
        "order": d.order,
        "terms": [
            {"coeff": format_rational(c), "factors": [vector_to_json(v) for v in factors]}
            for c, factors in d.terms
        ],
    }


def decomposition_from_json(obj: Any, where: str = "decomposition") -> Decomposition:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    dim = _require(obj, "dim", where)
    order = _require(obj, "order", where)
    terms_json = _require(obj, "terms", where)
    if not isinstance(terms_json, list):
        raise ParseError("terms must be a list", where)
    terms = []
    for i, term in enumerate(terms_json):
        tw = f"{where}.terms[{i}]"
        if not isinstance(term, dict):
            raise ParseError("expected an object", tw)
        coeff = parse_rational(_require(term, "coeff", tw), f"{tw}.coeff")
        factors_json = _require(term, "factors", tw)
        if not isinstance(factors_json, list) or len(factors_json) != order:
            raise ParseError(f"expected {order} factors", tw)
        factors = tuple(vector_from_json(v, f"{tw}.factors[{j}]") for j, v in enumerate(factors_json))
        terms.append((coeff, factors))
    try:
        return Decomposition(dim, order, tuple(terms))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def certificate_to_json(c: RankCertificate, include_witness: bool = True) -> dict:
    out: dict[str, Any] = {"lower": c.lower, "upper": c.upper, "status": c.status}
    if include_witness and c.witness is not None:
        out["witness"] = decomposition_to_json(c.witness)
    return out


# -- reports and subspaces ---------------------------------------------------

def subspace_to_json(w: Subspace) -> dict:
    return {
        "ambient_dim": w.ambient_dim,
        "dim": w.dim,
        "basis": [vector_to_json(row) for row in w.basis],
    }


def symmetry_report_to_json(r: SymmetryReport) -> dict:
    return {
        "is_symmetric": r.is_symmetric,
        "is_skew": r.is_skew,
        "partial": sorted(r.partial),
        "witness": [list(pair) for pair in r.witness] if r.witness is not None else None,
    }


def word_sum_to_json(ws: WordSum) -> dict:
    return {str(w): c for w, c in ws.items()}


# -- time series -------------------------------------------------------------

def read_time_series_csv(path: str, has_header: bool = False) -> list[Vector]:
    """One sample per row, d rational columns."""
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc), path) from None
    return parse_time_series_csv(text, has_header=has_header, where=path)


def parse_time_series_csv(text: str, has_header: bool = False, where: str = "csv") -> list[Vector]:
    rows = list(csv.reader(StringIO(text)))
    if has_header and rows:
        rows = rows[1:]
    samples = []
    for r, row in enumerate(rows):
        if not row or all(not cell.strip() for cell in row):
            continue
        samples.append(tuple(parse_rational(cell.strip(), f"{where}:row {r + 1}, column {c + 1}") for c, cell in enumerate(row)))
    if not samples:
        raise ParseError("no samples", where)
    width = len(samples[0])
    if any(len(s) != width for s in samples):
        raise ParseError("rows have inconsistent column counts", where)
    return samples
