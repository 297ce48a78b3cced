"""JSON file formats for algebroid data, sections and endomorphisms.

Indices are 1-based in files and 0-based in the Python objects.  Rationals are
written as strings ("1/2", "-3"); integers are accepted on input too.

    algebroid:    {"rank", "derivations", "metric", "anchor",
                   "structure": [{"i","j","k","c"}], "commutators": [{"a","b","c","e"}],
                   "mode"}
    section:      {"coeffs": ["f", "0", "1/2", "D1 f", ...]}
    endomorphism: {"matrix": [[...], ...]}
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any

from .algebroid.core import ALMOST_LEIBNIZ, PROTO_COURANT, AlgebroidData, Section
from .algebroid.scalar import ScalarSyntaxError, parse_scalar
from .exact import RatMatrix, as_rational, format_rational

__all__ = [
    "FormatError",
    "algebroid_from_json",
    "algebroid_to_json",
    "endomorphism_from_json",
    "endomorphism_to_json",
    "load_json",
    "section_from_json",
    "section_to_json",
]


class FormatError(ValueError):
    """A file or inline document does not follow the expected layout."""


def load_json(source: str) -> Any:
    """Parse ``source`` as inline JSON when it starts with '{', otherwise read it as a path."""
    text = source.strip()
    try:
        if text.startswith("{"):
            return json.loads(text)
        with open(os.path.expanduser(source), encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise FormatError(f"cannot read {source!r}: {exc.strerror}") from None


def _rational(value, where: str) -> Fraction:
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _matrix(rows, where: str) -> RatMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{where} must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise FormatError(f"{where} has rows of different lengths")
    return RatMatrix.from_rows([[_rational(v, f"{where}[{i + 1}][{j + 1}]") for j, v in enumerate(r)]
                                for i, r in enumerate(rows)])


def _index(entry: dict, key: str, bound: int, where: str) -> int:
    v = entry.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= bound:
        raise FormatError(f"{where}: {key!r} must be an integer in 1..{bound}")
    return v - 1


def algebroid_from_json(doc: dict) -> AlgebroidData:
    if not isinstance(doc, dict):
        raise FormatError("algebroid file must hold a JSON object")
    for key in ("rank", "derivations", "metric", "anchor"):
        if key not in doc:
            raise FormatError(f"algebroid file is missing {key!r}")
    r, n = doc["rank"], doc["derivations"]
    if not isinstance(r, int) or not isinstance(n, int) or r < 1 or n < 0:
        raise FormatError("rank must be a positive integer and derivations a non-negative one")
    metric = _matrix(doc["metric"], "metric")
    anchor = _matrix(doc["anchor"], "anchor")
    if metric.shape != (r, r):
        raise FormatError(f"metric must be {r}x{r}, got {metric.shape[0]}x{metric.shape[1]}")
    if n and anchor.shape != (r, n):
        raise FormatError(f"anchor must be {r}x{n}, got {anchor.shape[0]}x{anchor.shape[1]}")
    if not n:
        anchor = RatMatrix.zeros(r, 0)
    structure = []
    for pos, e in enumerate(doc.get("structure", [])):
        where = f"structure[{pos}]"
        if not isinstance(e, dict):
            raise FormatError(f"{where} must be an object")
        structure.append((_index(e, "i", r, where), _index(e, "j", r, where), _index(e, "k", r, where),
                          _rational(e.get("c"), where)))
    commutators = []
    for pos, e in enumerate(doc.get("commutators", [])):
        where = f"commutators[{pos}]"
        if not isinstance(e, dict):
            raise FormatError(f"{where} must be an object")
        commutators.append((_index(e, "a", n, where), _index(e, "b", n, where), _index(e, "c", n, where),
                            _rational(e.get("e"), where)))
    mode = doc.get("mode", PROTO_COURANT)
    if mode not in (PROTO_COURANT, ALMOST_LEIBNIZ):
        raise FormatError(f"mode must be {PROTO_COURANT!r} or {ALMOST_LEIBNIZ!r}")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != r):
        raise FormatError(f"names must be a list of {r} strings")
    return AlgebroidData(r, n, metric, anchor, tuple(structure), tuple(commutators), mode,
                         tuple(names) if names else None)


def algebroid_to_json(data: AlgebroidData) -> dict:
    doc = {
        "rank": data.rank,
        "derivations": data.derivations,
        "metric": [[format_rational(v) for v in row] for row in data.metric.to_rows()],
        "anchor": [[format_rational(v) for v in row] for row in data.anchor.to_rows()],
        "structure": [{"i": i + 1, "j": j + 1, "k": k + 1, "c": format_rational(c)}
                      for i, j, k, c in data.structure],
        "commutators": [{"a": a + 1, "b": b + 1, "c": c + 1, "e": format_rational(e)}
                        for a, b, c, e in data.commutators],
        "mode": data.mode,
    }
    if data.frame_names:
        doc["names"] = list(data.frame_names)
    return doc


def section_from_json(doc, rank: int | None = None) -> Section:
    """Accepts {"coeffs": [...]} or a bare list of coefficient strings."""
    coeffs = doc.get("coeffs") if isinstance(doc, dict) else doc
    if not isinstance(coeffs, list):
        raise FormatError('section must be {"coeffs": [...]}')
    if rank is not None and len(coeffs) != rank:
        raise FormatError(f"section has {len(coeffs)} coefficients, expected {rank}")
    out = []
    for pos, c in enumerate(coeffs):
        try:
            out.append(parse_scalar(str(c)))
        except ScalarSyntaxError as exc:
            raise FormatError(f"coeffs[{pos}]: {exc}") from None
    return Section(out)


def section_to_json(s: Section) -> dict:
    return {"coeffs": [str(c) for c in s.coeffs]}


def endomorphism_from_json(doc, rank: int | None = None) -> RatMatrix:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise FormatError('endomorphism must be {"matrix": [[...]]}')
    J = _matrix(doc["matrix"], "matrix")
    if rank is not None and J.shape != (rank, rank):
        raise FormatError(f"matrix must be {rank}x{rank}, got {J.shape[0]}x{J.shape[1]}")
    return J


def endomorphism_to_json(J: RatMatrix) -> dict:
    return {"matrix": [[format_rational(v) for v in row] for row in J.to_rows()]}
