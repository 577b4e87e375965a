"""JSON input and output.

Two input formats are accepted, told apart by the ``format`` key:

``regular-cw/v1``
    ``{"dimension": d, "cells": [{"id", "dim", "boundary": [[id, sign], ...]}]}``
``glued-simplicial/v1``
    ``{"simplices": [[names...]], "identifications": [[[names], [names]], ...]}``

Output is deterministic: cells in ``(dim, id)`` order and sorted keys.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .complex import CellComplex, CellRecord
from .errors import ParseError, ValidationError
from .glued import GluedSimplicialSpec, build_glued_simplicial

CW_FORMAT = "regular-cw/v1"
GLUED_FORMAT = "glued-simplicial/v1"


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def complex_to_json(X: CellComplex) -> dict:
    cells = []
    for c in X.cells:
        entry = {"id": c.id, "dim": c.dim, "boundary": [[f, s] for f, s in X.boundary_of(c.id)]}
        if c.label is not None:
            entry["label"] = c.label
        cells.append(entry)
    return {"format": CW_FORMAT, "dimension": X.dimension, "cells": cells}


def _require(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def complex_from_cw_json(doc: dict, validate: bool = True) -> CellComplex:
    cells_raw = doc.get("cells")
    _require(isinstance(cells_raw, list), "regular-cw/v1 document needs a 'cells' list")
    cells, boundary = [], {}
    for entry in cells_raw:
        _require(isinstance(entry, dict) and "id" in entry and "dim" in entry,
                 f"cell entry must have 'id' and 'dim': {entry!r}")
        cid, dim = entry["id"], entry["dim"]
        _require(isinstance(cid, str), f"cell id must be a string: {cid!r}")
        _require(isinstance(dim, int) and not isinstance(dim, bool), f"cell {cid!r}: dim must be an integer")
        cells.append(CellRecord(cid, dim, entry.get("label")))
        terms = []
        for term in entry.get("boundary", []):
            _require(isinstance(term, list) and len(term) == 2, f"cell {cid!r}: boundary terms are [id, sign] pairs")
            terms.append((term[0], term[1]))
        if terms:
            boundary[cid] = terms
    X = CellComplex(cells, boundary, validate=validate)
    declared = doc.get("dimension")
    if declared is not None and declared != X.dimension:
        raise ValidationError(f"declared dimension {declared} but cells reach dimension {X.dimension}")
    return X


def glued_spec_from_json(doc: dict) -> GluedSimplicialSpec:
    simplices = doc.get("simplices")
    _require(isinstance(simplices, list) and all(isinstance(s, list) for s in simplices),
             "glued-simplicial/v1 document needs a 'simplices' list of lists")
    idents = doc.get("identifications", [])
    _require(isinstance(idents, list), "'identifications' must be a list")
    pairs = []
    for p in idents:
        _require(isinstance(p, list) and len(p) == 2 and all(isinstance(t, list) for t in p),
                 f"identification must be [[names], [names]]: {p!r}")
        pairs.append((tuple(map(str, p[0])), tuple(map(str, p[1]))))
    return GluedSimplicialSpec([tuple(map(str, s)) for s in simplices], pairs)


def parse_document(doc: dict | str, validate: bool = True) -> CellComplex:
    """Build a complex from a parsed or raw JSON document of either format."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    _require(isinstance(doc, dict), "top-level JSON value must be an object")
    fmt = doc.get("format")
    if fmt == CW_FORMAT:
        return complex_from_cw_json(doc, validate)
    if fmt == GLUED_FORMAT:
        return build_glued_simplicial(glued_spec_from_json(doc), validate)
    raise ParseError(f"unknown format {fmt!r}; expected {CW_FORMAT!r} or {GLUED_FORMAT!r}")


def normalize_document(doc: dict | str) -> dict:
    """Parse and re-emit in canonical form without building a complex twice."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    _require(isinstance(doc, dict), "top-level JSON value must be an object")
    if doc.get("format") == GLUED_FORMAT:
        return glued_spec_from_json(doc).to_json()
    return complex_to_json(parse_document(doc))


def load(path: str | Path, validate: bool = True) -> CellComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, validate)
