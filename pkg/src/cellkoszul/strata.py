"""Singular strata S_n detected by local homology.

A point lies in S_n when its local homology vanishes through degree n and
not in degree n + 1.  Local homology is constant along open cells, so the
stratification is computed once per cell.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .complex import CellComplex
from .fields import Field, parse_field
from .homology import homology, local_homology_by_star


def stratum_index(local_dims: dict[int, int]) -> int | None:
    """n with the cell in S_n, or None.

    The first nonzero degree m gives n = m - 1.  A nonzero degree-0 group
    (an isolated vertex) fits no S_n with n >= 0.
    """
    nonzero = [k for k, v in local_dims.items() if v]
    if not nonzero:
        return None
    m = min(nonzero)
    return m - 1 if m >= 1 else None


@dataclass
class Stratification:
    field: str
    dimension: int
    stratum: dict                 # cell id -> n or None
    dims: dict                    # cell id -> cell dimension
    local: dict = field(default_factory=dict, repr=False)  # cell id -> local Betti numbers

    def strata(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for cid, n in self.stratum.items():
            if n is not None:
                out.setdefault(n, []).append(cid)
        return {n: sorted(ids, key=lambda c: (self.dims[c], c)) for n, ids in sorted(out.items())}

    def S(self, n: int) -> list[str]:
        return self.strata().get(n, [])

    def nonsingular(self) -> list[str]:
        return sorted((c for c, n in self.stratum.items() if n is None), key=lambda c: (self.dims[c], c))

    def summary(self) -> dict[int, dict[int, int]]:
        """n -> {cell dimension: number of cells in S_n}."""
        out: dict[int, dict[int, int]] = {}
        for n, ids in self.strata().items():
            counts: dict[int, int] = {}
            for c in ids:
                counts[self.dims[c]] = counts.get(self.dims[c], 0) + 1
            out[n] = dict(sorted(counts.items()))
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "strata": {
                str(n): [{"cell": c, "dim": self.dims[c]} for c in ids]
                for n, ids in self.strata().items()
            },
            "nonsingular": [{"cell": c, "dim": self.dims[c]} for c in self.nonsingular()],
        }


def stratify(X: CellComplex, F: Field | str) -> Stratification:
    F = parse_field(F)
    stratum = {}
    local = {}
    for i, c in enumerate(X.cells):
        betti = local_homology_by_star(X, i, F)
        local[c.id] = betti
        stratum[c.id] = stratum_index(betti)
    return Stratification(F.name, X.dimension, stratum, {c.id: c.dim for c in X.cells}, local)


def check_dimension_bound(S: Stratification, X: CellComplex) -> list[dict]:
    """Cells in S_n with n < d - 1 whose dimension exceeds n.

    Only meaningful for pure complexes; otherwise a warning is emitted and
    no violations are reported.
    """
    if not X.is_pure():
        warnings.warn("complex is not pure; dimension bound check skipped", stacklevel=2)
        return []
    d = X.dimension
    violations = []
    for n, ids in S.strata().items():
        if n >= d - 1:
            continue
        for c in ids:
            if S.dims[c] > n:
                violations.append({"cell": c, "dim": S.dims[c], "stratum": n})
    return violations


def check_strengthened_singularity(S: Stratification, X: CellComplex, F: Field | str) -> dict:
    """If some S_n with n < d - 1 is nonempty, the lowest one must contain a
    cell of dimension below n (for pure, codim-1 connected complexes with
    vanishing reduced homology below d)."""
    F = parse_field(F)
    d = X.dimension
    reasons = []
    if not X.is_pure():
        reasons.append("not pure")
    elif not X.is_codim1_connected():
        reasons.append("not connected through codimension-one faces")
    else:
        h = homology(X, F, reduced=True)
        bad = [i for i in range(-1, d) if h[i]]
        if bad:
            reasons.append(f"reduced homology nonzero in degrees {bad}")
    if reasons:
        return {"status": "hypotheses not met", "reasons": reasons}
    low = [n for n in S.strata() if n < d - 1]
    if not low:
        return {"status": "pass", "vacuous": True}
    n = min(low)
    witnesses = [c for c in S.S(n) if S.dims[c] < n]
    return {
        "status": "pass" if witnesses else "fail",
        "vacuous": False,
        "n": n,
        "witnesses": witnesses,
    }
