"""Three equivalent Koszulity tests for R(X) and their agreement audit.

All three need X pure and connected through codimension-one faces; on
other inputs they raise :class:`HypothesisError` instead of answering.

* ``local_homology``: reduced homology vanishes below d and no cell lies in
  a stratum S_k with k <= d - 2.
* ``cps``: H^n_k = 0 for 0 <= k < n < d.
* ``star_cohomology``: reduced cohomology vanishes below d and, for every
  k-cell s and every n with k + 1 < n < d, H^n(X, X - st(s)) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import CellComplex
from .cps import cps_table
from .errors import DisagreementError
from .fields import Field, parse_field
from .homology import cohomology, homology, local_cohomology_by_star
from .strata import stratify

CRITERIA = ("local_homology", "cps", "star_cohomology")


@dataclass
class Verdict:
    koszul: bool
    criterion: str
    field: str
    witnesses: list = field(default_factory=list)
    hypotheses: dict = field(default_factory=lambda: {"pure": True, "codim1_connected": True})

    def to_json(self) -> dict:
        return {
            "koszul": self.koszul,
            "criterion": self.criterion,
            "field": self.field,
            "witnesses": self.witnesses,
            "hypotheses": self.hypotheses,
        }


def _reduced_witnesses(table, d: int, kind: str) -> list[dict]:
    return [{"kind": kind, "degree": i, "dim": table[i]} for i in range(-1, d) if table[i]]


def _make(criterion, F, witnesses) -> Verdict:
    return Verdict(koszul=not witnesses, criterion=criterion, field=F.name, witnesses=witnesses)


def koszul_via_local_homology(X: CellComplex, F: Field | str) -> Verdict:
    F = parse_field(F)
    X.check_hypotheses()
    d = X.dimension
    witnesses = _reduced_witnesses(homology(X, F, reduced=True), d, "reduced_homology")
    S = stratify(X, F)
    for n, ids in S.strata().items():
        if n <= d - 2:
            for c in sorted(ids):
                witnesses.append({"kind": "stratum", "n": n, "cell": c, "cell_dim": S.dims[c]})
    return _make("local_homology", F, witnesses)


def koszul_via_cps(X: CellComplex, F: Field | str) -> Verdict:
    F = parse_field(F)
    X.check_hypotheses()
    table = cps_table(X, F)
    witnesses = [{"kind": "cps", "n": n, "k": k, "dim": table[n, k]} for n, k in table.nonvanishing()]
    return _make("cps", F, witnesses)


def koszul_via_star_cohomology(X: CellComplex, F: Field | str) -> Verdict:
    F = parse_field(F)
    X.check_hypotheses()
    d = X.dimension
    witnesses = _reduced_witnesses(cohomology(X, F, reduced=True), d, "reduced_cohomology")
    found = []
    for i, c in enumerate(X.cells):
        k = c.dim
        if k + 2 >= d:
            continue
        betti = local_cohomology_by_star(X, i, F)
        for n in range(k + 2, d):
            if betti.get(n, 0):
                found.append({"kind": "star_cohomology", "degree": n, "cell": c.id, "cell_dim": k, "dim": betti[n]})
    found.sort(key=lambda w: (w["degree"], w["cell"]))
    return _make("star_cohomology", F, witnesses + found)


_PROCEDURES = {
    "local_homology": koszul_via_local_homology,
    "cps": koszul_via_cps,
    "star_cohomology": koszul_via_star_cohomology,
}


def koszul(X: CellComplex, F: Field | str, criterion: str = "local_homology") -> Verdict:
    try:
        proc = _PROCEDURES[criterion]
    except KeyError:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}") from None
    return proc(X, F)


@dataclass
class AgreementReport:
    field: str
    verdicts: dict

    @property
    def agree(self) -> bool:
        return len({v.koszul for v in self.verdicts.values()}) == 1

    @property
    def koszul(self) -> bool:
        return next(iter(self.verdicts.values())).koszul

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "agree": self.agree,
            "koszul": {name: v.koszul for name, v in self.verdicts.items()},
            "verdicts": {name: v.to_json() for name, v in self.verdicts.items()},
        }


def cross_check(X: CellComplex, F: Field | str, criteria=CRITERIA) -> AgreementReport:
    """Run every criterion; raise :class:`DisagreementError` if they differ."""
    F = parse_field(F)
    X.check_hypotheses()
    report = AgreementReport(F.name, {name: _PROCEDURES[name](X, F) for name in criteria})
    if not report.agree:
        raise DisagreementError(f"Koszul criteria disagree over {F.name}: "
                                f"{ {n: v.koszul for n, v in report.verdicts.items()} }", report)
    return report
