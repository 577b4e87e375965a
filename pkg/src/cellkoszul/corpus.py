"""Built-in example complexes with their expected properties.

Every expected fact has a ``source``:

* ``"literature"``: stated in the original description of the example.
* ``"derived"``: computed once by an independent check and frozen.
* ``"trivial"``: immediate from the construction.

Strata expectations are partial: only the listed ``n`` are compared, each
against the exact set of cell ids in S_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .complex import CellComplex
from .glued import GluedSimplicialSpec, build_glued_simplicial


@dataclass(frozen=True)
class Fact:
    value: object
    source: str


@dataclass
class CorpusEntry:
    name: str
    description: str
    spec: GluedSimplicialSpec
    facts: dict = field(default_factory=dict)

    @cached_property
    def complex(self) -> CellComplex:
        return build_glued_simplicial(self.spec)

    def document(self) -> dict:
        return self.spec.to_json()

    def expected(self, key, default=None):
        f = self.facts.get(key)
        return default if f is None else f.value


def _simplex(d: int) -> list[str]:
    return [f"v{i}" for i in range(d + 1)]


def _facets(names: list[str]) -> list[list[str]]:
    return [names[:i] + names[i + 1:] for i in range(len(names))]


def _simplex_entry(d: int) -> CorpusEntry:
    top = "-".join(_simplex(d))
    facts = {
        "pure": Fact(True, "trivial"),
        "codim1_connected": Fact(True, "trivial"),
        "reduced_homology": Fact({}, "trivial"),
        "koszul": Fact(True, "derived"),
        # the open top cell is the only singular cell; boundary cells have a cone neighbourhood
        "strata": Fact({n: ([top] if n == d - 1 else []) for n in range(d)}, "derived"),
    }
    return CorpusEntry(f"simplex_{d}", f"the {d}-simplex", GluedSimplicialSpec([_simplex(d)]), facts)


def _sphere_entry(d: int) -> CorpusEntry:
    spec = GluedSimplicialSpec(_facets(_simplex(d + 1)))
    facts = {
        "pure": Fact(True, "trivial"),
        "reduced_homology": Fact({d: 1}, "trivial"),
    }
    if d == 0:
        facts["codim1_connected"] = Fact(False, "trivial")
    else:
        facts["codim1_connected"] = Fact(True, "trivial")
        facts["koszul"] = Fact(True, "derived")
        facts["strata_all_top"] = Fact(d - 1, "derived")
    return CorpusEntry(f"sphere_{d}", f"boundary of the {d + 1}-simplex", spec, facts)


def _y_double3cell() -> CorpusEntry:
    spec = GluedSimplicialSpec([["a", "b", "c", "d"], ["a", "b", "c", "e"]])
    facts = {
        "pure": Fact(True, "literature"),
        "codim1_connected": Fact(True, "literature"),
        "reduced_homology": Fact({}, "derived"),
        "koszul": Fact(True, "literature"),
        "f_vector": Fact([5, 9, 7, 2], "derived"),
        "strata": Fact({0: [], 1: []}, "derived"),
    }
    return CorpusEntry("y_double3cell", "two tetrahedra sharing a triangle", spec, facts)


def _s1_bad() -> CorpusEntry:
    spec = GluedSimplicialSpec(
        [["v0", "v1", "v2", "v3"], ["w0", "w1", "w2", "w3"]],
        [(("v0", "v1", "v2"), ("w0", "w1", "w2")), (("v0", "v3"), ("w0", "w3"))],
    )
    facts = {
        "pure": Fact(True, "literature"),
        "codim1_connected": Fact(True, "literature"),
        "reduced_homology": Fact({}, "literature"),
        "koszul": Fact(False, "literature"),
        # edge gluing also identifies v3 with w3
        "f_vector": Fact([4, 8, 7, 2], "derived"),
        "strata": Fact({0: [], 1: ["v0", "v0-v3"]}, "literature"),
    }
    return CorpusEntry(
        "s1_bad",
        "two tetrahedra glued along a triangle and, separately, along an edge",
        spec,
        facts,
    )


def _s1_bad_4d() -> CorpusEntry:
    spec = GluedSimplicialSpec(
        [_simplex(4), [f"w{i}" for i in range(5)]],
        [(("v0", "v1", "v2", "v3"), ("w0", "w1", "w2", "w3")), (("v0", "v4"), ("w0", "w4"))],
    )
    facts = {
        "pure": Fact(True, "literature"),
        "codim1_connected": Fact(True, "literature"),
        "reduced_homology": Fact({}, "literature"),
        "koszul": Fact(False, "derived"),
        "strata": Fact({1: ["v0", "v0-v4"], 2: []}, "literature"),
    }
    return CorpusEntry("s1_bad_4d", "four-dimensional analogue of s1_bad", spec, facts)


def _s2_bad() -> CorpusEntry:
    spec = GluedSimplicialSpec(
        [_simplex(4), [f"w{i}" for i in range(5)]],
        [(("v0", "v1", "v2", "v3"), ("w0", "w1", "w2", "w3")), (("v0", "v1", "v4"), ("w0", "w1", "w4"))],
    )
    facts = {
        "pure": Fact(True, "literature"),
        "codim1_connected": Fact(True, "literature"),
        "reduced_homology": Fact({}, "literature"),
        "koszul": Fact(False, "derived"),
        "strata": Fact({1: [], 2: ["v0-v1", "v0-v1-v4"]}, "literature"),
    }
    return CorpusEntry("s2_bad", "two 4-simplices glued along a tetrahedron and a triangle", spec, facts)


def _s2_worse() -> CorpusEntry:
    """Three triangles a-d-e, b-d-e, c-d-e on the common edge d-e, with
    4-simplices u, v, w each attached along two adjacent triangles and a
    fourth 4-simplex x glued to a tetrahedron of each of u, v, w.

    The construction as usually written lists the vertices of u, v and w as
    ``u0..u3`` while gluing along ``u1,u2,u3,u4``; here each of them has
    five vertices ``?0..?4``, which is the only correction made.  The
    identifications are otherwise as written:

        u0 u1 u2 ~ e d a    u0 u1 u3 ~ e d c
        v0 v1 v2 ~ e d c    v0 v1 v3 ~ e d b
        w0 w1 w2 ~ e d b    w0 w1 w3 ~ e d a
        x0 x1 x2 x3 ~ u1 u2 u3 u4
        x0 x2 x3 x4 ~ v1 v2 v3 v4
        x0 x1 x3 x4 ~ w1 w3 w2 w4

    The stated S_2 omits the open edge d-e.  In this encoding x never meets
    e, so the link of d-e is unchanged by x and d-e stays in S_2; the
    stratification check on this entry is expected to report that.
    """
    five = lambda p: [f"{p}{i}" for i in range(5)]
    spec = GluedSimplicialSpec(
        [["a", "d", "e"], ["b", "d", "e"], ["c", "d", "e"], five("u"), five("v"), five("w"), five("x")],
        [
            (("u0", "u1", "u2"), ("e", "d", "a")),
            (("u0", "u1", "u3"), ("e", "d", "c")),
            (("v0", "v1", "v2"), ("e", "d", "c")),
            (("v0", "v1", "v3"), ("e", "d", "b")),
            (("w0", "w1", "w2"), ("e", "d", "b")),
            (("w0", "w1", "w3"), ("e", "d", "a")),
            (("x0", "x1", "x2", "x3"), ("u1", "u2", "u3", "u4")),
            (("x0", "x2", "x3", "x4"), ("v1", "v2", "v3", "v4")),
            (("x0", "x1", "x3", "x4"), ("w1", "w3", "w2", "w4")),
        ],
    )
    facts = {
        "pure": Fact(True, "literature"),
        "codim1_connected": Fact(True, "literature"),
        "reduced_homology": Fact({}, "literature"),
        "koszul": Fact(False, "derived"),
        "strata": Fact(
            {0: [], 1: [], 2: ["d", "a-d", "b-d", "c-d", "a-d-e", "b-d-e", "c-d-e"]},
            "literature",
        ),
    }
    return CorpusEntry("s2_worse", "four 4-simplices around three triangles on a common edge", spec, facts)


def _wedge3intervals() -> CorpusEntry:
    spec = GluedSimplicialSpec([["v", "a"], ["v", "b"], ["v", "c"]])
    facts = {
        "pure": Fact(True, "trivial"),
        "codim1_connected": Fact(True, "trivial"),
        "reduced_homology": Fact({}, "trivial"),
        "koszul": Fact(True, "derived"),
        "strata": Fact({0: ["v", "v-a", "v-b", "v-c"]}, "derived"),
        "local_homology": Fact({"v": {1: 2}}, "literature"),
    }
    return CorpusEntry("wedge3intervals", "three intervals sharing one endpoint", spec, facts)


def _nonpure_flag() -> CorpusEntry:
    spec = GluedSimplicialSpec([["a", "b", "c"], ["c", "d"]])
    facts = {
        "pure": Fact(False, "literature"),
        "reduced_homology": Fact({}, "trivial"),
    }
    return CorpusEntry("nonpure_flag", "a triangle with a dangling edge", spec, facts)


def corpus() -> list[CorpusEntry]:
    entries = [_simplex_entry(d) for d in range(5)]
    entries += [_sphere_entry(d) for d in range(4)]
    entries += [_y_double3cell(), _s1_bad(), _s1_bad_4d(), _s2_bad(), _s2_worse(),
                _wedge3intervals(), _nonpure_flag()]
    return sorted(entries, key=lambda e: e.name)


def get(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(name)


def check_entry(entry: CorpusEntry, F) -> list[str]:
    """Compare every expected fact with a fresh computation over ``F``.

    Returns one message per mismatch; an empty list means all facts hold.
    """
    from .fields import parse_field
    from .homology import homology, local_homology_by_star
    from .strata import stratify
    from .verdict import cross_check

    F = parse_field(F)
    X = entry.complex
    problems = []

    def differ(key, got):
        want = entry.expected(key)
        if got != want:
            problems.append(f"{entry.name} [{F.name}] {key}: expected {want!r}, got {got!r}")

    if "pure" in entry.facts:
        differ("pure", X.is_pure())
    if "codim1_connected" in entry.facts:
        differ("codim1_connected", X.is_codim1_connected())
    if "f_vector" in entry.facts:
        differ("f_vector", X.f_vector())
    if "reduced_homology" in entry.facts:
        h = homology(X, F, reduced=True)
        differ("reduced_homology", {k: h[k] for k in h.nonzero_degrees()})
    if "strata" in entry.facts or "strata_all_top" in entry.facts:
        S = stratify(X, F)
        if "strata" in entry.facts:
            differ("strata", {n: S.S(n) for n in entry.expected("strata")})
        if "strata_all_top" in entry.facts:
            n = entry.expected("strata_all_top")
            differ("strata_all_top", n if len(S.S(n)) == len(X) else None)
    if "local_homology" in entry.facts:
        got = {}
        for cid in entry.expected("local_homology"):
            betti = local_homology_by_star(X, X.ids.index(cid), F)
            got[cid] = {k: v for k, v in sorted(betti.items()) if v}
        differ("local_homology", got)
    if "koszul" in entry.facts:
        differ("koszul", cross_check(X, F).koszul)
    return problems
