from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cellkoszul.complex import BOTTOM, TOP, CellComplex, CellRecord
from cellkoszul.errors import HypothesisError, ValidationError
from cellkoszul.glued import build_glued_simplicial

from conftest import ENTRIES, glued, interval


def brute_force_f_vector(simplices, identifications):
    """Union-find on (simplex, vertex subset) with no orientation bookkeeping."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for si, s in enumerate(simplices):
        for r in range(1, len(s) + 1):
            for sub in combinations(range(len(s)), r):
                parent[(si, frozenset(sub))] = (si, frozenset(sub))
    by_name = {}
    for key in list(parent):
        si, sub = key
        by_name.setdefault(frozenset(simplices[si][p] for p in sub), []).append(key)
    for keys in by_name.values():
        for k in keys[1:]:
            union(keys[0], k)

    def where(face):
        for si, s in enumerate(simplices):
            if set(face) <= set(s):
                return si, [s.index(v) for v in face]

    for a, b in identifications:
        si, pa = where(a)
        sj, pb = where(b)
        for r in range(1, len(pa) + 1):
            for sub in combinations(range(len(pa)), r):
                union((si, frozenset(pa[i] for i in sub)), (sj, frozenset(pb[i] for i in sub)))
    roots = {find(k): len(k[1]) - 1 for k in parent}
    top = max(roots.values())
    return [sum(1 for d in roots.values() if d == k) for k in range(top + 1)]


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_glued_counts_match_brute_force(name):
    e = ENTRIES[name]
    assert e.complex.f_vector() == brute_force_f_vector(
        [list(s) for s in e.spec.simplices], e.spec.identifications
    )


def test_s1_bad_counts():
    # the edge gluing also identifies v3 with w3
    assert ENTRIES["s1_bad"].complex.f_vector() == [4, 8, 7, 2]
    # two distinct triangles on {v0, v1, v3}
    X = ENTRIES["s1_bad"].complex
    assert "v0-v1-v3" in X and "w0-w1-w3" in X


def test_triangle_and_interval():
    assert glued([["a", "b", "c"]]).f_vector() == [3, 3, 1]
    X = interval()
    assert X.dimension == 1 and X.f_vector() == [2, 1]
    assert X.incidence("e", "v0") == -1


def test_single_vertex_and_empty():
    X = CellComplex([CellRecord("p", 0)], {})
    assert X.dimension == 0 and X.is_pure() and X.is_codim1_connected()
    E = CellComplex([], {})
    assert E.dimension == -1 and E.f_vector() == []


@pytest.mark.parametrize(
    "cells,boundary,msg",
    [
        ([("v0", 0), ("e", 1)], {"e": [("v0", 1), ("v0", -1)]}, "duplicate"),
        ([("v0", 0), ("e", 1)], {"e": [("v9", 1)]}, "v9"),
        ([("v0", 0), ("v1", 0), ("e", 1), ("f", 2)], {"e": [("v0", 1), ("v1", -1)], "f": [("v0", 1)]}, "dim 0"),
        ([("v0", 0), ("v1", 0), ("e", 1)], {"e": [("v0", 1), ("v1", 1)]}, "augmented"),
        ([("v0", 0), ("v1", 0), ("e", 1)], {"e": [("v0", 2), ("v1", -1)]}, "must be"),
    ],
)
def test_invalid_cw_specs(cells, boundary, msg):
    with pytest.raises(ValidationError, match=msg):
        CellComplex([CellRecord(i, d) for i, d in cells], boundary)


def test_rim_must_be_a_sphere():
    # a 2-cell attached along a single edge (rim is an interval, not a circle)
    cells = [CellRecord("a", 0), CellRecord("b", 0), CellRecord("e", 1), CellRecord("f", 2)]
    with pytest.raises(ValidationError):
        CellComplex(cells, {"e": [("b", 1), ("a", -1)], "f": [("e", 1)]})


def test_glued_rejects_self_collapse():
    with pytest.raises(ValidationError):
        glued([["a", "b", "c"]], [(("a", "b"), ("b", "c"))])
    with pytest.raises(ValidationError):
        glued([["a", "b"]], [(("a", "b"), ("b", "a"))])


def test_glued_rejects_missing_face():
    with pytest.raises(ValidationError):
        glued([["a", "b", "c"]], [(("a", "x"), ("b", "c"))])


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_boundary_squares_to_zero(name):
    X = ENTRIES[name].complex
    for i in range(len(X)):
        acc = {}
        for j, s in X.boundary[i]:
            for m, t in X.boundary[j]:
                acc[m] = acc.get(m, 0) + s * t
        assert not any(acc.values())


def test_purity_and_connectivity():
    assert glued([["a", "b", "c"]]).is_pure()
    assert not ENTRIES["nonpure_flag"].complex.is_pure()
    with pytest.raises(HypothesisError):
        ENTRIES["nonpure_flag"].complex.is_codim1_connected()
    assert not glued([["a", "b", "c"], ["d", "e", "f"]]).is_codim1_connected()
    # two triangles sharing only a vertex
    assert not glued([["a", "b", "c"], ["c", "d", "e"]]).is_codim1_connected()
    assert ENTRIES["y_double3cell"].complex.is_codim1_connected()


def test_s2_worse_needs_closing_simplex():
    spec = ENTRIES["s2_worse"].spec
    keep = [s for s in spec.simplices if not s[0].startswith("x")]
    idents = [p for p in spec.identifications if not p[0][0].startswith("x")]
    X = glued(keep, idents)
    assert X.is_pure() and not X.is_codim1_connected()
    assert ENTRIES["s2_worse"].complex.is_codim1_connected()


def test_star_examples():
    Y = ENTRIES["y_double3cell"].complex
    assert Y.star("a-b") == {"a-b", "a-b-c", "a-b-d", "a-b-e", "a-b-c-d", "a-b-c-e"}
    assert Y.star("a-b-c-d") == {"a-b-c-d"}
    T = glued([["a", "b", "c"]])
    assert T.star("a") == {"a", "a-b", "a-c", "a-b-c"}


def test_star_complement_examples():
    C = glued([["a", "b"], ["b", "c"], ["a", "c"]])
    assert C.star_complement("a").cells == {"b", "c", "b-c"}
    T = glued([["a", "b", "c"]])
    assert T.star_complement("a-b-c").cells == {"a", "b", "c", "a-b", "a-c", "b-c"}
    X = ENTRIES["s1_bad"].complex
    comp = X.star_complement("v0-v3").cells
    assert comp == set(X.ids) - X.star("v0-v3")
    assert "v0-v3" not in comp and "v0-v1-v3" not in comp and "w0-w1-w3" not in comp


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_star_and_complement_partition(name):
    X = ENTRIES[name].complex
    for c in X.ids:
        st_, comp = X.star(c), X.star_complement(c).cells
        assert not (st_ & comp) and (st_ | comp) == set(X.ids)


def test_skeleta():
    T = glued([["a", "b", "c"]])
    assert len(T.skeleton(1)) == 6
    assert T.skeleton(2).cells == set(T.ids)
    assert len(T.skeleton(-1)) == 0


def test_subcomplex_must_be_closed():
    T = glued([["a", "b", "c"]])
    with pytest.raises(ValidationError):
        from cellkoszul.complex import Subcomplex
        Subcomplex(T, frozenset({"a-b"}))


def test_face_poset_of_interval():
    X = glued([["v0", "v1"]])
    P = X.face_poset(adjoin_top=False)
    assert len(P) == 4
    assert sorted(P.rank.values()) == [0, 1, 1, 2]
    Ph = X.face_poset(adjoin_top=True)
    assert len(Ph) == 5 and Ph.rank[TOP] == 3 and Ph.rank[BOTTOM] == 0
    assert Ph.leq("v0", TOP) and not Ph.leq("v0", "v1")
    with pytest.raises(HypothesisError):
        ENTRIES["nonpure_flag"].complex.face_poset(adjoin_top=True)


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_face_poset_ranks(name):
    X = ENTRIES[name].complex
    P = X.face_poset()
    for c in X.cells:
        assert P.rank[c.id] == c.dim + 1
    for x, below in P.covers.items():
        assert all(P.rank[x] == P.rank[y] + 1 for y in below)


def test_subdivision_counts():
    S1, carrier = glued([["a", "b"]]).barycentric_subdivision()
    assert S1.f_vector() == [3, 2]
    S2, _ = glued([["a", "b", "c"]]).barycentric_subdivision()
    assert S2.f_vector() == [7, 12, 6]
    assert carrier["a<a-b"] == "a-b"


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_subdivision_invariants(name):
    X = ENTRIES[name].complex
    Xs, carrier = X.barycentric_subdivision()
    Xs.validate()
    assert Xs.euler_characteristic() == X.euler_characteristic()
    assert set(carrier.values()) == set(X.ids)
    assert Xs.is_pure() == X.is_pure()
    if X.is_pure():
        assert Xs.is_codim1_connected() == X.is_codim1_connected()


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(6))))
def test_relabel_preserves_structure(perm):
    X = ENTRIES["y_double3cell"].complex
    names = sorted(X.ids)
    mapping = {c: f"c{perm[i % 6]}_{i}" for i, c in enumerate(names)}
    Z = X.relabel(mapping)
    Z.validate()
    assert Z.f_vector() == X.f_vector()
    assert {mapping[c] for c in X.star("a-b")} == Z.star(mapping["a-b"])
