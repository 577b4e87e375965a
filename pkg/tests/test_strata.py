import warnings

import pytest
from hypothesis import given, strategies as st

from cellkoszul.fields import GF2, Q
from cellkoszul.strata import check_dimension_bound, check_strengthened_singularity, stratify, stratum_index

from conftest import ENTRIES, glued


@given(st.dictionaries(st.integers(0, 6), st.integers(0, 3)))
def test_stratum_index_is_first_nonzero_minus_one(dims):
    nz = sorted(k for k, v in dims.items() if v)
    got = stratum_index(dims)
    if not nz or nz[0] == 0:
        assert got is None
    else:
        assert got == nz[0] - 1


def test_s1_bad():
    S = stratify(ENTRIES["s1_bad"].complex, Q)
    assert S.S(0) == []
    assert S.S(1) == ["v0", "v0-v3"]


def test_s2_bad():
    S = stratify(ENTRIES["s2_bad"].complex, Q)
    assert S.S(1) == []
    assert S.S(2) == ["v0-v1", "v0-v1-v4"]


@pytest.mark.parametrize("d", range(1, 5))
def test_simplex_strata(d):
    S = stratify(ENTRIES[f"simplex_{d}"].complex, Q)
    top = "-".join(f"v{i}" for i in range(d + 1))
    assert all(S.S(n) == [] for n in range(d - 1))
    assert top in S.S(d - 1)


def test_nonpure_edge_in_s0_and_check_skipped():
    X = ENTRIES["nonpure_flag"].complex
    S = stratify(X, Q)
    assert "c-d" in S.S(0)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert check_dimension_bound(S, X) == []
    assert w


@pytest.mark.parametrize("name", [n for n, e in ENTRIES.items() if e.complex.is_pure()])
def test_dimension_bound_holds(name):
    X = ENTRIES[name].complex
    assert check_dimension_bound(stratify(X, Q), X) == []


def test_dimension_bound_detects_violation():
    X = ENTRIES["s2_bad"].complex
    S = stratify(X, Q)
    S.stratum["v0-v1-v2"] = 1  # forge a 2-cell into S_1
    assert {"cell": "v0-v1-v2", "dim": 2, "stratum": 1} in check_dimension_bound(S, X)


def test_strengthened_singularity_examples():
    X = ENTRIES["s1_bad"].complex
    r = check_strengthened_singularity(stratify(X, Q), X, Q)
    assert r["status"] == "pass" and r["n"] == 1 and r["witnesses"] == ["v0"]
    Y = ENTRIES["y_double3cell"].complex
    r = check_strengthened_singularity(stratify(Y, Q), Y, Q)
    assert r == {"status": "pass", "vacuous": True}
    W = ENTRIES["s2_worse"].complex
    r = check_strengthened_singularity(stratify(W, Q), W, Q)
    assert r["status"] == "pass" and r["n"] == 2
    assert {"d", "a-d", "b-d", "c-d"} <= set(r["witnesses"])


def test_strengthened_singularity_hypotheses():
    tris = []
    for i in range(3):
        j = (i + 1) % 3
        tris += [[f"a{i}", f"a{j}", f"b{i}"], [f"a{j}", f"b{i}", f"b{j}"]]
    annulus = glued(tris)
    r = check_strengthened_singularity(stratify(annulus, Q), annulus, Q)
    assert r["status"] == "hypotheses not met"
    assert "reduced homology" in r["reasons"][0]
    N = ENTRIES["nonpure_flag"].complex
    assert check_strengthened_singularity(stratify(N, Q), N, Q)["status"] == "hypotheses not met"


def test_strata_same_over_gf2():
    for name in ["s1_bad", "s2_bad", "s1_bad_4d"]:
        X = ENTRIES[name].complex
        assert stratify(X, Q).strata() == stratify(X, GF2).strata()


def test_summary_and_json():
    S = stratify(ENTRIES["s1_bad"].complex, Q)
    assert S.summary()[1] == {0: 1, 1: 1}
    js = S.to_json()
    assert js["strata"]["1"] == [{"cell": "v0", "dim": 0}, {"cell": "v0-v3", "dim": 1}]
