import pytest

from cellkoszul.complex import CellComplex, CellRecord
from cellkoszul.corpus import corpus
from cellkoszul.glued import build_glued_simplicial

ENTRIES = {e.name: e for e in corpus()}


def glued(simplices, identifications=()):
    return build_glued_simplicial({"simplices": simplices, "identifications": list(identifications)})


def interval():
    return CellComplex(
        [CellRecord("v0", 0), CellRecord("v1", 0), CellRecord("e", 1)],
        {"e": [("v1", 1), ("v0", -1)]},
    )


@pytest.fixture(scope="session")
def entries():
    return ENTRIES
