"""Cellular (co)homology over a field: absolute, reduced, relative and local."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .complex import CellComplex, Subcomplex
from .errors import ValidationError
from .fields import Field, parse_field
from .linalg import SparseMatrix


@dataclass
class GradedComplex:
    """Per-degree differentials over one field.

    For ``direction == "chain"`` the map in degree k goes C_k -> C_{k-1};
    for ``"cochain"`` it goes C^k -> C^{k+1}.  ``basis[k]`` lists the cell
    indices spanning degree k.
    """

    field: Field
    direction: str
    basis: dict
    maps: dict = dc_field(default_factory=dict)

    def rank_of(self, k: int) -> int:
        m = self.maps.get(k)
        return m.rank() if m is not None else 0

    def size(self, k: int) -> int:
        return len(self.basis.get(k, ()))

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def composites_vanish(self) -> bool:
        step = -1 if self.direction == "chain" else 1
        for k, m in self.maps.items():
            nxt = self.maps.get(k + step)
            if nxt is not None and not (nxt @ m).is_zero():
                return False
        return True

    def betti(self) -> dict[int, int]:
        """dim ker(out) - rank(in) in each degree of ``basis``."""
        step = -1 if self.direction == "chain" else 1
        ranks = {k: self.rank_of(k) for k in self.maps}
        return {
            k: self.size(k) - ranks.get(k, 0) - ranks.get(k - step, 0)
            for k in self.degrees()
        }


@dataclass
class HomologyTable:
    field: str
    reduced: bool
    dims: dict

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def nonzero_degrees(self) -> list[int]:
        return sorted(k for k, v in self.dims.items() if v)

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "reduced": self.reduced,
            "dims": {str(k): v for k, v in sorted(self.dims.items())},
        }


def _basis_by_degree(X: CellComplex, cells: Iterable[int] | None) -> dict[int, list[int]]:
    keep = None if cells is None else set(cells)
    basis: dict[int, list[int]] = {k: [] for k in range(X.dimension + 1)}
    for i, k in enumerate(X.dims):
        if keep is None or i in keep:
            basis[k].append(i)
    return basis


def _boundary_maps(X: CellComplex, F: Field, basis: dict[int, list[int]]) -> dict[int, SparseMatrix]:
    maps = {}
    for k in range(1, X.dimension + 1):
        rows = {c: r for r, c in enumerate(basis.get(k - 1, []))}
        cols = []
        for c in basis.get(k, []):
            cols.append({rows[j]: F(s) for j, s in X.boundary[c] if j in rows})
        maps[k] = SparseMatrix(F, len(rows), len(cols), cols)
    return maps


def chain_complex(X: CellComplex, F: Field | str, cells: Iterable[int] | None = None) -> GradedComplex:
    """Cellular chain complex, optionally on a subset of cells.

    Restricting to a set of cell indices drops boundary terms outside the
    set; for the complement of a subcomplex this is the relative complex.
    """
    F = parse_field(F)
    basis = _basis_by_degree(X, cells)
    return GradedComplex(F, "chain", basis, _boundary_maps(X, F, basis))


def cochain_complex(X: CellComplex, F: Field | str, cells: Iterable[int] | None = None) -> GradedComplex:
    """Cellular cochains in the dual cell basis: the coboundary in degree k
    is the transpose of the boundary in degree k+1."""
    ch = chain_complex(X, F, cells)
    maps = {k - 1: m.transpose() for k, m in ch.maps.items()}
    return GradedComplex(ch.field, "cochain", ch.basis, maps)


def _augmented_betti(gc: GradedComplex, reduced: bool) -> dict[int, int]:
    betti = gc.betti()
    if reduced:
        n0 = gc.size(0)
        if n0:
            betti[0] -= 1
        else:
            betti[-1] = 1
    return betti


def homology(X: CellComplex, F: Field | str, reduced: bool = False) -> HomologyTable:
    F = parse_field(F)
    betti = _augmented_betti(chain_complex(X, F), reduced)
    return HomologyTable(F.name, reduced, betti)


def cohomology(X: CellComplex, F: Field | str, reduced: bool = False) -> HomologyTable:
    F = parse_field(F)
    betti = _augmented_betti(cochain_complex(X, F), reduced)
    return HomologyTable(F.name, reduced, betti)


def reduced_betti_of_cells(X: CellComplex, cells: Iterable[int], F: Field, max_degree: int | None = None) -> dict[int, int]:
    """Reduced Betti numbers of the subcomplex on the given cell indices,
    including degree -1 (nonzero only for the empty subcomplex)."""
    cells = set(cells)
    gc = chain_complex(X, F, cells)
    betti = _augmented_betti(gc, reduced=True)
    betti.setdefault(-1, 0)
    if max_degree is not None:
        betti = {k: v for k, v in betti.items() if k <= max_degree}
    return betti


def _as_subcomplex(X: CellComplex, A) -> Subcomplex:
    if isinstance(A, Subcomplex):
        if A.parent is not X:
            A = Subcomplex(X, A.cells)
        return A
    return Subcomplex(X, frozenset(A))


def relative_homology(X: CellComplex, A: Subcomplex | Iterable[str], F: Field | str) -> HomologyTable:
    """H_*(X, A) from the quotient complex C_*(X)/C_*(A)."""
    F = parse_field(F)
    A = _as_subcomplex(X, A)
    rest = set(range(len(X))) - A.indices()
    return HomologyTable(F.name, False, chain_complex(X, F, rest).betti())


def relative_cohomology(X: CellComplex, A: Subcomplex | Iterable[str], F: Field | str) -> HomologyTable:
    F = parse_field(F)
    A = _as_subcomplex(X, A)
    rest = set(range(len(X))) - A.indices()
    return HomologyTable(F.name, False, cochain_complex(X, F, rest).betti())


def local_homology(X: CellComplex, cell: str, F: Field | str) -> HomologyTable:
    """Local homology at any point of the open cell ``cell``.

    X minus a point of the cell deformation retracts onto the subcomplex of
    cells not containing it, so this is H_*(X, X - st(cell)).
    """
    if cell not in X:
        raise ValidationError(f"unknown cell {cell!r}")
    return relative_homology(X, X.star_complement(cell), F)


def relative_cohomology_star(X: CellComplex, cell: str, F: Field | str) -> HomologyTable:
    """H^*(X, X - st(cell))."""
    if cell not in X:
        raise ValidationError(f"unknown cell {cell!r}")
    return relative_cohomology(X, X.star_complement(cell), F)


def local_homology_by_star(X: CellComplex, i: int, F: Field) -> dict[int, int]:
    """Local homology at cell index ``i`` from the star cells alone.

    Same chain complex as :func:`local_homology` without building the
    complement subcomplex; used in the per-cell loops.
    """
    return chain_complex(X, F, X.star_idx(i)).betti()


def local_cohomology_by_star(X: CellComplex, i: int, F: Field) -> dict[int, int]:
    return cochain_complex(X, F, X.star_idx(i)).betti()
