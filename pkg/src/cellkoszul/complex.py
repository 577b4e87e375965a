"""Finite regular cell complexes and their face posets.

A :class:`CellComplex` is the combinatorial data of a regular CW complex:
cells with dimensions and signed boundary incidences.  Cells are addressed
by string ids in the public API; internally they are numbered in
``(dim, id)`` order, which is the order used for every matrix basis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import HypothesisError, ValidationError

BOTTOM = "<bottom>"
TOP = "<top>"
_RESERVED = {BOTTOM, TOP}


@dataclass(frozen=True)
class CellRecord:
    id: str
    dim: int
    label: str | None = None


class CellComplex:
    """A finite regular CW complex given by its signed incidence data.

    ``boundary`` maps each cell id to ``[(face_id, sign), ...]`` where every
    face is one dimension lower and each sign is +1 or -1.  Construction
    validates the necessary conditions for regularity (see :meth:`validate`).
    """

    def __init__(
        self,
        cells: Iterable[CellRecord],
        boundary: Mapping[str, Sequence[tuple[str, int]]],
        validate: bool = True,
    ):
        cells = list(cells)
        ids = [c.id for c in cells]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate cell ids: {dup}")
        for c in cells:
            if not isinstance(c.id, str) or not c.id:
                raise ValidationError(f"cell id must be a non-empty string, got {c.id!r}")
            if c.id in _RESERVED:
                raise ValidationError(f"cell id {c.id!r} is reserved")
            if not isinstance(c.dim, int) or c.dim < 0:
                raise ValidationError(f"cell {c.id!r} has invalid dimension {c.dim!r}")
        unknown = set(boundary) - set(ids)
        if unknown:
            raise ValidationError(f"boundary given for unknown cells: {sorted(unknown)}")

        self.cells: tuple[CellRecord, ...] = tuple(sorted(cells, key=lambda c: (c.dim, c.id)))
        self.index: dict[str, int] = {c.id: i for i, c in enumerate(self.cells)}
        self.dims: tuple[int, ...] = tuple(c.dim for c in self.cells)
        self.dimension: int = max(self.dims, default=-1)

        bd = []
        for c in self.cells:
            entries = []
            seen = set()
            for item in boundary.get(c.id, ()):
                try:
                    fid, sign = item
                except (TypeError, ValueError):
                    raise ValidationError(f"malformed boundary entry {item!r} of cell {c.id!r}") from None
                if fid not in self.index:
                    raise ValidationError(f"cell {c.id!r} has dangling boundary reference {fid!r}")
                j = self.index[fid]
                if self.dims[j] != c.dim - 1:
                    raise ValidationError(
                        f"cell {c.id!r} (dim {c.dim}) lists {fid!r} (dim {self.dims[j]}) in its boundary"
                    )
                if sign not in (1, -1) or isinstance(sign, bool):
                    raise ValidationError(f"incidence of {fid!r} in {c.id!r} must be +1 or -1, got {sign!r}")
                if j in seen:
                    raise ValidationError(f"duplicate incidence of {fid!r} in {c.id!r} (not regular)")
                seen.add(j)
                entries.append((j, sign))
            bd.append(tuple(sorted(entries)))
        self.boundary: tuple[tuple[tuple[int, int], ...], ...] = tuple(bd)

        cof: list[list[tuple[int, int]]] = [[] for _ in self.cells]
        for i, entries in enumerate(self.boundary):
            for j, s in entries:
                cof[j].append((i, s))
        self.coboundary: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(sorted(c)) for c in cof)

        if validate:
            self.validate()

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell_id) -> bool:
        return cell_id in self.index

    def __repr__(self) -> str:
        return f"CellComplex(dim={self.dimension}, f={self.f_vector()})"

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.cells)

    def cell(self, cell_id: str) -> CellRecord:
        return self.cells[self._idx(cell_id)]

    def dim_of(self, cell_id: str) -> int:
        return self.dims[self._idx(cell_id)]

    def _idx(self, cell_id: str) -> int:
        try:
            return self.index[cell_id]
        except KeyError:
            raise ValidationError(f"unknown cell {cell_id!r}") from None

    def cells_of_dim(self, k: int) -> list[int]:
        """Internal indices of the k-cells, in basis order."""
        return self._by_dim.get(k, [])

    @cached_property
    def _by_dim(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, k in enumerate(self.dims):
            out.setdefault(k, []).append(i)
        return out

    def f_vector(self) -> list[int]:
        return [len(self.cells_of_dim(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def boundary_of(self, cell_id: str) -> list[tuple[str, int]]:
        return [(self.cells[j].id, s) for j, s in self.boundary[self._idx(cell_id)]]

    def incidence(self, alpha: str, beta: str) -> int:
        """[alpha : beta], zero when beta is not a facet of alpha."""
        j = self._idx(beta)
        return dict(self.boundary[self._idx(alpha)]).get(j, 0)

    # -- face poset ----------------------------------------------------

    @cached_property
    def _closures(self) -> tuple[frozenset, ...]:
        out: list[frozenset] = []
        for i in range(len(self.cells)):
            # cells are sorted by dim, so facets are already done
            s = {i}
            for j, _ in self.boundary[i]:
                s |= out[j]
            out.append(frozenset(s))
        return tuple(out)

    @cached_property
    def _stars(self) -> tuple[frozenset, ...]:
        up: list[set] = [set() for _ in self.cells]
        for i, clos in enumerate(self._closures):
            for j in clos:
                up[j].add(i)
        return tuple(frozenset(s) for s in up)

    def closure_idx(self, i: int) -> frozenset:
        return self._closures[i]

    def star_idx(self, i: int) -> frozenset:
        return self._stars[i]

    def closure(self, cell_id: str) -> frozenset:
        """Ids of the cells in the closed cell (the down-set, inclusive)."""
        return frozenset(self.cells[j].id for j in self._closures[self._idx(cell_id)])

    def is_face(self, beta: str, alpha: str) -> bool:
        """True iff beta <= alpha in the face poset."""
        return self._idx(beta) in self._closures[self._idx(alpha)]

    def _star_complement_idx(self, i: int) -> frozenset:
        return frozenset(range(len(self.cells))) - self._stars[i]

    # -- validation ----------------------------------------------------

    def validate(self) -> None:
        """Check the necessary conditions for a regular CW complex.

        Incidences are +-1 without repeats (checked at construction), the
        augmented boundary squares to zero over Z, and the boundary of each
        k-cell has the rational homology of a (k-1)-sphere.  This does not
        recognise spheres, so some non-regular inputs can pass.
        """
        n = len(self.cells)
        for i in range(n):
            k = self.dims[i]
            if k == 1:
                if sum(s for _, s in self.boundary[i]) != 0:
                    raise ValidationError(f"augmented boundary of {self.cells[i].id!r} is not zero")
            if k >= 2:
                acc: dict[int, int] = {}
                for j, s in self.boundary[i]:
                    for m, t in self.boundary[j]:
                        acc[m] = acc.get(m, 0) + s * t
                bad = [self.cells[m].id for m, v in acc.items() if v]
                if bad:
                    raise ValidationError(f"boundary of boundary of {self.cells[i].id!r} is nonzero at {bad}")
        from .homology import reduced_betti_of_cells  # local import: homology depends on this module
        from .fields import Q

        for i in range(n):
            k = self.dims[i]
            if k == 0:
                continue
            rim = self._closures[i] - {i}
            betti = reduced_betti_of_cells(self, rim, Q, max_degree=k)
            expected = {k - 1: 1}
            if any(betti.get(q, 0) != expected.get(q, 0) for q in range(-1, k + 1)):
                raise ValidationError(
                    f"boundary of {self.cells[i].id!r} does not have the homology of S^{k - 1} "
                    f"(reduced Betti numbers {dict(sorted(betti.items()))}); complex is not regular"
                )

    # -- structural predicates ------------------------------------------

    def is_pure(self) -> bool:
        """Every cell is a face of some top-dimensional cell."""
        d = self.dimension
        if d < 0:
            return True
        covered: set[int] = set()
        for i in self.cells_of_dim(d):
            covered |= self._closures[i]
        return len(covered) == len(self.cells)

    def is_codim1_connected(self) -> bool:
        """The graph of d-cells joined through shared (d-1)-faces is connected."""
        if not self.is_pure():
            raise HypothesisError("codimension-one connectivity is only defined for pure complexes")
        d = self.dimension
        top = self.cells_of_dim(d)
        if not top:
            return False
        if d == 0:
            return len(top) == 1
        seen = {top[0]}
        queue = deque([top[0]])
        while queue:
            i = queue.popleft()
            for j, _ in self.boundary[i]:
                for t, _ in self.coboundary[j]:
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return len(seen) == len(top)

    def check_hypotheses(self) -> None:
        """Raise :class:`HypothesisError` unless pure and codim-1 connected."""
        if not self.is_pure():
            raise HypothesisError("complex is not pure")
        if not self.is_codim1_connected():
            raise HypothesisError("complex is not connected through codimension-one faces")

    # -- stars, skeleta, subcomplexes ------------------------------------

    def star(self, cell_id: str) -> frozenset:
        """Ids of the open cells whose closure contains the given cell."""
        return frozenset(self.cells[j].id for j in self._stars[self._idx(cell_id)])

    def star_complement(self, cell_id: str) -> "Subcomplex":
        """Subcomplex of cells whose closure misses the given cell."""
        i = self._idx(cell_id)
        return Subcomplex(self, frozenset(self.cells[j].id for j in self._star_complement_idx(i)))

    def skeleton(self, k: int) -> "Subcomplex":
        return Subcomplex(self, frozenset(c.id for c in self.cells if c.dim <= k))

    def full(self) -> "Subcomplex":
        return Subcomplex(self, frozenset(self.ids))

    def empty(self) -> "Subcomplex":
        return Subcomplex(self, frozenset())

    def restrict(self, cell_ids: Iterable[str]) -> "CellComplex":
        """The subcomplex on ``cell_ids`` as a standalone complex."""
        keep = set(cell_ids)
        Subcomplex(self, frozenset(keep))
        cells = [c for c in self.cells if c.id in keep]
        bd = {c.id: [f for f in self.boundary_of(c.id)] for c in cells}
        return CellComplex(cells, bd, validate=False)

    def relabel(self, mapping: Mapping[str, str]) -> "CellComplex":
        """Same complex with cell ids renamed through ``mapping``."""
        cells = [CellRecord(mapping[c.id], c.dim, c.label) for c in self.cells]
        bd = {mapping[c.id]: [(mapping[f], s) for f, s in self.boundary_of(c.id)] for c in self.cells}
        return CellComplex(cells, bd, validate=False)

    # -- posets and subdivision ------------------------------------------

    def face_poset(self, adjoin_top: bool = False) -> "RankedPoset":
        """Closed cells plus the empty cell, ranked by dim + 1.

        With ``adjoin_top`` a maximum covering every d-cell is added; that
        requires the complex to be pure and connected through codimension-one
        faces.
        """
        if adjoin_top:
            self.check_hypotheses()
        rank = {BOTTOM: 0}
        below: dict[str, frozenset] = {BOTTOM: frozenset()}
        for c, entries in zip(self.cells, self.boundary):
            rank[c.id] = c.dim + 1
            if c.dim == 0:
                below[c.id] = frozenset({BOTTOM})
            else:
                below[c.id] = frozenset(self.cells[j].id for j, _ in entries)
        top = None
        if adjoin_top:
            top = TOP
            rank[TOP] = self.dimension + 2
            below[TOP] = frozenset(self.cells[j].id for j in self.cells_of_dim(self.dimension))
        return RankedPoset(rank=rank, covers=below, bottom=BOTTOM, top=top)

    def barycentric_subdivision(self) -> tuple["CellComplex", dict[str, str]]:
        """Order complex of the face poset (without the empty cell).

        A k-simplex of the result is a chain ``s0 < s1 < ... < sk`` of cells,
        named by joining their ids with ``<``.  Returns the subdivision and the
        carrier map sending each new cell to the largest cell of its chain.
        """
        n = len(self.cells)
        above: list[list[int]] = [sorted(self._stars[i] - {i}) for i in range(n)]
        chains: list[tuple[int, ...]] = []
        stack = [(i,) for i in reversed(range(n))]
        while stack:
            ch = stack.pop()
            chains.append(ch)
            for t in reversed(above[ch[-1]]):
                stack.append(ch + (t,))

        def name(ch):
            return "<".join(self.cells[i].id for i in ch)

        cells = [CellRecord(name(ch), len(ch) - 1) for ch in chains]
        bd = {}
        for ch in chains:
            if len(ch) > 1:
                bd[name(ch)] = [(name(ch[:i] + ch[i + 1:]), (-1) ** i) for i in range(len(ch))]
        carrier = {name(ch): self.cells[ch[-1]].id for ch in chains}
        return CellComplex(cells, bd, validate=False), carrier


@dataclass(frozen=True)
class Subcomplex:
    """A downward-closed set of cells of ``parent``."""

    parent: CellComplex
    cells: frozenset

    def __post_init__(self):
        X = self.parent
        unknown = [c for c in self.cells if c not in X.index]
        if unknown:
            raise ValidationError(f"unknown cells in subcomplex: {sorted(unknown)[:5]}")
        for c in self.cells:
            for f, _ in X.boundary_of(c):
                if f not in self.cells:
                    raise ValidationError(f"not a subcomplex: {c!r} is present but its face {f!r} is not")

    def __contains__(self, cell_id) -> bool:
        return cell_id in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def indices(self) -> frozenset:
        return frozenset(self.parent.index[c] for c in self.cells)

    def as_complex(self) -> CellComplex:
        return self.parent.restrict(self.cells)


@dataclass
class RankedPoset:
    """A finite ranked poset given by its cover relation.

    ``covers[x]`` is the set of elements immediately below ``x``.
    """

    rank: dict
    covers: dict
    bottom: str
    top: str | None = None

    def __post_init__(self):
        if self.rank.get(self.bottom) != 0:
            raise ValidationError("the minimum must have rank 0")
        for x, below in self.covers.items():
            for y in below:
                if self.rank[x] - self.rank[y] != 1:
                    raise ValidationError(f"cover {y!r} < {x!r} does not raise rank by one")
        if self.top is not None:
            r = self.rank[self.top]
            maximal = {x for x in self.rank if x != self.top and self.rank[x] == r - 1}
            if set(self.covers[self.top]) != maximal:
                raise ValidationError("the adjoined maximum must cover exactly the maximal-rank elements")

    @property
    def elements(self) -> list:
        return sorted(self.rank, key=lambda x: (self.rank[x], x))

    def __len__(self) -> int:
        return len(self.rank)

    def s1(self, x) -> frozenset:
        """Elements immediately below ``x``."""
        return frozenset(self.covers[x])

    @cached_property
    def _downsets(self) -> dict:
        out: dict = {}
        for x in self.elements:
            s = {x}
            for y in self.covers[x]:
                s |= out[y]
            out[x] = frozenset(s)
        return out

    def leq(self, x, y) -> bool:
        return x in self._downsets[y]

    def height(self) -> int:
        return max(self.rank.values())
