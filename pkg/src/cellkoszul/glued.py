"""Regular cell complexes obtained by gluing simplices along faces.

Faces are keyed by ``(simplex index, positions)`` with positions increasing.
Each identification maps one ordered face onto another vertex by vertex and
is applied to every subface.  The union-find carries, for each face, the
bijection from its vertices onto those of its class representative, so a
chain of identifications that would glue a face to itself with a twist is
caught instead of silently producing a non-regular cell.

Faces spanned by the same set of vertex *names* are glued automatically
(name to name), which is how ordinary simplicial complexes are entered.
Faces whose names only coincide after explicit identifications stay
distinct cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .complex import CellComplex, CellRecord
from .errors import ValidationError


@dataclass
class GluedSimplicialSpec:
    simplices: list
    identifications: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "format": "glued-simplicial/v1",
            "simplices": [list(s) for s in self.simplices],
            "identifications": [[list(a), list(b)] for a, b in self.identifications],
        }


def _parity(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _FaceUnionFind:
    """Union-find on face keys with a vertex bijection to the parent.

    ``link[x] = (parent, t)`` where ``t[a]`` is the position, in the
    parent's canonical vertex order, of vertex ``a`` of ``x``.
    """

    def __init__(self):
        self.link: dict = {}

    def add(self, key, size):
        if key not in self.link:
            self.link[key] = (key, tuple(range(size)))

    def find(self, key):
        parent, t = self.link[key]
        if parent == key:
            return key, t
        root, t_parent = self.find(parent)
        composed = tuple(t_parent[a] for a in t)
        self.link[key] = (root, composed)
        return root, composed

    def union(self, x, y, t_xy):
        rx, tx = self.find(x)
        ry, ty = self.find(y)
        inv_tx = [0] * len(tx)
        for a, b in enumerate(tx):
            inv_tx[b] = a
        # vertex u of rx -> vertex inv_tx[u] of x -> t_xy of y -> ty in ry
        rel = tuple(ty[t_xy[inv_tx[u]]] for u in range(len(tx)))
        if rx == ry:
            if rel != tuple(range(len(rel))):
                return False
            return True
        if ry < rx:
            inv = [0] * len(rel)
            for a, b in enumerate(rel):
                inv[b] = a
            self.link[ry] = (rx, tuple(inv))
        else:
            self.link[rx] = (ry, rel)
        return True


def _face_key(s: int, positions: Sequence[int]):
    ordered = tuple(sorted(positions))
    return (s, ordered), tuple(ordered.index(p) for p in positions)


def build_glued_simplicial(spec: GluedSimplicialSpec | dict, validate: bool = True) -> CellComplex:
    """Quotient of a disjoint union of simplices by face identifications.

    Cells are the classes of simplex faces.  A class is named by the vertex
    names of its first face in input order, joined with ``-``, and takes
    that face's vertex order as its orientation, so the facet dropping the
    i-th vertex has incidence ``(-1)**i`` up to the orientation of the
    facet's own class.
    """
    if isinstance(spec, dict):
        spec = GluedSimplicialSpec(spec.get("simplices", []), spec.get("identifications", []))
    simplices = [tuple(str(v) for v in s) for s in spec.simplices]
    for s in simplices:
        if not s:
            raise ValidationError("empty simplex in input")
        if len(set(s)) != len(s):
            raise ValidationError(f"simplex {list(s)} repeats a vertex")

    uf = _FaceUnionFind()
    for si, s in enumerate(simplices):
        for r in range(1, len(s) + 1):
            for pos in combinations(range(len(s)), r):
                uf.add((si, pos), r)

    by_names: dict[frozenset, list] = {}
    where: dict[str, list] = {}
    for si, s in enumerate(simplices):
        for pos, v in enumerate(s):
            where.setdefault(v, []).append((si, pos))
        for r in range(1, len(s) + 1):
            for pos in combinations(range(len(s)), r):
                by_names.setdefault(frozenset(s[p] for p in pos), []).append((si, pos))

    def locate(names: Sequence[str]):
        """Ordered positions of a named face inside the first simplex that has it."""
        names = tuple(str(v) for v in names)
        if len(set(names)) != len(names):
            raise ValidationError(f"identified face {list(names)} repeats a vertex")
        hits = by_names.get(frozenset(names))
        if not hits:
            raise ValidationError(f"identified face {list(names)} is not a face of any simplex")
        si = hits[0][0]
        s = simplices[si]
        return si, [s.index(v) for v in names]

    def glue(si, pos_a, sj, pos_b, what):
        for r in range(1, len(pos_a) + 1):
            for sub in combinations(range(len(pos_a)), r):
                pa = [pos_a[i] for i in sub]
                pb = [pos_b[i] for i in sub]
                ka, oa = _face_key(si, pa)
                kb, ob = _face_key(sj, pb)
                # oa[i] is the canonical slot of the i-th listed vertex of a
                t = [0] * r
                for i in range(r):
                    t[oa[i]] = ob[i]
                if not uf.union(ka, kb, tuple(t)):
                    raise ValidationError(
                        f"{what} glues a face onto itself with a nontrivial vertex map "
                        "(inconsistent orientation or collapsed simplex)"
                    )

    for names, keys in by_names.items():
        base_si, base_pos = keys[0]
        base_names = [simplices[base_si][p] for p in base_pos]
        for sj, pos in keys[1:]:
            s = simplices[sj]
            glue(base_si, list(base_pos), sj, [s.index(v) for v in base_names], f"shared vertex names {sorted(names)}")

    for pair in spec.identifications:
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise ValidationError(f"identification must be a pair of vertex tuples, got {pair!r}") from None
        if len(a) != len(b):
            raise ValidationError(f"identified faces {list(a)} and {list(b)} have different sizes")
        si, pa = locate(a)
        sj, pb = locate(b)
        glue(si, pa, sj, pb, f"identification {list(a)} ~ {list(b)}")

    classes: dict = {}
    for key in uf.link:
        root, t = uf.find(key)
        classes.setdefault(root, []).append((key, t))

    # every face of one input simplex must land in a different class
    for si, s in enumerate(simplices):
        roots = {}
        for r in range(1, len(s) + 1):
            for pos in combinations(range(len(s)), r):
                root, _ = uf.find((si, pos))
                if root in roots:
                    raise ValidationError(
                        f"faces {[s[p] for p in roots[root]]} and {[s[p] for p in pos]} of simplex "
                        f"{list(s)} are identified; the quotient is not regular"
                    )
                roots[root] = pos

    # representative: first face in input order; orientation relative to it
    rep = {}
    for root, members in classes.items():
        key, t = min(members)
        rep[root] = (key, t)

    def cell_name(root):
        (si, pos), _ = rep[root]
        return "-".join(simplices[si][p] for p in pos)

    def orientation(key):
        """Sign of the face's canonical order against its class orientation,
        plus the class root."""
        root, t = uf.find(key)
        _, t_rep = rep[root]
        inv_rep = [0] * len(t_rep)
        for a, b in enumerate(t_rep):
            inv_rep[b] = a
        return root, _parity([inv_rep[t[a]] for a in range(len(t))])

    names = {root: cell_name(root) for root in classes}
    if len(set(names.values())) != len(names):
        raise ValidationError("cell naming collision; rename input vertices")

    cells = []
    boundary = {}
    for root in sorted(classes, key=lambda r: rep[r][0]):
        (si, pos), _ = rep[root]
        dim = len(pos) - 1
        cells.append(CellRecord(names[root], dim))
        if dim == 0:
            continue
        entries = []
        for i in range(len(pos)):
            facet = pos[:i] + pos[i + 1:]
            froot, fsign = orientation((si, facet))
            entries.append((names[froot], (-1) ** i * fsign))
        boundary[names[root]] = entries
    return CellComplex(cells, boundary, validate=validate)
