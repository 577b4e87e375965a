"""The quadratic algebra R(P) of a ranked poset, its quadratic dual, and a
Hilbert-series check.

Multiplication convention: in a product ``r_x r_y`` the left factor is the
higher one, so the surviving degree-2 monomials are the covers ``y < x``
and nonzero words read down the poset from left to right.

A presentation keeps monomial relations implicitly as a set of forbidden
generator pairs.  Graded pieces are computed on the basis of words with no
forbidden adjacent pair, modulo the two-sided span of the remaining
relations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .complex import CellComplex, RankedPoset
from .errors import BlowupError
from .fields import Field, Q, parse_field
from .linalg import Matrix, kernel_basis, rref, sparse_rank

DEFAULT_WORD_CAP = 2_000_000


def word_cap() -> int:
    raw = os.environ.get("KOSZUL_WORD_CAP")
    return int(raw) if raw else DEFAULT_WORD_CAP


@dataclass
class QuadraticPresentation:
    """Generators plus a basis of the degree-2 relation space.

    ``monomials`` holds forbidden pairs ``(i, j)`` (each is a relation
    ``g_i g_j``); ``relations`` are further relations as ``{(i, j): coeff}``
    supported away from the monomials and linearly independent.
    """

    generators: list
    monomials: frozenset
    relations: list
    field: Field = Q

    def __post_init__(self):
        self.monomials = frozenset(self.monomials)
        for rel in self.relations:
            bad = [p for p in rel if p in self.monomials]
            if bad:
                raise ValueError(f"relation touches monomial pairs {bad[:3]}")
        if self.relations:
            pairs = sorted({p for rel in self.relations for p in rel})
            if sparse_rank(self._relation_columns(pairs), self.field) != len(self.relations):
                raise ValueError("relations are linearly dependent")

    def _relation_columns(self, pairs):
        pos = {p: i for i, p in enumerate(pairs)}
        return [{pos[p]: self.field(c) for p, c in rel.items()} for rel in self.relations]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def relation_dimension(self) -> int:
        return len(self.monomials) + len(self.relations)

    def allowed(self, i: int, j: int) -> bool:
        return (i, j) not in self.monomials

    def relation_span(self) -> Matrix:
        """All relations as rows over the full basis of ordered pairs."""
        g = self.ngens
        F = self.field
        rows = []
        for i, j in sorted(self.monomials):
            row = [F.zero] * (g * g)
            row[i * g + j] = F.one
            rows.append(row)
        for rel in self.relations:
            row = [F.zero] * (g * g)
            for (i, j), c in rel.items():
                row[i * g + j] = F(c)
            rows.append(row)
        return Matrix.from_rows(F, rows, ncols=g * g)

    def is_binomial(self) -> bool:
        """Every explicit relation is c*(m - m') for two monomials."""
        F = self.field
        for rel in self.relations:
            if len(rel) != 2:
                return False
            a, b = (F(c) for c in rel.values())
            if F.add(a, b) != F.zero:
                return False
        return True

    def to_json(self) -> dict:
        g = self.generators
        return {
            "generators": list(g),
            "monomial_relations": [[g[i], g[j]] for i, j in sorted(self.monomials)],
            "relations": [
                [{"left": g[i], "right": g[j], "coeff": str(c)} for (i, j), c in sorted(rel.items())]
                for rel in self.relations
            ],
        }


def presentation(P: RankedPoset, F: Field | str = Q) -> QuadraticPresentation:
    """Presentation of R(P): r_x r_y = 0 unless y is covered by x, and
    r_x (sum of r_z over z covered by x) = 0.

    For rank-one x the only element below is the minimum, which is not a
    generator, so the sum relation is empty and dropped.
    """
    F = parse_field(F)
    gens = [x for x in P.elements if x != P.bottom]
    pos = {x: i for i, x in enumerate(gens)}
    monomials = set()
    relations = []
    for x in gens:
        below = {pos[z] for z in P.s1(x) if z != P.bottom}
        i = pos[x]
        for j in range(len(gens)):
            if j not in below:
                monomials.add((i, j))
        if len(below) == 1:
            monomials.add((i, next(iter(below))))
        elif below:
            relations.append({(i, j): F.one for j in sorted(below)})
    return QuadraticPresentation(gens, frozenset(monomials), relations, F)


def algebra_of_complex(X: CellComplex, F: Field | str = Q) -> QuadraticPresentation:
    """R(X) = R(P-hat(X))."""
    return presentation(X.face_poset(adjoin_top=True), F)


def quadratic_dual(Qp: QuadraticPresentation) -> QuadraticPresentation:
    """Dual presentation: relations are the annihilator of the relation space
    under the pairing of ordered pairs with dual ordered pairs."""
    F = Qp.field
    g = Qp.ngens
    allowed = [(i, j) for i in range(g) for j in range(g) if (i, j) not in Qp.monomials]
    touched = sorted({p for rel in Qp.relations for p in rel})
    touched_set = set(touched)
    new_monomials = frozenset(p for p in allowed if p not in touched_set)
    new_relations = []
    if touched:
        M = Matrix.from_rows(
            F,
            [[F(rel.get(p, 0)) for p in touched] for rel in Qp.relations],
            ncols=len(touched),
        )
        K = kernel_basis(M)
        for t in range(K.ncols):
            vec = {touched[r]: K.rows[r][t] for r in range(K.nrows) if K.rows[r][t] != 0}
            new_relations.append(vec)
    return QuadraticPresentation(list(Qp.generators), new_monomials, new_relations, F)


def _allowed_words(Qp: QuadraticPresentation, N: int, cap: int) -> list[list[tuple]]:
    g = Qp.ngens
    succ = [[j for j in range(g) if Qp.allowed(i, j)] for i in range(g)]
    words = [[()], [(i,) for i in range(g)]]
    for n in range(2, N + 1):
        total = sum(len(succ[w[-1]]) for w in words[-1])
        if total > cap:
            raise BlowupError(f"{total} words in degree {n} exceed the cap of {cap} (set KOSZUL_WORD_CAP)")
        words.append([w + (j,) for w in words[-1] for j in succ[w[-1]]])
    return words[: N + 1]


def _linear_dims(Qp: QuadraticPresentation, F: Field, N: int, cap: int) -> list[int]:
    words = _allowed_words(Qp, N, cap)
    dims = [len(w) for w in words]
    by_pair: dict = {}
    for r, rel in enumerate(Qp.relations):
        for p in rel:
            by_pair.setdefault(p, []).append(r)
    rels = [{p: F(c) for p, c in rel.items()} for rel in Qp.relations]
    for n in range(2, N + 1):
        index = {w: t for t, w in enumerate(words[n])}
        seen = set()
        columns = []
        for w in words[n]:
            for i in range(n - 1):
                for r in by_pair.get((w[i], w[i + 1]), ()):
                    key = (i, r, w[:i], w[i + 2:])
                    if key in seen:
                        continue
                    seen.add(key)
                    u, v = w[:i], w[i + 2:]
                    col = {}
                    for (a, b), c in rels[r].items():
                        t = index.get(u + (a, b) + v)
                        if t is not None:
                            col[t] = c
                    columns.append(col)
        dims[n] -= sparse_rank(columns, F)
    return dims


def _binomial_dims(Qp: QuadraticPresentation, N: int, cap: int) -> list[int]:
    """Degree pieces when the only relations are differences of monomials.

    The relation span in degree n is spanned by differences of words, so
    the quotient dimension is the number of connected components of the
    graph joining words related by one rewrite.
    """
    g = Qp.ngens
    dims = [1, g][: N + 1]
    swaps = [(rel_pairs[0], rel_pairs[1]) for rel_pairs in (sorted(rel) for rel in Qp.relations)]
    for n in range(2, N + 1):
        total = g ** n
        if total > cap:
            raise BlowupError(f"{total} words in degree {n} exceed the cap of {cap} (set KOSZUL_WORD_CAP)")
        src, dst = [], []
        for i in range(n - 1):
            pre = np.arange(g ** i, dtype=np.int64) * g ** (n - i)
            suf = np.arange(g ** (n - i - 2), dtype=np.int64)
            base = (pre[:, None] + suf[None, :]).ravel()
            scale = g ** (n - i - 2)
            for (a, b), (c, d) in swaps:
                src.append(base + (a * g + b) * scale)
                dst.append(base + (c * g + d) * scale)
        if src:
            s = np.concatenate(src)
            t = np.concatenate(dst)
            graph = coo_matrix((np.ones(len(s), dtype=np.int8), (s, t)), shape=(total, total))
            ncomp, _ = connected_components(graph, directed=False)
        else:
            ncomp = total
        dims.append(int(ncomp))
    return dims


def graded_dimensions(Qp: QuadraticPresentation, F: Field | str | None = None, N: int = 4, cap: int | None = None) -> list[int]:
    """dim R_0, ..., dim R_N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    F = Qp.field if F is None else parse_field(F)
    cap = word_cap() if cap is None else cap
    if N <= 1:
        return [1, Qp.ngens][: N + 1]
    if not Qp.monomials and Qp.relations and Qp.is_binomial():
        return _binomial_dims(Qp, N, cap)
    return _linear_dims(Qp, F, N, cap)


def naive_graded_dimensions(Qp: QuadraticPresentation, N: int) -> list[int]:
    """Brute force on the full tensor powers, every relation explicit.

    Exponential in N; only for cross-checking small presentations.
    """
    F = Qp.field
    g = Qp.ngens
    R2 = Qp.relation_span()
    dims = [1, g][: N + 1]
    for n in range(2, N + 1):
        words = list(product(range(g), repeat=n))
        index = {w: t for t, w in enumerate(words)}
        rows = []
        for i in range(n - 1):
            for u in product(range(g), repeat=i):
                for v in product(range(g), repeat=n - 2 - i):
                    for rel in R2.rows:
                        row = [F.zero] * len(words)
                        for pidx, c in enumerate(rel):
                            if c != 0:
                                a, b = divmod(pidx, g)
                                row[index[u + (a, b) + v]] = c
                        rows.append(row)
        rank = rref(Matrix.from_rows(F, rows, ncols=len(words)))[2] if rows else 0
        dims.append(len(words) - rank)
    return dims


@dataclass
class HilbertProbe:
    N: int
    dims_R: list
    dims_dual: list
    deviations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c == 0 for c in self.deviations)

    def to_json(self) -> dict:
        return {
            "dims_R": self.dims_R,
            "dims_dual": self.dims_dual,
            "probe": {"N": self.N, "deviations": self.deviations, "pass": self.passed},
        }


def series_deviation(dims_R: list[int], dims_dual: list[int], N: int) -> list[int]:
    """Coefficients of H_dual(t) * H_R(-t) - 1 through t^N."""
    out = []
    for n in range(N + 1):
        c = sum(dims_dual[i] * (-1) ** (n - i) * dims_R[n - i] for i in range(n + 1))
        out.append(c - (1 if n == 0 else 0))
    return out


def hilbert_probe(X: CellComplex, F: Field | str = Q, N: int = 4, cap: int | None = None) -> HilbertProbe:
    """Compare graded dimensions of R(X) and its dual through degree N.

    A Koszul algebra has H_dual(t) H_R(-t) = 1; nonzero deviations rule
    Koszulity out, zero deviations are only consistent with it.
    """
    F = parse_field(F)
    Qp = algebra_of_complex(X, F)
    dims_R = graded_dimensions(Qp, F, N, cap)
    dims_dual = graded_dimensions(quadratic_dual(Qp), F, N, cap)
    return HilbertProbe(N, dims_R, dims_dual, series_deviation(dims_R, dims_dual, N))
