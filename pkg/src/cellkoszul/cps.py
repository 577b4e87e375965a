"""The bicomplex of incident cell pairs and its cohomology groups H^n_k.

C^n_k is spanned by pairs ``alpha (x) beta`` with ``alpha`` an n-cell and
``beta`` a k-cell lying in the closed cell ``alpha``.  The diagonal pairs
``alpha (x) alpha`` are included: for fixed ``beta`` the pairs then span the
relative cochains of (X, X - st(beta)), and without them a single simplex
already has nonvanishing groups below the top degree.  The lowering
differential acts on ``beta`` by the boundary, the raising one on
``alpha`` by the coboundary, and the two commute.  L^*_k is the cochain
complex of cokernels of the lowering map into C^*_k, and H^n_k is its
cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import CellComplex
from .errors import IllDefinedMapError
from .fields import Field, parse_field
from .homology import GradedComplex
from .linalg import Matrix, QuotientSpace, SparseMatrix, cokernel, induced_map


@dataclass
class CPSBicomplex:
    complex: CellComplex
    field: Field
    basis: dict      # (n, k) -> list of (alpha index, beta index)
    lower: dict      # (n, k) -> SparseMatrix C^n_k -> C^n_{k-1}
    raise_: dict     # (n, k) -> SparseMatrix C^n_k -> C^{n+1}_k

    @property
    def dimension(self) -> int:
        return self.complex.dimension

    def size(self, n: int, k: int) -> int:
        return len(self.basis.get((n, k), ()))

    def _zero(self, rows: int, cols: int) -> SparseMatrix:
        return SparseMatrix(self.field, rows, cols)

    def d(self, n: int, k: int) -> SparseMatrix:
        """Lowering map C^n_k -> C^n_{k-1} (zero outside the stored range)."""
        m = self.lower.get((n, k))
        return m if m is not None else self._zero(self.size(n, k - 1), self.size(n, k))

    def delta(self, n: int, k: int) -> SparseMatrix:
        """Raising map C^n_k -> C^{n+1}_k."""
        m = self.raise_.get((n, k))
        return m if m is not None else self._zero(self.size(n + 1, k), self.size(n, k))

    def audit(self) -> dict[str, bool]:
        """Check d.d = 0, delta.delta = 0 and d.delta = delta.d on every bidegree."""
        D = self.dimension
        dd = dt = comm = True
        for n in range(D + 1):
            for k in range(n + 1):
                if k >= 2 and not (self.d(n, k - 1) @ self.d(n, k)).is_zero():
                    dd = False
                if n + 2 <= D and not (self.delta(n + 1, k) @ self.delta(n, k)).is_zero():
                    dt = False
                if k >= 1 and n + 1 <= D:
                    lhs = self.d(n + 1, k) @ self.delta(n, k)
                    rhs = self.delta(n, k - 1) @ self.d(n, k)
                    if lhs != rhs:
                        comm = False
        return {"dd": dd, "delta_delta": dt, "commute": comm}


def build_bicomplex(X: CellComplex, F: Field | str) -> CPSBicomplex:
    F = parse_field(F)
    D = X.dimension
    basis: dict = {}
    for n in range(D + 1):
        for k in range(n + 1):
            basis[(n, k)] = []
    for a in range(len(X)):
        n = X.dims[a]
        for b in sorted(X.closure_idx(a)):
            basis[(n, X.dims[b])].append((a, b))
    pos = {key: {pair: i for i, pair in enumerate(pairs)} for key, pairs in basis.items()}

    lower = {}
    raise_ = {}
    for (n, k), pairs in basis.items():
        if k >= 1:
            target = pos[(n, k - 1)]
            cols = []
            for a, b in pairs:
                col = {}
                for t, s in X.boundary[b]:
                    col[target[(a, t)]] = F(s)
                cols.append(col)
            lower[(n, k)] = SparseMatrix(F, len(target), len(pairs), cols)
        if n + 1 <= D:
            target = pos[(n + 1, k)]
            cols = []
            for a, b in pairs:
                col = {}
                for g, s in X.coboundary[a]:
                    assert (g, b) in target, "coboundary left the admissible pairs"
                    col[target[(g, b)]] = F(s)
                cols.append(col)
            raise_[(n, k)] = SparseMatrix(F, len(target), len(pairs), cols)
    return CPSBicomplex(X, F, basis, lower, raise_)


@dataclass
class LComplex:
    """L^*_k: quotients L^n_k and the induced raising maps between them."""

    k: int
    field: Field
    quotients: dict   # n -> QuotientSpace
    maps: dict        # n -> Matrix L^n_k -> L^{n+1}_k

    def as_graded(self) -> GradedComplex:
        basis = {n: list(range(q.dim)) for n, q in self.quotients.items()}
        maps = {n: m.to_sparse() for n, m in self.maps.items()}
        return GradedComplex(self.field, "cochain", basis, maps)

    def betti(self) -> dict[int, int]:
        return self.as_graded().betti()


def L_complex(B: CPSBicomplex, k: int) -> LComplex:
    """Cokernel complex built with explicit quotient bases (dense route)."""
    D = B.dimension
    if not 0 <= k <= max(D, 0):
        raise ValueError(f"k={k} outside 0..{D}")
    quotients: dict[int, QuotientSpace] = {}
    for n in range(k, D + 1):
        quotients[n] = cokernel(B.d(n, k + 1).to_dense() if B.size(n, k + 1) else Matrix(B.field, B.size(n, k), 0))
    maps = {}
    for n in range(k, D):
        try:
            maps[n] = induced_map(B.delta(n, k).to_dense(), quotients[n], quotients[n + 1])
        except IllDefinedMapError as exc:
            raise IllDefinedMapError(f"raising map does not descend to L^{n}_{k}; bicomplex is inconsistent") from exc
    return LComplex(k, B.field, quotients, maps)


@dataclass
class CPSCohomologyTable:
    field: str
    dimension: int
    entries: dict  # (n, k) -> dim

    def __getitem__(self, nk) -> int:
        return self.entries.get(tuple(nk), 0)

    def nonvanishing(self, strict: bool = True) -> list[tuple[int, int]]:
        """(n, k) with H^n_k != 0 and 0 <= k < n < d, in lexicographic order."""
        d = self.dimension
        return sorted(
            (n, k) for (n, k), v in self.entries.items()
            if v and (not strict or (0 <= k < n < d))
        )

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "entries": [{"n": n, "k": k, "dim": v} for (n, k), v in sorted(self.entries.items())],
        }


class _RankCache:
    def __init__(self, B: CPSBicomplex):
        self.B = B
        self._cache: dict = {}

    def rank_d(self, n: int, k: int) -> int:
        key = ("d", n, k)
        if key not in self._cache:
            self._cache[key] = self.B.d(n, k).rank() if self.B.size(n, k) and self.B.size(n, k - 1) else 0
        return self._cache[key]

    def rank_delta_mod_image(self, n: int, k: int) -> int:
        """Rank of the induced map L^n_k -> L^{n+1}_k."""
        key = ("dbar", n, k)
        if key not in self._cache:
            B = self.B
            if B.size(n, k) == 0 or B.size(n + 1, k) == 0:
                r = 0
            else:
                image = B.d(n + 1, k + 1)
                stacked = image.hstack(B.delta(n, k)) if image.ncols else B.delta(n, k)
                r = stacked.rank() - self.rank_d(n + 1, k + 1)
            self._cache[key] = r
        return self._cache[key]


def cps_table(X: CellComplex | CPSBicomplex, F: Field | str | None = None) -> CPSCohomologyTable:
    """dim H^n_k for all 0 <= k <= n <= d.

    Uses ranks only: dim L^n_k = dim C^n_k - rank d, and the induced map on
    cokernels has rank rank[delta | image of d] - rank(image of d).
    """
    if isinstance(X, CPSBicomplex):
        B = X
    else:
        B = build_bicomplex(X, F)
    D = B.dimension
    rc = _RankCache(B)
    entries = {}
    for k in range(D + 1):
        for n in range(k, D + 1):
            dim_L = B.size(n, k) - rc.rank_d(n, k + 1)
            out = rc.rank_delta_mod_image(n, k) if n < D else 0
            inc = rc.rank_delta_mod_image(n - 1, k) if n - 1 >= k else 0
            entries[(n, k)] = dim_L - out - inc
    return CPSCohomologyTable(B.field.name, D, entries)


def cps_table_via_quotients(X: CellComplex | CPSBicomplex, F: Field | str | None = None) -> CPSCohomologyTable:
    """Same table through explicit quotient spaces; slower, used as a cross-check."""
    B = X if isinstance(X, CPSBicomplex) else build_bicomplex(X, F)
    D = B.dimension
    entries = {}
    for k in range(D + 1):
        betti = L_complex(B, k).betti()
        for n in range(k, D + 1):
            entries[(n, k)] = betti.get(n, 0)
    return CPSCohomologyTable(B.field.name, D, entries)
