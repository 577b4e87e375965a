"""Exact matrices over a :class:`~cellkoszul.fields.Field`.

Two representations are used.  :class:`Matrix` is dense (a list of rows) and
backs the reduced-echelon, kernel and quotient constructions.
:class:`SparseMatrix` stores columns as ``{row: value}`` dicts and is what
boundary and coboundary operators are built from; its :meth:`rank` is the
workhorse of every homology computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import IllDefinedMapError
from .fields import Field, PrimeField


class Matrix:
    """Dense matrix with entries in a single field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[field.zero] * ncols for _ in range(nrows)]
        else:
            rows = [[field(x) for x in row] for row in rows]
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError("row data does not match the declared shape")
        self.rows = rows

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.rows[i][j] = self.field(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field.name}, {self.nrows}x{self.ncols}, {self.rows!r})"

    def copy(self) -> "Matrix":
        m = Matrix(self.field, self.nrows, self.ncols)
        m.rows = [list(r) for r in self.rows]
        return m

    def transpose(self) -> "Matrix":
        m = Matrix(self.field, self.ncols, self.nrows)
        m.rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return m

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise TypeError("mixed-field matrix product")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out = Matrix(F, self.nrows, other.ncols)
        cols = other.transpose().rows
        for i, row in enumerate(self.rows):
            nz = [(k, a) for k, a in enumerate(row) if a != 0]
            out_row = out.rows[i]
            for j, col in enumerate(cols):
                s = F.zero
                for k, a in nz:
                    b = col[k]
                    if b != 0:
                        s = F.add(s, F.mul(a, b))
                out_row[j] = s
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        m = Matrix(self.field, self.nrows, self.ncols + other.ncols)
        m.rows = [a + b for a, b in zip(self.rows, other.rows)]
        return m

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        m = Matrix(self.field, self.nrows, len(cols))
        m.rows = [[row[j] for j in cols] for row in self.rows]
        return m

    def to_sparse(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x != 0:
                    cols[j][i] = x
        return SparseMatrix(self.field, self.nrows, self.ncols, cols)

    def rank(self) -> int:
        return rref(self)[2]


@dataclass
class SparseMatrix:
    """Column-sparse matrix: ``cols[j]`` maps row index to a nonzero value."""

    field: Field
    nrows: int
    ncols: int
    cols: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.cols:
            self.cols = [dict() for _ in range(self.ncols)]
        if len(self.cols) != self.ncols:
            raise ValueError("column data does not match the declared shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def to_dense(self) -> Matrix:
        m = Matrix(self.field, self.nrows, self.ncols)
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                m.rows[i][j] = x
        return m

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.field, self.ncols, self.nrows, cols)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.field != other.field:
            raise TypeError("mixed-field matrix product")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, b in col.items():
                for i, a in self.cols[k].items():
                    acc[i] = F.add(acc.get(i, F.zero), F.mul(a, b))
            out.append({i: x for i, x in acc.items() if x != 0})
        return SparseMatrix(F, self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def rank(self) -> int:
        return sparse_rank(self.cols, self.field)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return SparseMatrix(self.field, self.nrows, self.ncols + other.ncols, list(self.cols) + list(other.cols))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.cols == other.cols
        )


def sparse_rank(columns: Iterable[dict], field: Field) -> int:
    """Rank of the span of sparse column vectors.

    Columns are reduced one at a time against a table of normalized pivot
    columns keyed by their largest row index.
    """
    pivots: dict = {}
    if isinstance(field, PrimeField):
        p = field.p
        for col in columns:
            if not col:
                continue
            v = dict(col)
            while v:
                r = max(v)
                piv = pivots.get(r)
                if piv is None:
                    inv = pow(v[r], -1, p)
                    pivots[r] = {i: x * inv % p for i, x in v.items()}
                    break
                c = v[r]
                for i, x in piv.items():
                    y = (v.get(i, 0) - c * x) % p
                    if y:
                        v[i] = y
                    else:
                        v.pop(i, None)
    else:
        for col in columns:
            if not col:
                continue
            v = dict(col)
            while v:
                r = max(v)
                piv = pivots.get(r)
                if piv is None:
                    inv = field.inv(v[r])
                    pivots[r] = {i: x * inv for i, x in v.items()}
                    break
                c = v[r]
                for i, x in piv.items():
                    y = v.get(i, field.zero) - c * x
                    if y:
                        v[i] = y
                    else:
                        v.pop(i, None)
    return len(pivots)


def rref(M: Matrix) -> tuple[Matrix, list[int], int]:
    """Gauss-Jordan reduction: returns (reduced form, pivot columns, rank)."""
    F = M.field
    R = M.copy()
    rows = R.rows
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        if r == M.nrows:
            break
        pr = next((i for i in range(r, M.nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(x, inv) for x in rows[r]]
        prow = rows[r]
        for i in range(M.nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return R, pivots, len(pivots)


def kernel_basis(M: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``M``."""
    F = M.field
    R, pivots, rank = rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    K = Matrix(F, M.ncols, len(free))
    for t, j in enumerate(free):
        K.rows[j][t] = F.one
        for i, pc in enumerate(pivots):
            K.rows[pc][t] = F.neg(R.rows[i][j])
    return K


@dataclass
class QuotientSpace:
    """``F^ambient`` modulo the column space of ``subspace``.

    ``complement`` lists the ambient coordinates whose unit vectors form the
    chosen basis of the quotient; ``projection`` expresses any ambient vector
    in that basis.
    """

    ambient: int
    subspace: Matrix
    complement: list[int]
    projection: Matrix

    @property
    def dim(self) -> int:
        return len(self.complement)

    @property
    def field(self) -> Field:
        return self.projection.field

    def inclusion(self) -> Matrix:
        """Ambient coordinates of the complement basis vectors."""
        F = self.field
        m = Matrix(F, self.ambient, self.dim)
        for t, j in enumerate(self.complement):
            m.rows[j][t] = F.one
        return m


def cokernel(M: Matrix) -> QuotientSpace:
    """Quotient of the codomain of ``M`` by its column space."""
    F = M.field
    m = M.nrows
    R, pivots, rank = rref(M.transpose())
    pivot_set = set(pivots)
    complement = [j for j in range(m) if j not in pivot_set]
    pos = {j: t for t, j in enumerate(complement)}
    P = Matrix(F, len(complement), m)
    for j in complement:
        P.rows[pos[j]][j] = F.one
    for i, pc in enumerate(pivots):
        row = R.rows[i]
        for j in complement:
            if row[j] != 0:
                P.rows[pos[j]][pc] = F.neg(row[j])
    return QuotientSpace(ambient=m, subspace=M, complement=complement, projection=P)


def induced_map(f: Matrix, src: QuotientSpace, dst: QuotientSpace) -> Matrix:
    """The map ``src -> dst`` induced by ``f`` on quotients.

    Raises :class:`IllDefinedMapError` unless ``f`` carries the subspace
    quotiented out of ``src`` into the one quotiented out of ``dst``.
    """
    if f.ncols != src.ambient or f.nrows != dst.ambient:
        raise ValueError(f"map of shape {f.shape} does not match quotients {src.ambient} -> {dst.ambient}")
    if src.subspace.ncols and not (dst.projection @ (f @ src.subspace)).is_zero():
        raise IllDefinedMapError("map does not preserve the quotiented subspaces")
    return dst.projection @ (f @ src.inclusion())
