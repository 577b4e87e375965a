from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cellkoszul.errors import IllDefinedMapError
from cellkoszul.fields import GF2, Q, PrimeField
from cellkoszul.linalg import Matrix, cokernel, induced_map, kernel_basis, rref, sparse_rank

small_ints = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=5, max_cols=5, elems=small_ints):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elems, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def gf2_rank_by_span(rows):
    # rank = log2 of the number of distinct vectors in the row span
    span = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 2 for j in range(len(rows[0]))))
    return len(span).bit_length() - 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_over_q_matches_sympy(rows):
    M = Matrix.from_rows(Q, rows)
    assert M.rank() == sympy.Matrix(rows).rank()
    assert M.to_sparse().rank() == M.rank()
    assert M.transpose().rank() == M.rank()


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=5, elems=st.integers(0, 1)))
def test_rank_over_gf2_matches_span_count(rows):
    M = Matrix.from_rows(GF2, rows)
    assert M.rank() == gf2_rank_by_span(rows)
    assert M.to_sparse().rank() == M.rank()


@settings(max_examples=40, deadline=None)
@given(matrices(elems=st.integers(0, 6)))
def test_sparse_and_dense_rank_agree_gf7(rows):
    F = PrimeField(7)
    M = Matrix.from_rows(F, rows)
    cols = [{i: F(rows[i][j]) for i in range(len(rows)) if rows[i][j] % 7} for j in range(len(rows[0]))]
    assert sparse_rank(cols, F) == rref(M)[2]


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_kernel_basis(rows):
    M = Matrix.from_rows(Q, rows)
    K = kernel_basis(M)
    assert K.ncols == M.ncols - M.rank()
    assert (M @ K).is_zero()
    assert K.rank() == K.ncols


def test_rref_example():
    R, pivots, rank = rref(Matrix.from_rows(Q, [[2, 4], [1, 2]]))
    assert rank == 1 and pivots == [0]
    assert R.rows[0] == [1, 2]


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_cokernel_invariants(rows):
    M = Matrix.from_rows(Q, rows)
    C = cokernel(M)
    assert C.dim == M.nrows - M.rank()
    # projection kills the image and splits the inclusion
    assert (C.projection @ M).is_zero()
    assert C.projection @ C.inclusion() == Matrix.identity(Q, C.dim)


def test_induced_map_on_quotients():
    # R^2 / <e1>  ->  R^2 / <e2>, induced by the swap
    sub1 = Matrix.from_rows(Q, [[1], [0]])
    sub2 = Matrix.from_rows(Q, [[0], [1]])
    swap = Matrix.from_rows(Q, [[0, 1], [1, 0]])
    m = induced_map(swap, cokernel(sub1), cokernel(sub2))
    assert m.shape == (1, 1) and m[0, 0] == 1
    with pytest.raises(IllDefinedMapError):
        induced_map(Matrix.identity(Q, 2), cokernel(sub1), cokernel(sub2))


def test_matmul_and_hstack():
    A = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    B = Matrix.from_rows(Q, [[Fraction(1, 2)], [1]])
    assert (A @ B).rows == [[Fraction(5, 2)], [Fraction(11, 2)]]
    assert A.hstack(B).shape == (2, 3)
    assert (A.to_sparse() @ B.to_sparse()).to_dense() == A @ B
