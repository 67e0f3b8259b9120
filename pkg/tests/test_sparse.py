import random

import pytest

from exacthom.fields import GF, QQ
from exacthom.sparse import (Echelon, SparseMatrix, image_pivot_columns,
                             kernel_basis, rank, solve_batch)


def mat(rows, field=QQ):
    return SparseMatrix.from_rows(field, rows)


def test_rank_identity_and_zero():
    assert rank(SparseMatrix.identity(QQ, 2)) == 2
    assert rank(SparseMatrix.zeros(QQ, 3, 4)) == 0


def test_rank_dependent_rows():
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(mat([[1, 2], [2, 4]], GF(5))) == 1
    # mod 2 the second row is zero but the matrix still has rank 1
    assert rank(mat([[1, 2], [2, 4]], GF(2))) == 1


def test_kernel_identity_empty():
    assert kernel_basis(SparseMatrix.identity(QQ, 3)).ncols == 0


def test_kernel_zero_map_full():
    k = kernel_basis(SparseMatrix.zeros(QQ, 2, 3))
    assert k.ncols == 3
    assert rank(k) == 3


def test_kernel_one_relation():
    k = kernel_basis(mat([[1, 1]]))
    assert k.ncols == 1
    assert k.get(0, 0) == QQ.neg(k.get(1, 0)) != QQ.zero


def test_rank_nullity_random():
    rng = random.Random(7)
    for field in (QQ, GF(5)):
        for _ in range(25):
            nrows = rng.randint(0, 6)
            ncols = rng.randint(0, 6)
            m = SparseMatrix(field, nrows, ncols, {
                (i, j): field.of(rng.randint(-3, 3))
                for i in range(nrows) for j in range(ncols)
                if rng.random() < 0.6})
            r = rank(m)
            k = kernel_basis(m)
            assert r + k.ncols == ncols
            assert m.mul(k).is_zero()


def test_solve_batch_consistent():
    a = mat([[1, 0], [1, 1], [0, 2]])
    v = mat([[1, 0], [3, 0], [4, 0]])
    x, ok = solve_batch(a, v)
    assert ok == [True, True]
    assert a.mul(x) == v


def test_solve_batch_reports_unsolvable():
    a = mat([[1], [0]])
    v = mat([[0], [1]])
    with pytest.raises(ValueError):
        solve_batch(a, v)
    x, ok = solve_batch(a, v, strict=False)
    assert ok == [False]


def test_pivot_columns_prefer_earlier():
    # second column is a multiple of the first, third is independent
    m = mat([[1, 2, 0], [0, 0, 1]])
    assert image_pivot_columns(m) == [0, 2]


def test_echelon_rank_matches_dense_elimination():
    m = mat([[2, 4, 1], [1, 2, 0], [0, 0, 1], [3, 6, 1]])
    assert Echelon(m).rank == 2


def test_matrix_algebra():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert a.mul(b) == mat([[2, 1], [4, 3]])
    assert a.add(b).sub(b) == a
    assert a.scale(QQ.of(0)).is_zero()
    assert a.transpose().transpose() == a
    assert a.hstack(b).shape == (2, 4)
    assert a.select_columns([1]) == mat([[2], [4]])


def test_apply_matches_mul():
    a = mat([[1, 2, 0], [0, 1, 5]])
    col = {0: QQ.of(1), 2: QQ.of(2)}
    out = a.apply(col)
    assert out == {0: QQ.of(1), 1: QQ.of(10)}


def test_entries_bounds_checked():
    with pytest.raises(IndexError):
        SparseMatrix(QQ, 1, 1, {(1, 0): QQ.one})


def test_no_stored_zeros():
    m = SparseMatrix(QQ, 2, 2, {(0, 0): QQ.zero, (1, 1): QQ.one})
    assert m.nnz == 1


def _dense_rank(rows, ncols):
    """Independent oracle: dense fraction elimination, no pivoting tricks."""
    from fractions import Fraction
    m = [[Fraction(v) for v in row] + [Fraction(0)] * (ncols - len(row))
         for row in rows]
    rank_ = 0
    for col in range(ncols):
        piv = None
        for r in range(rank_, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank_], m[piv] = m[piv], m[rank_]
        inv = 1 / m[rank_][col]
        m[rank_] = [v * inv for v in m[rank_]]
        for r in range(len(m)):
            if r != rank_ and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank_])]
        rank_ += 1
    return rank_


def test_rank_against_dense_oracle():
    rng = random.Random(13)
    for _ in range(40):
        nrows = rng.randint(1, 7)
        ncols = rng.randint(1, 7)
        rows = [[rng.choice([0, 0, 1, -1, 2, 3]) for _ in range(ncols)]
                for _ in range(nrows)]
        dense = _dense_rank(rows, ncols)
        sparse = rank(SparseMatrix.from_rows(QQ, rows))
        assert sparse == dense, rows
