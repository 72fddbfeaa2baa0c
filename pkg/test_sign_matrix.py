"""
Tests for sign matrices, quasi-permutation matrices and matrix containment.
"""

import itertools

import pytest
from hypothesis import given

from conftest import ONE_MINUS, W, perm, permutations, perms_up_to, sign_matrices
from permprofile.core.errors import BoundsError, DomainError, MatrixFormatError
from permprofile.perm_core import EMPTY, contains, inverse
from permprofile.sign_matrix import (
    EMPTY_MATRIX,
    QuasiPermMatrix,
    SignMatrix,
    delta,
    double_matrix,
    is_quasi_permutation,
    matrix_contains,
    matrix_perm,
    perm_matrix,
    permute_cols,
    permute_rows,
    quasi_perm_of,
    reduce_matrix,
    sign_matrix_of,
    transpose_matrix,
)


def _quasi_matrices(size: int):
    """Every size×size quasi-permutation matrix."""
    for k in range(size + 1):
        for rows in itertools.combinations(range(1, size + 1), k):
            for cols in itertools.permutations(range(1, size + 1), k):
                yield QuasiPermMatrix(size, size, frozenset(zip(rows, cols)))


SMALL_QUASI = [m for size in (1, 2, 3) for m in _quasi_matrices(size)]


class TestSignMatrix:
    def test_from_rows(self):
        m = SignMatrix.from_rows([[1, 0, -1], [0, 1, 0]])
        assert (m.rows, m.cols) == (2, 3)
        assert m[1, 3] == -1
        assert m.nonzero() == [(1, 1, 1), (1, 3, -1), (2, 2, 1)]
        assert m.support() == [(1, 1), (1, 3), (2, 2)]
        assert m.minus_count() == 1
        assert str(m) == "1 0 -1\n0 1 0"

    def test_column(self):
        v = SignMatrix.column([1, 1, -1])
        assert (v.rows, v.cols) == (3, 1)
        assert v[3, 1] == -1

    def test_rejects_bad_input(self):
        with pytest.raises(MatrixFormatError):
            SignMatrix.from_rows([[1, 2]])
        with pytest.raises(MatrixFormatError):
            SignMatrix.from_rows([[1, 0], [1]])
        with pytest.raises(MatrixFormatError):
            SignMatrix.from_rows([])


class TestQuasiPermMatrix:
    def test_perm_matrix(self):
        assert perm_matrix(perm("1")).support == {(1, 1)}
        assert perm_matrix(perm("21")).support == {(1, 2), (2, 1)}
        assert perm_matrix(perm("532481697")).support == {
            (1, 5), (2, 3), (3, 2), (4, 4), (5, 8), (6, 1), (7, 6), (8, 9), (9, 7)
        }

    def test_rejects_bad_support(self):
        with pytest.raises(BoundsError):
            QuasiPermMatrix(2, 2, frozenset({(3, 1)}))
        with pytest.raises(DomainError):
            QuasiPermMatrix(2, 2, frozenset({(1, 1), (1, 2)}))
        with pytest.raises(DomainError):
            QuasiPermMatrix(2, 2, frozenset({(1, 1), (2, 1)}))

    def test_round_trip_on_small_permutations(self):
        for p in perms_up_to(5):
            matrix = perm_matrix(p)
            assert matrix.is_reduced()
            assert matrix_perm(matrix) == p
        assert matrix_perm(EMPTY_MATRIX) == EMPTY

    def test_matrix_perm_of_sparse_matrix(self):
        sparse = QuasiPermMatrix(4, 5, frozenset({(1, 5), (3, 2), (4, 3)}))
        assert matrix_perm(sparse) == perm("312")
        assert not sparse.is_reduced()
        assert len(sparse) == 3


class TestReduceAndDelta:
    def test_reduce_examples(self):
        assert reduce_matrix(SignMatrix.from_rows([[0, 0], [0, 0]])) == EMPTY_MATRIX
        identity = perm_matrix(perm("312"))
        assert reduce_matrix(identity) == identity
        corners = QuasiPermMatrix(3, 3, frozenset({(1, 3), (3, 1)}))
        assert reduce_matrix(corners) == perm_matrix(perm("21"))
        assert reduce_matrix(SignMatrix.from_rows([[0, 0, 0], [-1, 0, 1]])) == SignMatrix.from_rows(
            [[-1, 1]]
        )

    @given(sign_matrices(max_rows=4, max_cols=4))
    def test_reduce_idempotent(self, matrix):
        once = reduce_matrix(matrix)
        assert reduce_matrix(once) == once
        assert len(once.nonzero()) == len(matrix.nonzero())

    def test_delta(self):
        assert delta([(1, 2), (3, 1)]) == QuasiPermMatrix(3, 2, frozenset({(1, 2), (3, 1)}))
        assert delta([(1, 1)], shape=(2, 3)) == QuasiPermMatrix(2, 3, frozenset({(1, 1)}))
        shared = delta([(1, 1), (1, 2)])
        assert isinstance(shared, SignMatrix)
        assert shared == SignMatrix.from_rows([[1, 1]])
        assert delta([]) == QuasiPermMatrix(0, 0, frozenset())

    def test_delta_bounds(self):
        with pytest.raises(BoundsError):
            delta([(3, 1)], shape=(2, 2))
        with pytest.raises(BoundsError):
            delta([(0, 1)])

    def test_containment_is_a_reduced_delta_of_support(self):
        patterns = [perm_matrix(p) for p in perms_up_to(3)]
        for text in SMALL_QUASI:
            support = sorted(text.support)
            images = {
                reduce_matrix(delta(chosen))
                for k in range(1, len(support) + 1)
                for chosen in itertools.combinations(support, k)
            }
            for pattern in patterns:
                assert matrix_contains(text, pattern) == (pattern in images)


class TestContainment:
    def test_examples(self):
        zero = SignMatrix.from_rows([[0, 0], [0, 0]])
        assert matrix_contains(perm_matrix(perm("12")), zero)
        assert not matrix_contains(perm_matrix(perm("12")), perm_matrix(perm("21")))
        assert matrix_contains(W, SignMatrix.from_rows([[1], [-1]]))
        assert not matrix_contains(W, SignMatrix.from_rows([[-1, -1]]))
        assert not matrix_contains(perm_matrix(perm("1")), perm_matrix(perm("12")))

    def test_sign_patterns_in_sign_matrices(self):
        text = SignMatrix.from_rows([[1, 0, -1], [0, 1, 0], [-1, 0, 1]])
        assert matrix_contains(text, W)
        assert matrix_contains(text, SignMatrix.from_rows([[1, -1]]))
        assert not matrix_contains(text, SignMatrix.from_rows([[-1, 1, 1]]))

    def test_fast_path_agrees_with_dense_search(self):
        universe = perms_up_to(4)
        for p in universe:
            dense_text = sign_matrix_of(perm_matrix(p))
            for q in universe:
                expected = contains(p, q)
                assert matrix_contains(perm_matrix(p), perm_matrix(q)) == expected
                assert matrix_contains(dense_text, sign_matrix_of(perm_matrix(q))) == expected

    @pytest.mark.slow
    def test_fast_path_agrees_with_dense_search_up_to_five(self):
        universe = perms_up_to(5)
        for p in universe:
            dense_text = sign_matrix_of(perm_matrix(p))
            for q in universe:
                assert matrix_contains(dense_text, sign_matrix_of(perm_matrix(q))) == contains(p, q)

    def test_reflexive_on_quasi_matrices(self):
        for matrix in itertools.chain(SMALL_QUASI, _quasi_matrices(4)):
            assert matrix_contains(matrix, matrix)

    def test_transitive_and_transpose_invariant(self):
        below = {
            m: {q for q in SMALL_QUASI if matrix_contains(m, q)} for m in SMALL_QUASI
        }
        for m in SMALL_QUASI:
            for q in below[m]:
                assert below[q] <= below[m]
            for q in SMALL_QUASI:
                assert (q in below[m]) == matrix_contains(
                    transpose_matrix(m), transpose_matrix(q)
                )


class TestTranspose:
    @given(sign_matrices())
    def test_involution(self, matrix):
        assert transpose_matrix(transpose_matrix(matrix)) == matrix

    def test_row_vector(self):
        row = SignMatrix.from_rows([[1, 1, -1]])
        assert transpose_matrix(row) == SignMatrix.column([1, 1, -1])

    def test_permutation_matrices(self):
        for p in perms_up_to(5):
            assert transpose_matrix(perm_matrix(p)) == perm_matrix(inverse(p))


class TestViews:
    def test_quasi_round_trip(self):
        sparse = QuasiPermMatrix(2, 3, frozenset({(2, 3)}))
        dense = sign_matrix_of(sparse)
        assert dense == SignMatrix.from_rows([[0, 0, 0], [0, 0, 1]])
        assert is_quasi_permutation(dense)
        assert quasi_perm_of(dense) == sparse

    def test_not_quasi(self):
        assert not is_quasi_permutation(W)
        assert not is_quasi_permutation(SignMatrix.from_rows([[1, 1]]))
        with pytest.raises(DomainError):
            quasi_perm_of(W)

    def test_permute_lines(self):
        m = SignMatrix.from_rows([[1, 0], [0, -1], [1, 1]])
        assert permute_rows(m, [3, 1, 2]) == SignMatrix.from_rows([[1, 1], [1, 0], [0, -1]])
        assert permute_cols(m, [2, 1]) == SignMatrix.from_rows([[0, 1], [-1, 0], [1, 1]])
        with pytest.raises(DomainError):
            permute_rows(m, [1, 1, 2])


class TestDoubling:
    def test_one_minus(self):
        assert double_matrix(ONE_MINUS) == SignMatrix.from_rows(
            [
                [1, 0, 1, 0],
                [0, 1, 0, 1],
                [1, 0, 0, -1],
                [0, 1, -1, 0],
            ]
        )

    def test_small_cases(self):
        assert double_matrix(SignMatrix.from_rows([[1]])) == SignMatrix.from_rows([[1, 0], [0, 1]])
        assert double_matrix(SignMatrix.from_rows([[0]])) == SignMatrix.from_rows([[0, 0], [0, 0]])

    @given(sign_matrices())
    def test_counts_double(self, matrix):
        doubled = double_matrix(matrix)
        assert (doubled.rows, doubled.cols) == (2 * matrix.rows, 2 * matrix.cols)
        assert len(doubled.nonzero()) == 2 * len(matrix.nonzero())
        assert doubled.minus_count() == 2 * matrix.minus_count()

    @given(permutations(min_size=1, max_size=5))
    def test_doubled_permutation_contains_original(self, p):
        doubled = double_matrix(sign_matrix_of(perm_matrix(p)))
        assert matrix_contains(doubled, perm_matrix(p))
