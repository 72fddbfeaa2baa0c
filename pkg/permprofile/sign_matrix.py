"""
0/±1 matrices, quasi-permutation matrices and matrix pattern containment.

Rows and columns are 1-based and row 1 is the top row. SignMatrix is stored
dense; QuasiPermMatrix is stored as a support set. Both expose rows, cols,
value(i, j) and nonzero(), which is all the containment search needs.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from permprofile.core.errors import BoundsError, DomainError, MatrixFormatError
from permprofile.perm_core import EMPTY, Permutation, contains, reduce

logger = logging.getLogger(__name__)

Position = Tuple[int, int]

SIGNS = (-1, 0, 1)


@dataclass(frozen=True)
class SignMatrix:
    """
    A dense r×s matrix over {-1, 0, +1}.

    Attributes:
        rows: Number of rows r (at least 1)
        cols: Number of columns s (at least 1)
        entries: Row-major grid, entries[i-1][j-1] = M_{i,j}
    """

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.rows < 1 or self.cols < 1:
            raise MatrixFormatError(
                f"A sign matrix needs at least one row and column, got {self.rows}x{self.cols}"
            )
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise MatrixFormatError(
                f"Entries do not form a {self.rows}x{self.cols} grid"
            )
        for row in entries:
            for value in row:
                if value not in SIGNS:
                    raise MatrixFormatError(f"Entry {value!r} is not one of -1, 0, 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SignMatrix":
        """Build a matrix from a list of rows, e.g. SignMatrix.from_rows([[1, -1], [-1, 1]])."""
        grid = tuple(tuple(row) for row in rows)
        return cls(len(grid), len(grid[0]) if grid else 0, grid)

    @classmethod
    def column(cls, values: Sequence[int]) -> "SignMatrix":
        """The column vector vᵗ."""
        return cls.from_rows([[v] for v in values])

    def value(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    def __getitem__(self, position: Position) -> int:
        return self.value(*position)

    def nonzero(self) -> List[Tuple[int, int, int]]:
        """Nonzero cells as (row, col, sign) in row-major order."""
        return [
            (i, j, value)
            for i, row in enumerate(self.entries, start=1)
            for j, value in enumerate(row, start=1)
            if value
        ]

    def support(self) -> List[Position]:
        """Nonzero cells in row-major order."""
        return [(i, j) for i, j, _ in self.nonzero()]

    def minus_count(self) -> int:
        return sum(1 for _, _, value in self.nonzero() if value < 0)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


@dataclass(frozen=True)
class QuasiPermMatrix:
    """
    A 0/1 matrix with at most one nonzero entry per row and per column.

    Attributes:
        rows: Number of rows
        cols: Number of columns
        support: The positions holding a 1
    """

    rows: int
    cols: int
    support: FrozenSet[Position]

    def __post_init__(self):
        support = frozenset(self.support)
        object.__setattr__(self, "support", support)
        for i, j in support:
            if not (1 <= i <= self.rows and 1 <= j <= self.cols):
                raise BoundsError(
                    f"Position {(i, j)} lies outside a {self.rows}x{self.cols} matrix"
                )
        if len({i for i, _ in support}) != len(support):
            raise DomainError("Quasi-permutation matrix has two entries in one row")
        if len({j for _, j in support}) != len(support):
            raise DomainError("Quasi-permutation matrix has two entries in one column")

    def value(self, i: int, j: int) -> int:
        return 1 if (i, j) in self.support else 0

    def __getitem__(self, position: Position) -> int:
        return self.value(*position)

    def points(self) -> List[Position]:
        """Support positions sorted by row."""
        return sorted(self.support)

    def nonzero(self) -> List[Tuple[int, int, int]]:
        return [(i, j, 1) for i, j in self.points()]

    def is_reduced(self) -> bool:
        """True iff every row and column holds an entry, i.e. a permutation matrix."""
        return self.rows == self.cols == len(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str(self.value(i, j)) for j in range(1, self.cols + 1))
            for i in range(1, self.rows + 1)
        )


Matrix = Union[SignMatrix, QuasiPermMatrix]

EMPTY_MATRIX = QuasiPermMatrix(0, 0, frozenset())


def perm_matrix(p: Permutation) -> QuasiPermMatrix:
    """M_p: the n×n matrix with support {(i, p(i))}."""
    n = len(p)
    return QuasiPermMatrix(n, n, frozenset((i, v) for i, v in enumerate(p.values, start=1)))


def matrix_perm(matrix: QuasiPermMatrix) -> Permutation:
    """The permutation of red(P); the empty permutation for an empty support."""
    if not matrix.support:
        return EMPTY
    return reduce([j for _, j in matrix.points()])


def reduce_matrix(matrix: Matrix) -> Matrix:
    """
    red(M): delete every all-zero row and column.

    A matrix with no nonzero entry reduces to the empty 0×0 quasi-permutation
    matrix.
    """
    cells = matrix.nonzero()
    if not cells:
        return EMPTY_MATRIX
    kept_rows = sorted({i for i, _, _ in cells})
    kept_cols = sorted({j for _, j, _ in cells})
    if isinstance(matrix, QuasiPermMatrix):
        row_index = {i: k for k, i in enumerate(kept_rows, start=1)}
        col_index = {j: k for k, j in enumerate(kept_cols, start=1)}
        return QuasiPermMatrix(
            len(kept_rows),
            len(kept_cols),
            frozenset((row_index[i], col_index[j]) for i, j in matrix.support),
        )
    return SignMatrix.from_rows(
        [[matrix.value(i, j) for j in kept_cols] for i in kept_rows]
    )


def delta(positions: Iterable[Position], shape: Optional[Tuple[int, int]] = None) -> Matrix:
    """
    Δ(X): the smallest 0/1 matrix whose support is X.

    Args:
        positions: The support set X
        shape: Optional (rows, cols); gives Δ^(P)(X) for a P of that shape

    Returns:
        A QuasiPermMatrix when no two positions share a line, otherwise a
        0/1 SignMatrix

    Raises:
        BoundsError: If a position falls outside the requested shape
    """
    support = frozenset(positions)
    if any(i < 1 or j < 1 for i, j in support):
        raise BoundsError(f"Positions must be 1-based, got {sorted(support)}")
    if shape is None:
        rows = max((i for i, _ in support), default=0)
        cols = max((j for _, j in support), default=0)
    else:
        rows, cols = shape
        outside = [(i, j) for i, j in support if i > rows or j > cols]
        if outside:
            raise BoundsError(f"Positions {sorted(outside)} lie outside a {rows}x{cols} matrix")

    quasi = len({i for i, _ in support}) == len(support) == len({j for _, j in support})
    if quasi:
        return QuasiPermMatrix(rows, cols, support)
    return SignMatrix.from_rows(
        [[1 if (i, j) in support else 0 for j in range(1, cols + 1)] for i in range(1, rows + 1)]
    )


def transpose_matrix(matrix: Matrix) -> Matrix:
    """Mᵗ."""
    if isinstance(matrix, QuasiPermMatrix):
        return QuasiPermMatrix(
            matrix.cols, matrix.rows, frozenset((j, i) for i, j in matrix.support)
        )
    return SignMatrix.from_rows(
        [[matrix.value(i, j) for i in range(1, matrix.rows + 1)] for j in range(1, matrix.cols + 1)]
    )


def sign_matrix_of(matrix: QuasiPermMatrix) -> SignMatrix:
    """The dense view of a nonempty quasi-permutation matrix."""
    return SignMatrix.from_rows(
        [[matrix.value(i, j) for j in range(1, matrix.cols + 1)] for i in range(1, matrix.rows + 1)]
    )


def is_quasi_permutation(matrix: Matrix) -> bool:
    """True iff M is a 0/1 matrix with at most one nonzero per row and column."""
    if isinstance(matrix, QuasiPermMatrix):
        return True
    cells = matrix.nonzero()
    if any(value != 1 for _, _, value in cells):
        return False
    return len({i for i, _, _ in cells}) == len(cells) == len({j for _, j, _ in cells})


def quasi_perm_of(matrix: SignMatrix) -> QuasiPermMatrix:
    """
    The sparse view of a dense 0/1 matrix.

    Raises:
        DomainError: If M is not a quasi-permutation matrix
    """
    if not is_quasi_permutation(matrix):
        raise DomainError("Matrix is not a 0/1 matrix with at most one entry per line")
    return QuasiPermMatrix(matrix.rows, matrix.cols, frozenset(matrix.support()))


def permute_rows(matrix: SignMatrix, order: Sequence[int]) -> SignMatrix:
    """Row i of the result is row order[i] of M (1-based)."""
    if sorted(order) != list(range(1, matrix.rows + 1)):
        raise DomainError(f"{list(order)} does not permute the {matrix.rows} rows")
    return SignMatrix.from_rows([matrix.entries[k - 1] for k in order])


def permute_cols(matrix: SignMatrix, order: Sequence[int]) -> SignMatrix:
    """Column j of the result is column order[j] of M (1-based)."""
    return transpose_matrix(permute_rows(transpose_matrix(matrix), order))


def _first_matching_rows(
    text: Matrix, pattern: Matrix, columns: Sequence[int], pattern_cols: int
) -> bool:
    """
    Greedy row matching for a column prefix.

    Each pattern row takes the earliest text row after the previous one that
    agrees with it on the chosen columns. Earliest is always optimal because
    the rows constrain each other only through their order.
    """
    next_row = 1
    for a in range(1, pattern.rows + 1):
        required = [
            (columns[b - 1], pattern.value(a, b))
            for b in range(1, pattern_cols + 1)
            if pattern.value(a, b)
        ]
        while next_row <= text.rows and any(
            text.value(next_row, c) != v for c, v in required
        ):
            next_row += 1
        if next_row > text.rows:
            return False
        next_row += 1
    return True


def matrix_contains(text: Matrix, pattern: Matrix) -> bool:
    """
    Decide Q ≤ P for matrices.

    Q ≤ P iff some choice of Q.rows rows and Q.cols columns of P gives a
    submatrix that agrees with Q wherever Q is nonzero.

    Args:
        text: The matrix P
        pattern: The matrix Q

    Returns:
        True iff pattern ≤ text
    """
    if pattern.rows > text.rows or pattern.cols > text.cols:
        return False
    if not pattern.nonzero():
        return True

    if (
        isinstance(text, QuasiPermMatrix)
        and isinstance(pattern, QuasiPermMatrix)
        and pattern.is_reduced()
    ):
        return contains(matrix_perm(text), matrix_perm(pattern))

    width = pattern.cols
    chosen: List[int] = []

    def extend(start: int) -> bool:
        placed = len(chosen)
        if placed == width:
            return True
        for c in range(start, text.cols - (width - placed) + 2):
            chosen.append(c)
            if _first_matching_rows(text, pattern, chosen, placed + 1) and extend(c + 1):
                return True
            chosen.pop()
        return False

    return extend(1)


_DOUBLED_BLOCKS = {
    1: ((1, 0), (0, 1)),
    -1: ((0, -1), (-1, 0)),
    0: ((0, 0), (0, 0)),
}


def double_matrix(matrix: SignMatrix) -> SignMatrix:
    """
    Replace each entry by a 2×2 block.

    +1 becomes the identity, -1 the anti-identity with -1 entries and 0 the
    zero block. The profile class is unchanged, and a single cycle with an odd
    number of -1 entries becomes a single cycle of twice the length with an
    even number.
    """
    grid = [[0] * (2 * matrix.cols) for _ in range(2 * matrix.rows)]
    for i, j, value in matrix.nonzero():
        block = _DOUBLED_BLOCKS[value]
        for di in range(2):
            for dj in range(2):
                grid[2 * (i - 1) + di][2 * (j - 1) + dj] = block[di][dj]
    doubled = SignMatrix.from_rows(grid)
    logger.debug(f"Doubled {matrix.rows}x{matrix.cols} matrix to {doubled.rows}x{doubled.cols}")
    return doubled
