"""
M-partitions and profile classes.

A permutation matrix P lies in the profile class Pr(M) when its rows and
columns can be cut so that the block under every cell of M is empty, increasing
or decreasing as the sign of that cell dictates.
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from permprofile.core.errors import ArityError, DomainError, MatrixFormatError, ResourceError
from permprofile.core.settings import DEFAULT_SETTINGS, Settings
from permprofile.perm_core import Permutation, all_permutations, parallel_filter
from permprofile.sign_matrix import QuasiPermMatrix, SignMatrix, perm_matrix

logger = logging.getLogger(__name__)

PermLike = Union[Permutation, QuasiPermMatrix]


@dataclass(frozen=True, order=True)
class MPartition:
    """
    Row and column cuts certifying membership in a profile class.

    Attributes:
        row_cuts: I = (1 = i_1 <= ... <= i_{r+1} = n+1)
        col_cuts: J = (1 = j_1 <= ... <= j_{s+1} = n+1)
    """

    row_cuts: Tuple[int, ...]
    col_cuts: Tuple[int, ...]

    def __post_init__(self):
        for name, cuts in (("I", self.row_cuts), ("J", self.col_cuts)):
            cuts = tuple(cuts)
            if len(cuts) < 2 or cuts[0] != 1:
                raise ArityError(f"{name} must start at 1 and hold at least two cuts, got {list(cuts)}")
            if any(a > b for a, b in zip(cuts, cuts[1:])):
                raise ArityError(f"{name} must be non-decreasing, got {list(cuts)}")
        object.__setattr__(self, "row_cuts", tuple(self.row_cuts))
        object.__setattr__(self, "col_cuts", tuple(self.col_cuts))

    @classmethod
    def parse(cls, text: str) -> "MPartition":
        """Parse the "I=[1,7,16] J=[1,7,16]" form."""
        try:
            parts = dict(part.split("=", 1) for part in text.split())
            row_cuts = tuple(int(v) for v in parts["I"].strip("[]").split(","))
            col_cuts = tuple(int(v) for v in parts["J"].strip("[]").split(","))
        except (KeyError, ValueError) as e:
            raise MatrixFormatError(f"Cannot parse partition {text!r}") from e
        return cls(row_cuts, col_cuts)

    def __str__(self) -> str:
        row_text = ",".join(str(i) for i in self.row_cuts)
        col_text = ",".join(str(j) for j in self.col_cuts)
        return f"I=[{row_text}] J=[{col_text}]"

    def to_dict(self) -> Dict[str, List[int]]:
        return {"I": list(self.row_cuts), "J": list(self.col_cuts)}


def _as_matrix(p: PermLike) -> QuasiPermMatrix:
    return perm_matrix(p) if isinstance(p, Permutation) else p


def _block_ok(rows_in_column_order: Sequence[int], sign: int) -> bool:
    if sign == 0:
        return not rows_in_column_order
    pairs = zip(rows_in_column_order, rows_in_column_order[1:])
    if sign > 0:
        return all(a < b for a, b in pairs)
    return all(a > b for a, b in pairs)


def is_m_partition(p: PermLike, matrix: SignMatrix, partition: MPartition) -> bool:
    """
    Check the block conditions of an M-partition.

    Args:
        p: The permutation (or its matrix) P
        matrix: The governing sign matrix M
        partition: The cuts (I, J)

    Returns:
        True iff every block is empty where M is 0, increasing where M is +1
        and decreasing where M is -1

    Raises:
        ArityError: If the cut counts or end points do not fit M and P
    """
    P = _as_matrix(p)
    I, J = partition.row_cuts, partition.col_cuts
    if len(I) != matrix.rows + 1 or len(J) != matrix.cols + 1:
        raise ArityError(
            f"Partition {partition} has the wrong number of cuts for a "
            f"{matrix.rows}x{matrix.cols} matrix"
        )
    if I[-1] != P.rows + 1 or J[-1] != P.cols + 1:
        raise ArityError(
            f"Partition {partition} does not end at {P.rows + 1}/{P.cols + 1}"
        )

    blocks: Dict[Tuple[int, int], List[int]] = {}
    for x, y in sorted(P.support, key=lambda point: point[1]):
        block = (bisect_right(I, x), bisect_right(J, y))
        blocks.setdefault(block, []).append(x)

    for (k, l), rows in blocks.items():
        if not _block_ok(rows, matrix.value(k, l)):
            return False
    return True


def _check_budget(P: QuasiPermMatrix, matrix: SignMatrix, settings: Settings) -> None:
    free_cuts = (matrix.rows - 1) + (matrix.cols - 1)
    if free_cuts > settings.max_free_cuts:
        raise ResourceError(
            f"A {matrix.rows}x{matrix.cols} matrix needs {free_cuts} free cuts; "
            f"the budget is {settings.max_free_cuts}"
        )
    n = max(P.rows, P.cols)
    if n > settings.max_n:
        raise ResourceError(f"Matrix size {n} exceeds the search budget {settings.max_n}")


def iter_m_partitions(
    p: PermLike, matrix: SignMatrix, settings: Settings = DEFAULT_SETTINGS
) -> Iterator[MPartition]:
    """
    Lazily yield every M-partition of P in lexicographic (I, J) order.

    Row cuts are chosen first; a band under an all-zero row of M must be
    empty, which prunes the row search. For each row choice the column cuts
    grow one column at a time, and the first column that breaks a block
    ends that branch, since widening a broken block never repairs it.

    Raises:
        ResourceError: If the free cuts or the matrix size exceed the budget
    """
    P = _as_matrix(p)
    _check_budget(P, matrix, settings)
    r, s = matrix.rows, matrix.cols
    row_of_col: Dict[int, int] = {y: x for x, y in P.support}
    occupied_rows = sorted(x for x, _ in P.support)
    zero_rows = {k for k in range(1, r + 1) if not any(matrix.entries[k - 1])}

    def band_has_points(lo: int, hi: int) -> bool:
        k = bisect_right(occupied_rows, lo - 1)
        return k < len(occupied_rows) and occupied_rows[k] < hi

    def column_cuts(row_cuts: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        band_of_row = {x: bisect_right(row_cuts, x) for x in occupied_rows}
        cuts = [1]

        def grow(l: int) -> Iterator[Tuple[int, ...]]:
            start = cuts[-1]
            last: Dict[int, int] = {}
            end = start
            while True:
                if l == s and end == P.cols + 1:
                    yield tuple(cuts) + (end,)
                    return
                if l < s:
                    cuts.append(end)
                    yield from grow(l + 1)
                    cuts.pop()
                if end > P.cols:
                    return
                # widen block l by column `end`
                x = row_of_col.get(end)
                if x is not None:
                    k = band_of_row[x]
                    sign = matrix.value(k, l)
                    if sign == 0:
                        return
                    if k in last and (x < last[k] if sign > 0 else x > last[k]):
                        return
                    last[k] = x
                end += 1

        yield from grow(1)

    def row_cuts_from(k: int, cuts: List[int]) -> Iterator[Tuple[int, ...]]:
        if k == r:
            if k in zero_rows and band_has_points(cuts[-1], P.rows + 1):
                return
            yield tuple(cuts) + (P.rows + 1,)
            return
        for cut in range(cuts[-1], P.rows + 2):
            if k in zero_rows and band_has_points(cuts[-1], cut):
                break
            cuts.append(cut)
            yield from row_cuts_from(k + 1, cuts)
            cuts.pop()

    for row_cuts in row_cuts_from(1, [1]):
        for col_cuts in column_cuts(row_cuts):
            yield MPartition(row_cuts, col_cuts)


def enumerate_m_partitions(
    p: PermLike,
    matrix: SignMatrix,
    limit: Optional[int] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> List[MPartition]:
    """
    All M-partitions of P in lexicographic cut order.

    Args:
        p: The permutation or its matrix
        matrix: The governing sign matrix
        limit: Stop after this many partitions (2 suffices to test uniqueness)
        settings: Search budget

    Returns:
        The partitions found, at most limit of them

    Raises:
        ResourceError: If the search budget is exceeded
    """
    found: List[MPartition] = []
    for partition in iter_m_partitions(p, matrix, settings):
        found.append(partition)
        if limit is not None and len(found) >= limit:
            break
    logger.debug(f"Found {len(found)} M-partitions (limit {limit})")
    return found


def in_profile_class(
    p: PermLike, matrix: SignMatrix, settings: Settings = DEFAULT_SETTINGS
) -> bool:
    """True iff P admits at least one M-partition."""
    return next(iter_m_partitions(p, matrix, settings), None) is not None


def enumerate_profile_class(
    matrix: SignMatrix, n: int, settings: Settings = DEFAULT_SETTINGS
) -> List[Permutation]:
    """
    The length-n members of Pr(M), lexicographically sorted.

    Raises:
        ResourceError: If n exceeds the exhaustive bound
    """
    return parallel_filter(
        lambda p: in_profile_class(p, matrix, settings),
        all_permutations(n, settings),
        settings.threads,
    )


def in_w_class(
    p: PermLike, vector: Sequence[int], settings: Settings = DEFAULT_SETTINGS
) -> bool:
    """
    Membership in W(v) = Pr(vᵗ).

    Raises:
        DomainError: If v is empty or has an entry other than ±1
    """
    if not vector or any(v not in (-1, 1) for v in vector):
        raise DomainError(f"W(v) needs a nonempty ±1 vector, got {list(vector)}")
    return in_profile_class(p, SignMatrix.column(vector), settings)
