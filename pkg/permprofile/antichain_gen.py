"""
The batch/yearn antichain generator and its companions.

A walk over the nonzero cells of M is compiled by a walk mode, then batches
are inserted one per walk cell. Each batch is pushed as far toward its yearn
as the batches already placed allow, without overtaking its predecessor.
Expanding the first and last batch into 2×2 blocks gives P_n; for a single
cycle the P_n from some point on form an infinite antichain in Pr(M).

The module also carries the Widderschin closed form, the Thue-Morse words
that drive aperiodic walks, and pairwise antichain verification.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from permprofile.core.errors import ConsistencyError, DomainError, WalkError
from permprofile.core.settings import DEFAULT_SETTINGS, Settings
from permprofile.core.walk_loader import load_walk_mode
from permprofile.perm_core import Permutation
from permprofile.pwo_graph import ShapeTag, bipartite_graph, classify_graph
from permprofile.sign_matrix import (
    Matrix,
    Position,
    QuasiPermMatrix,
    SignMatrix,
    double_matrix,
    matrix_contains,
    matrix_perm,
    reduce_matrix,
)
from permprofile.walks import (
    Axis,
    Cell,
    Horizontal,
    LetterWord,
    Vertical,
    WalkOptions,
    Yearn,
    initial_yearn,
    shared_axis,
)

logger = logging.getLogger(__name__)

WORD_MODES = ("flower", "shared-edge")


@dataclass(frozen=True)
class Batch:
    """
    One inserted entry of P̄_n.

    Attributes:
        number: Insertion order, starting at 1
        cell: The cell of M the batch belongs to
        yearn: The corner the batch is pushed toward
        row_rank: Current row of the entry in P̄_n
        col_rank: Current column of the entry in P̄_n
    """

    number: int
    cell: Cell
    yearn: Yearn
    row_rank: int
    col_rank: int

    @property
    def position(self) -> Position:
        return (self.row_rank, self.col_rank)


@dataclass(frozen=True)
class GeneratorState:
    """
    P̄_n with its batch metadata.

    Attributes:
        matrix: The sign matrix the walk runs on (the doubled matrix when the
            generator substituted it)
        walk: The cells consumed so far, one per batch
        batches: The batches in insertion order
    """

    matrix: SignMatrix
    walk: Tuple[Cell, ...] = ()
    batches: Tuple[Batch, ...] = ()

    @property
    def n(self) -> int:
        return len(self.batches)

    def to_matrix(self) -> QuasiPermMatrix:
        """P̄_n as a permutation matrix."""
        return QuasiPermMatrix(self.n, self.n, frozenset(b.position for b in self.batches))

    def permutation(self) -> Permutation:
        """The permutation of P̄_n."""
        return matrix_perm(self.to_matrix())

    def restricted(self, count: int) -> QuasiPermMatrix:
        """The pattern formed by batches 1..count, reduced."""
        return reduce_matrix(
            QuasiPermMatrix(
                self.n, self.n, frozenset(b.position for b in self.batches[:count])
            )
        )


def propagate_yearn(prev: Batch, next_cell: Cell, sign: int) -> Yearn:
    """
    The yearn of the batch following prev on next_cell.

    A shared row keeps the vertical side, a shared column keeps the horizontal
    side; the sign of next_cell forces the other side.

    Raises:
        WalkError: If the two cells share no line
    """
    axis = shared_axis(prev.cell, next_cell)
    if axis is None:
        raise WalkError(f"Cells {prev.cell} and {next_cell} share neither a row nor a column")
    if axis is Axis.ROW:
        return Yearn.forced_by_vertical(sign, prev.yearn.vertical)
    return Yearn.forced_by_horizontal(sign, prev.yearn.horizontal)


def _slot(
    ranks_before: Iterable[int],
    ranks_after: Iterable[int],
    n: int,
    prev_rank: Optional[int],
    prev_toward_start: bool,
    toward_start: bool,
    axis: str,
) -> int:
    """
    Insertion slot s in 0..n on one axis; the new entry takes rank s+1.

    ranks_before belong to batches whose M-line precedes the new cell's line
    and must stay in front; ranks_after must stay behind. A predecessor on
    the same line must not be overtaken, so the new entry goes to its
    non-extreme side.
    """
    lo = max(ranks_before, default=0)
    hi = min((rank - 1 for rank in ranks_after), default=n)
    if prev_rank is not None:
        if prev_toward_start:
            lo = max(lo, prev_rank)
        else:
            hi = min(hi, prev_rank - 1)
    if lo > hi:
        raise ConsistencyError(f"No feasible {axis} slot: interval [{lo}, {hi}] is empty")
    return lo if toward_start else hi


def insert_batch(state: GeneratorState, cell: Cell, yearn: Yearn) -> GeneratorState:
    """
    Place the next batch.

    Args:
        state: P̄_{n-1}
        cell: The walk cell of the new batch
        yearn: Its yearn, compatible with the cell's sign

    Returns:
        P̄_n; earlier batches keep their relative order

    Raises:
        DomainError: If the yearn does not fit the cell's sign
        ConsistencyError: If no slot satisfies the placement constraints
    """
    sign = state.matrix.value(*cell)
    if not sign:
        raise WalkError(f"Cell {cell} is zero in M")
    if not yearn.fits(sign):
        raise DomainError(f"Yearn {yearn} does not fit cell {cell} of sign {sign:+d}")

    i, j = cell
    n = state.n
    prev = state.batches[-1] if state.batches else None
    same_row = prev is not None and prev.cell[0] == i
    same_col = prev is not None and prev.cell[1] == j

    row_slot = _slot(
        (b.row_rank for b in state.batches if b.cell[0] < i),
        (b.row_rank for b in state.batches if b.cell[0] > i),
        n,
        prev.row_rank if same_row else None,
        same_row and prev.yearn.vertical is Vertical.TOP,
        yearn.vertical is Vertical.TOP,
        "row",
    )
    col_slot = _slot(
        (b.col_rank for b in state.batches if b.cell[1] < j),
        (b.col_rank for b in state.batches if b.cell[1] > j),
        n,
        prev.col_rank if same_col else None,
        same_col and prev.yearn.horizontal is Horizontal.LEFT,
        yearn.horizontal is Horizontal.LEFT,
        "column",
    )

    shifted = tuple(
        replace(
            b,
            row_rank=b.row_rank + (b.row_rank > row_slot),
            col_rank=b.col_rank + (b.col_rank > col_slot),
        )
        for b in state.batches
    )
    batch = Batch(n + 1, cell, yearn, row_slot + 1, col_slot + 1)
    logger.debug(f"Batch {batch.number} on {cell} yearning {yearn} at {batch.position}")
    return GeneratorState(state.matrix, state.walk + (cell,), shifted + (batch,))


def prepare_matrix(matrix: SignMatrix, options: WalkOptions) -> Tuple[SignMatrix, WalkOptions]:
    """
    Substitute the doubled matrix when auto-doubling a cycle with odd parity.

    The start cell moves to the entry of its 2×2 block that lies in the block's
    first row.
    """
    if options.mode != "cycle" or not options.auto_double or matrix.minus_count() % 2 == 0:
        return matrix, options
    if classify_graph(bipartite_graph(matrix)).tag is not ShapeTag.SINGLE_CYCLE:
        return matrix, options

    doubled = double_matrix(matrix)
    start = options.start_cell
    if start is not None:
        i, j = start
        start = (2 * i - 1, 2 * j - 1) if matrix.value(i, j) > 0 else (2 * i - 1, 2 * j)
    logger.warning(
        f"M has an odd number ({matrix.minus_count()}) of entries equal to -1; "
        f"generating from its {doubled.rows}x{doubled.cols} double instead"
    )
    return doubled, replace(options, start_cell=start)


def _compile_walk(matrix: SignMatrix, n: int, options: WalkOptions) -> List[Cell]:
    return load_walk_mode(options.mode).compile(matrix, n, options)


def compile_cycle_walk(
    matrix: SignMatrix, n: int, options: WalkOptions = WalkOptions()
) -> List[Cell]:
    """
    The first n cells of the walk round the single cycle of G(M).

    Raises:
        ShapeError: If G(M) is not a single cycle
        ParityError: If the cycle has an odd number of -1 entries
    """
    return _compile_walk(matrix, n, replace(options, mode="cycle"))


def compile_word_walk(
    matrix: SignMatrix,
    word: LetterWord,
    mode: str,
    n: int,
    options: WalkOptions = WalkOptions(),
) -> List[Cell]:
    """
    The first n cells of a word-driven walk in flower or shared-edge mode.

    Raises:
        DomainError: If the mode is not a word-driven mode
        WalkError: If the word is too short or the walk breaks the succession rules
    """
    if mode not in WORD_MODES:
        raise DomainError(f"Word walks run in {WORD_MODES}, not {mode!r}")
    return _compile_walk(matrix, n, replace(options, mode=mode, word=str(word)))


def iter_pbar(
    matrix: SignMatrix, n_max: int, options: WalkOptions = WalkOptions()
) -> Iterator[GeneratorState]:
    """Yield P̄_1, ..., P̄_{n_max} from a single walk."""
    matrix, options = prepare_matrix(matrix, options)
    walk = _compile_walk(matrix, n_max, options)
    state = GeneratorState(matrix)
    for index, cell in enumerate(walk):
        sign = matrix.value(*cell)
        if index == 0:
            yearn = initial_yearn(sign, options.start_yearn)
        else:
            yearn = propagate_yearn(state.batches[-1], cell, sign)
        state = insert_batch(state, cell, yearn)
        yield state


def generate_pbar(
    matrix: SignMatrix, n: int, options: WalkOptions = WalkOptions()
) -> GeneratorState:
    """P̄_n with full batch metadata."""
    state = None
    for state in iter_pbar(matrix, n, options):
        pass
    return state


def _block(position: Position, sign: int) -> Tuple[Position, Position]:
    r, c = position
    if sign > 0:
        return (r, c), (r + 1, c + 1)
    return (r, c + 1), (r + 1, c)


@dataclass(frozen=True)
class ExpandedLayout:
    """
    P_n with the place of every batch in it.

    Attributes:
        matrix: P_n
        blocks: The two entries of the first and of the last batch
        representatives: One position per batch; an endpoint batch is
            represented by its block's top entry
    """

    matrix: QuasiPermMatrix
    blocks: Tuple[Tuple[Position, Position], Tuple[Position, Position]]
    representatives: Tuple[Position, ...]


def expanded_layout(state: GeneratorState) -> ExpandedLayout:
    """
    Expand P̄_n into P_n.

    The first and last batches become 2×2 blocks, identity for a +1 cell and
    anti-identity for a -1 cell; every other entry shifts past the inserted
    row and column.

    Raises:
        DomainError: If n < 2
    """
    if state.n < 2:
        raise DomainError(f"Endpoint expansion needs n >= 2, got n={state.n}")
    first, last = state.batches[0], state.batches[-1]

    def shift(position: Position) -> Position:
        r, c = position
        return (
            r + (r > first.row_rank) + (r > last.row_rank),
            c + (c > first.col_rank) + (c > last.col_rank),
        )

    support: List[Position] = []
    representatives: List[Position] = []
    blocks: List[Tuple[Position, Position]] = []
    for batch in state.batches:
        moved = shift(batch.position)
        if batch is first or batch is last:
            block = _block(moved, state.matrix.value(*batch.cell))
            blocks.append(block)
            support.extend(block)
            representatives.append(min(block))
        else:
            support.append(moved)
            representatives.append(moved)
    size = state.n + 2
    return ExpandedLayout(
        QuasiPermMatrix(size, size, frozenset(support)),
        (blocks[0], blocks[1]),
        tuple(representatives),
    )


def expand_endpoints(state: GeneratorState) -> QuasiPermMatrix:
    """P_n: P̄_n with its first and last batch doubled into 2×2 blocks."""
    return expanded_layout(state).matrix


def interior_entry(state: GeneratorState, which: str = "first") -> Position:
    """
    The interior entry of an endpoint block of P_n.

    It is the block entry lying between the other block entry and the nearest
    batch on the same cell: the next one for the first batch, the previous one
    for the last batch.

    Raises:
        DomainError: If no other batch shares the endpoint's cell
        ConsistencyError: If the rows and the columns disagree on the entry
    """
    layout = expanded_layout(state)
    if which == "first":
        index, block = 0, layout.blocks[0]
        others = range(1, state.n)
    elif which == "last":
        index, block = state.n - 1, layout.blocks[1]
        others = range(state.n - 2, -1, -1)
    else:
        raise DomainError(f"which must be 'first' or 'last', got {which!r}")

    endpoint = state.batches[index]
    neighbour = next((k for k in others if state.batches[k].cell == endpoint.cell), None)
    if neighbour is None:
        raise DomainError(f"No other batch lies on cell {endpoint.cell} in P_{state.n}")
    target = layout.representatives[neighbour]

    a, b = block
    by_row = a if abs(a[0] - target[0]) < abs(b[0] - target[0]) else b
    by_col = a if abs(a[1] - target[1]) < abs(b[1] - target[1]) else b
    if by_row != by_col:
        raise ConsistencyError(f"Block {a}, {b} has no interior entry toward {target}")
    return by_row


def trim_first_batch(state: GeneratorState) -> QuasiPermMatrix:
    """
    P_n′: P_n with the non-interior entry of the first block removed, reduced.

    For M = ((1,-1),(-1,1)) and n = 10 this is the 11×11 matrix whose
    closure escapes the antichain {P_n}.
    """
    layout = expanded_layout(state)
    interior = interior_entry(state, "first")
    a, b = layout.blocks[0]
    outer = a if b == interior else b
    P = layout.matrix
    return reduce_matrix(QuasiPermMatrix(P.rows, P.cols, P.support - {outer}))


def generate_antichain(
    matrix: SignMatrix, sizes: Sequence[int], options: WalkOptions = WalkOptions()
) -> List[QuasiPermMatrix]:
    """
    P_n (or P̄_n when options.expand is off) for each requested n.

    All sizes come from one walk, so the elements share their prefix batches.

    Raises:
        DomainError: If no sizes are given, or a size is too small
    """
    if not sizes:
        raise DomainError("generate_antichain needs at least one size")
    smallest = 2 if options.expand else 1
    if min(sizes) < smallest:
        raise DomainError(f"Sizes must be at least {smallest}, got {min(sizes)}")

    wanted = set(sizes)
    found: Dict[int, QuasiPermMatrix] = {}
    for state in iter_pbar(matrix, max(sizes), options):
        if state.n in wanted:
            found[state.n] = expand_endpoints(state) if options.expand else state.to_matrix()
    logger.info(f"Generated {len(found)} elements for sizes {sorted(wanted)}")
    return [found[n] for n in sizes]


def sizes_ending_at(
    matrix: SignMatrix, sizes: Iterable[int], cell: Cell, options: WalkOptions = WalkOptions()
) -> List[int]:
    """
    The sizes n whose last batch lies on cell.

    Fixing the last cell fixes the residue of n modulo the cycle length,
    which is how fundamental antichains are selected; fundamentality itself
    is not checked. With auto-doubling the cell refers to the doubled matrix.
    """
    candidates = sorted(set(sizes))
    if not candidates:
        return []
    matrix, options = prepare_matrix(matrix, options)
    walk = _compile_walk(matrix, candidates[-1], options)
    return [n for n in candidates if n >= 1 and walk[n - 1] == cell]


def widderschin(k: int) -> Permutation:
    """
    w_k, an element of the Widderschin antichain; |w_k| = 4k+7.

    Raises:
        DomainError: If k < 1
    """
    if k < 1:
        raise DomainError(f"widderschin needs k >= 1, got {k}")
    values: List[int] = []
    for high, low in zip(range(4 * k + 4, 2 * k + 5, -2), range(1, 2 * k, 2)):
        values.extend((high, low))
    values.extend((2 * k + 3, 2 * k + 1, 2 * k + 4, 2 * k + 5, 2 * k + 7, 2 * k + 2))
    for high, low in zip(range(2 * k + 9, 4 * k + 6, 2), range(2 * k, 3, -2)):
        values.extend((high, low))
    values.extend((4 * k + 6, 4 * k + 7, 2))
    return Permutation(tuple(values))


def thue_morse(generation: int) -> LetterWord:
    """
    The Thue-Morse prefix over {a, b}.

    Generation g has 2^(g-1) letters (g = 6 gives the familiar 32-letter
    prefix abbabaab...); generation 0 is the empty word.

    Raises:
        DomainError: If generation < 0
    """
    if generation < 0:
        raise DomainError(f"Thue-Morse generation must be >= 0, got {generation}")
    if generation == 0:
        return LetterWord("", "ab")
    u, v = "a", "b"
    for _ in range(generation - 1):
        u, v = u + v, v + u
    return LetterWord(u, "ab")


_SUBSTITUTIONS = (("abb", "2"), ("ab", "1"), ("a", "0"))


def tm_substitute(word: LetterWord) -> LetterWord:
    """
    Rewrite abb -> 2, ab -> 1, a -> 0 in one greedy left-to-right pass.

    A b that no a claims (a leading b, or a third b after abb) produces no
    letter, so every word over {a, b} has an image.

    Raises:
        WordParseError: If the word is not over {a, b}
    """
    text = str(word) if isinstance(word, LetterWord) else word
    LetterWord(text, "ab")
    out: List[str] = []
    position = 0
    while position < len(text):
        for pattern, letter in _SUBSTITUTIONS:
            if text.startswith(pattern, position):
                out.append(letter)
                position += len(pattern)
                break
        else:
            logger.debug(f"Skipping unclaimed 'b' at position {position} of {text!r}")
            position += 1
    return LetterWord("".join(out), "012")


def is_square_free(word: Iterable[str]) -> bool:
    """True iff no factor of the word has the form xx."""
    letters = "".join(word)
    size = len(letters)
    for start in range(size):
        for half in range(1, (size - start) // 2 + 1):
            if letters[start:start + half] == letters[start + half:start + 2 * half]:
                return False
    return True


@dataclass(frozen=True)
class ComparablePair:
    """elements[lower] <= elements[upper] under containment."""

    lower: int
    upper: int


@dataclass(frozen=True)
class AntichainReport:
    """
    Outcome of a pairwise containment check.

    Attributes:
        size: Number of elements checked
        comparable: Every comparable pair, ordered by index
    """

    size: int
    comparable: Tuple[ComparablePair, ...] = field(default_factory=tuple)

    @property
    def is_antichain(self) -> bool:
        return not self.comparable


def _compare(elements: Sequence[Matrix], i: int, j: int) -> Optional[ComparablePair]:
    if matrix_contains(elements[j], elements[i]):
        return ComparablePair(i, j)
    if matrix_contains(elements[i], elements[j]):
        return ComparablePair(j, i)
    return None


def verify_antichain(
    elements: Sequence[Matrix], settings: Settings = DEFAULT_SETTINGS
) -> AntichainReport:
    """
    Check every pair of elements for containment.

    Returns:
        A report listing every comparable pair; empty exactly for an antichain
    """
    pairs = list(combinations(range(len(elements)), 2))
    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            verdicts = list(pool.map(lambda pair: _compare(elements, *pair), pairs))
    else:
        verdicts = [_compare(elements, i, j) for i, j in pairs]
    comparable = tuple(pair for pair in verdicts if pair is not None)
    logger.info(
        f"Checked {len(pairs)} pairs of {len(elements)} elements: "
        f"{len(comparable)} comparable"
    )
    return AntichainReport(len(elements), comparable)


def uniqueness_bound(c: int) -> int:
    """
    (c+1)c²+1: from this size on, P_n has a unique M-partition.

    Raises:
        DomainError: If c is odd or below 4
    """
    if c < 4 or c % 2:
        raise DomainError(f"Cycle length must be even and at least 4, got {c}")
    return (c + 1) * c * c + 1
