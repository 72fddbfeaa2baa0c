"""
Walk primitives shared by every walk mode.

A walk is the sequence of M-cells the generator places its batches on. Every
walk mode compiles to one, and every walk obeys the same succession rules:
consecutive cells share a row or a column of M, and no cell repeats the
previous cell or the cell two steps back.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

from permprofile.core.errors import DomainError, WalkError, WordParseError
from permprofile.core.registry import override_required
from permprofile.sign_matrix import SignMatrix

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


class Axis(str, Enum):
    """The kind of line two cells share."""

    ROW = "row"
    COLUMN = "column"

    def other(self) -> "Axis":
        return Axis.COLUMN if self is Axis.ROW else Axis.ROW


class Vertical(str, Enum):
    TOP = "top"
    BOTTOM = "bottom"


class Horizontal(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Yearn:
    """
    The corner of its block a batch is pushed toward.

    A batch on a +1 cell yearns top-left or bottom-right; on a -1 cell it
    yearns top-right or bottom-left.
    """

    vertical: Vertical
    horizontal: Horizontal

    @classmethod
    def parse(cls, text: str) -> "Yearn":
        """Parse "bottom-right" and friends."""
        try:
            vertical, horizontal = text.strip().lower().split("-")
            return cls(Vertical(vertical), Horizontal(horizontal))
        except ValueError as e:
            raise DomainError(
                f"Cannot parse yearn {text!r}; expected e.g. 'bottom-right'"
            ) from e

    @classmethod
    def forced_by_horizontal(cls, sign: int, horizontal: Horizontal) -> "Yearn":
        """The only yearn on a cell of this sign with the given horizontal side."""
        increasing = sign > 0
        toward_right = horizontal is Horizontal.RIGHT
        vertical = Vertical.BOTTOM if increasing == toward_right else Vertical.TOP
        return cls(vertical, horizontal)

    @classmethod
    def forced_by_vertical(cls, sign: int, vertical: Vertical) -> "Yearn":
        """The only yearn on a cell of this sign with the given vertical side."""
        increasing = sign > 0
        toward_bottom = vertical is Vertical.BOTTOM
        horizontal = Horizontal.RIGHT if increasing == toward_bottom else Horizontal.LEFT
        return cls(vertical, horizontal)

    def fits(self, sign: int) -> bool:
        """True iff a batch on a cell of this sign may carry this yearn."""
        return self == Yearn.forced_by_vertical(sign, self.vertical)

    def __str__(self) -> str:
        return f"{self.vertical.value}-{self.horizontal.value}"


def initial_yearn(sign: int, requested: Optional[str]) -> Yearn:
    """
    The first batch's yearn.

    Args:
        sign: Sign of the start cell
        requested: None (rightward), a side ("left"/"right") or a full yearn

    Raises:
        DomainError: If the requested yearn does not fit the cell's sign
    """
    if requested is None:
        return Yearn.forced_by_horizontal(sign, Horizontal.RIGHT)
    text = requested.strip().lower()
    if text in (Horizontal.LEFT.value, Horizontal.RIGHT.value):
        return Yearn.forced_by_horizontal(sign, Horizontal(text))
    yearn = Yearn.parse(text)
    if not yearn.fits(sign):
        raise DomainError(f"Yearn {yearn} does not fit a cell of sign {sign:+d}")
    return yearn


@dataclass(frozen=True)
class WalkOptions:
    """
    Start choices for the generator.

    Attributes:
        start_cell: First batch's cell; default is the leftmost nonzero of the
            first nonzero row
        start_yearn: "left", "right" or a full yearn; default rightward
        first_step: Axis of the first move; each walk mode has its own default
        auto_double: Replace a matrix whose cycle has an odd number of -1
            entries by its double instead of refusing
        word: Letter word driving the flower and shared-edge modes
        mode: Walk mode name
        expand: Expand the endpoint batches into 2×2 blocks
    """

    start_cell: Optional[Cell] = None
    start_yearn: Optional[str] = None
    first_step: Optional[Axis] = None
    auto_double: bool = False
    word: Optional[str] = None
    mode: str = "cycle"
    expand: bool = True


@dataclass(frozen=True)
class LetterWord:
    """
    A word over a small alphabet: {0, 1, 2} for direction words, {a, b} for
    raw Thue-Morse words.
    """

    letters: str
    alphabet: str = "012"

    def __post_init__(self):
        foreign = sorted(set(self.letters) - set(self.alphabet))
        if foreign:
            raise WordParseError(
                f"Letters {foreign} are not in the alphabet {self.alphabet!r}"
            )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __getitem__(self, index: int) -> str:
        return self.letters[index]

    def __str__(self) -> str:
        return self.letters


def direction_word(text: Optional[str], letters: int) -> LetterWord:
    """
    Parse the nonempty word driving a multi-cycle walk.

    Args:
        text: The word, e.g. "2102"
        letters: Alphabet size; letters are 0..letters-1

    Raises:
        WordParseError: If the word is missing, empty or uses other letters
    """
    if not text:
        raise WordParseError("Multi-cycle walks need a nonempty --word")
    return LetterWord(text.strip(), "".join(str(k) for k in range(letters)))


def shared_axis(a: Cell, b: Cell) -> Optional[Axis]:
    """The line two distinct cells share, or None."""
    if a == b:
        return None
    if a[0] == b[0]:
        return Axis.ROW
    if a[1] == b[1]:
        return Axis.COLUMN
    return None


def default_start_cell(matrix: SignMatrix) -> Cell:
    """Leftmost nonzero entry of the first nonzero row."""
    support = matrix.support()
    if not support:
        raise DomainError("A zero matrix has no cell to start a walk from")
    return support[0]


def require_batches(n: int) -> None:
    if n < 1:
        raise DomainError(f"A walk needs at least one batch, got n={n}")


def validate_walk(matrix: SignMatrix, cells: Sequence[Cell]) -> None:
    """
    Check the succession rules.

    Raises:
        WalkError: At the first offending index, with that index attached
    """
    for index, cell in enumerate(cells):
        i, j = cell
        if not (1 <= i <= matrix.rows and 1 <= j <= matrix.cols) or not matrix.value(i, j):
            raise WalkError(f"Walk cell {cell} at index {index} is not a nonzero cell of M", index)
        if index >= 1 and shared_axis(cells[index - 1], cell) is None:
            raise WalkError(
                f"Walk cells {cells[index - 1]} and {cell} at index {index} share no line",
                index,
            )
        if index >= 2 and cells[index - 2] == cell:
            raise WalkError(
                f"Walk cell {cell} at index {index} repeats the cell two steps back",
                index,
            )


class WalkCompiler:
    """
    Base class for walk modes.

    Subclasses are registered with @walk_mode and must implement compile().
    """

    name = "base"

    @override_required
    def compile(self, matrix: SignMatrix, n: int, options: WalkOptions) -> List[Cell]:
        """
        Produce the first n cells of the walk.

        Args:
            matrix: The sign matrix M
            n: Number of batches
            options: Start choices and the driving word

        Returns:
            A walk that passes validate_walk
        """
        pass

    def start_cell(self, matrix: SignMatrix, options: WalkOptions) -> Cell:
        """The first batch's cell for this mode; defaults to the first nonzero cell."""
        return options.start_cell or default_start_cell(matrix)
