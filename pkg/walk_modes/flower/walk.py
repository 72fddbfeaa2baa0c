"""
Flower walk implementation.

Letter k of the word sends the walk once round petal k. A petal is entered
at its hub cell with the larger other coordinate and left at the one with the
smaller, so every letter adds exactly one lap and consecutive laps meet on
the hub line.
"""

import logging
from typing import List

from permprofile.core.errors import ParityError, ShapeError, WalkError
from permprofile.core.registry import walk_mode
from permprofile.pwo_graph import bipartite_graph, flower_structure
from permprofile.sign_matrix import SignMatrix
from permprofile.walks import (
    Cell,
    WalkCompiler,
    WalkOptions,
    direction_word,
    require_batches,
    validate_walk,
)

logger = logging.getLogger(__name__)


@walk_mode("flower", metadata={"description": "one petal of a flower per letter"})
class FlowerWalk(WalkCompiler):
    """Drives the generator round the petals of a flower."""

    name = "flower"

    def compile(self, matrix: SignMatrix, n: int, options: WalkOptions) -> List[Cell]:
        require_batches(n)
        structure = flower_structure(bipartite_graph(matrix))
        if structure is None:
            raise ShapeError("The flower walk needs G(M) to be cycles through one hub vertex")

        petals = structure.petals
        for index, petal in enumerate(petals):
            minus = sum(1 for cell in petal if matrix.value(*cell) < 0)
            if minus % 2:
                raise ParityError(f"Petal {index} {list(petal)} carries {minus} entries equal to -1")

        word = direction_word(options.word, len(petals))
        start = petals[int(word[0])][0]
        if options.start_cell is not None and options.start_cell != start:
            logger.warning(
                f"Flower walks start at {start}, the entry cell of the first letter's petal; "
                f"ignoring start cell {options.start_cell}"
            )

        cells: List[Cell] = [start]
        for letter in word:
            if len(cells) >= n:
                break
            petal = petals[int(letter)]
            cells.extend(petal[1:] + petal[:1])
        if len(cells) < n:
            raise WalkError(
                f"Word {str(word)!r} yields {len(cells)} cells, fewer than the {n} requested",
                len(cells),
            )

        cells = cells[:n]
        validate_walk(matrix, cells)
        return cells
