"""
Shared-edge walk implementation.

Every lap starts from the shared cell s and goes round one of the two cycles,
column-first or row-first. Letter 0 repeats the last lap, 1 switches cycle
and keeps the direction, 2 switches both. The shared cell is dropped from a
lap when the walk can reach the lap's second cell directly.
"""

import logging
from typing import List, Tuple

from permprofile.core.errors import DomainError, ShapeError, WalkError
from permprofile.core.registry import walk_mode
from permprofile.pwo_graph import SharedEdgeStructure, bipartite_graph, shared_edge_structure, trace_cycle
from permprofile.sign_matrix import SignMatrix
from permprofile.walks import (
    Axis,
    Cell,
    WalkCompiler,
    WalkOptions,
    direction_word,
    require_batches,
    shared_axis,
    validate_walk,
)

logger = logging.getLogger(__name__)


def _lap(structure: SharedEdgeStructure, index: int, axis: Axis) -> Tuple[Cell, ...]:
    return trace_cycle(structure.cycles[index], structure.shared, axis)


@walk_mode("shared-edge", metadata={"description": "two cycles with one common cell"})
class SharedEdgeWalk(WalkCompiler):
    """Switches between two cycles sharing a cell as the word dictates."""

    name = "shared-edge"

    def compile(self, matrix: SignMatrix, n: int, options: WalkOptions) -> List[Cell]:
        require_batches(n)
        structure = shared_edge_structure(bipartite_graph(matrix))
        if structure is None:
            raise ShapeError("The shared-edge walk needs G(M) to be two cycles sharing one edge")

        word = direction_word(options.word, 3)
        start = self.start_cell(matrix, options)
        owners = [k for k, cycle in enumerate(structure.cycles) if start in cycle]
        if not owners:
            raise DomainError(f"Start cell {start} lies on neither cycle")
        index = owners[0]
        axis = options.first_step or Axis.COLUMN

        cells: List[Cell] = list(_lap(structure, index, axis))
        for letter in word:
            if len(cells) >= n:
                break
            if letter in "12":
                index = 1 - index
            if letter == "2":
                axis = axis.other()
            lap = _lap(structure, index, axis)
            if shared_axis(cells[-1], lap[1]) is not None:
                lap = lap[1:]
            cells.extend(lap)
        if len(cells) < n:
            raise WalkError(
                f"Word {str(word)!r} yields {len(cells)} cells, fewer than the {n} requested",
                len(cells),
            )

        cells = cells[:n]
        validate_walk(matrix, cells)
        return cells
