"""
Single-cycle walk implementation.
"""

import logging
from typing import List

from permprofile.core.errors import DomainError, ParityError, ShapeError
from permprofile.core.registry import walk_mode
from permprofile.pwo_graph import ShapeTag, bipartite_graph, classify_graph, trace_cycle
from permprofile.sign_matrix import SignMatrix
from permprofile.walks import (
    Axis,
    Cell,
    WalkCompiler,
    WalkOptions,
    require_batches,
    validate_walk,
)

logger = logging.getLogger(__name__)


@walk_mode("cycle", metadata={"description": "go round the single cycle of G(M)"})
class CycleWalk(WalkCompiler):
    """Walks the one cycle of G(M) over and over."""

    name = "cycle"

    def compile(self, matrix: SignMatrix, n: int, options: WalkOptions) -> List[Cell]:
        require_batches(n)
        shape = classify_graph(bipartite_graph(matrix))
        if shape.tag is not ShapeTag.SINGLE_CYCLE:
            raise ShapeError(f"The cycle walk needs G(M) to be a single cycle, but it is a {shape}")
        if matrix.minus_count() % 2:
            raise ParityError(
                f"M carries {matrix.minus_count()} entries equal to -1; "
                f"use double_matrix (or --auto-double) to get an even count"
            )

        start = self.start_cell(matrix, options)
        if start not in shape.cells:
            raise DomainError(f"Start cell {start} is not on the cycle {list(shape.cells)}")
        cycle = trace_cycle(shape.cells, start, options.first_step or Axis.ROW)
        logger.debug(f"Cycle order from {start}: {list(cycle)}")

        cells = [cycle[k % len(cycle)] for k in range(n)]
        validate_walk(matrix, cells)
        return cells
