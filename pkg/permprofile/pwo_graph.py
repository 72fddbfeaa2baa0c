"""
The bipartite graph G(M) and the partial-well-order decision.

Pr(M) is partially well-ordered exactly when G(M) is a forest. Beyond that
test, this module recognises the three graph shapes the antichain generator
can walk: a single cycle, a flower of cycles through one vertex, and two
cycles sharing one edge.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from permprofile.core.errors import ShapeError
from permprofile.sign_matrix import SignMatrix
from permprofile.walks import Axis, Cell

logger = logging.getLogger(__name__)


def row_vertex(i: int) -> str:
    return f"x{i}"


def col_vertex(j: int) -> str:
    return f"y{j}"


@dataclass(frozen=True)
class BipartiteGraph:
    """
    G(M): row vertices x_1..x_r, column vertices y_1..y_s and an edge x_i-y_j
    for every nonzero cell (i, j).
    """

    rows: int
    cols: int
    edges: FrozenSet[Cell]

    def to_networkx(self) -> nx.Graph:
        """The graph with every vertex present; each edge carries its cell."""
        graph = nx.Graph()
        graph.add_nodes_from(row_vertex(i) for i in range(1, self.rows + 1))
        graph.add_nodes_from(col_vertex(j) for j in range(1, self.cols + 1))
        for i, j in sorted(self.edges):
            graph.add_edge(row_vertex(i), col_vertex(j), cell=(i, j))
        return graph


def bipartite_graph(matrix: SignMatrix) -> BipartiteGraph:
    return BipartiteGraph(matrix.rows, matrix.cols, frozenset(matrix.support()))


def dump_edges(graph: BipartiteGraph) -> str:
    """Edge list, one "x1-y2" line per edge, for debugging."""
    return "\n".join(f"{row_vertex(i)}-{col_vertex(j)}" for i, j in sorted(graph.edges))


class ShapeTag(str, Enum):
    FOREST = "forest"
    SINGLE_CYCLE = "single-cycle"
    CYCLES_PRESENT = "cycles-present"


@dataclass(frozen=True)
class GraphShape:
    """
    Classification of G(M).

    Attributes:
        tag: Forest, SingleCycle or CyclesPresent
        cells: For a single cycle, its cells in canonical order
        cycle_count: Number of independent cycles (edges - vertices + components)
    """

    tag: ShapeTag
    cells: Tuple[Cell, ...] = ()
    cycle_count: int = 0

    @property
    def c(self) -> int:
        """Length of the single cycle (0 for the other shapes)."""
        return len(self.cells)

    def __str__(self) -> str:
        if self.tag is ShapeTag.FOREST:
            return "forest"
        if self.tag is ShapeTag.SINGLE_CYCLE:
            return f"single cycle of length {self.c}"
        return f"{self.cycle_count} independent cycles"


def trace_cycle(cells: Iterable[Cell], start: Cell, first_axis: Axis) -> Tuple[Cell, ...]:
    """
    Walk a cycle of cells starting at start.

    Every row and column used by the cycle holds exactly two of its cells, so
    leaving a cell along an axis has a single destination. Axes alternate.

    Raises:
        ShapeError: If the cells do not form a cycle through start
    """
    by_row: Dict[int, List[Cell]] = {}
    by_col: Dict[int, List[Cell]] = {}
    cell_set = set(cells)
    for cell in cell_set:
        by_row.setdefault(cell[0], []).append(cell)
        by_col.setdefault(cell[1], []).append(cell)
    if start not in cell_set:
        raise ShapeError(f"Start cell {start} is not on the cycle")

    order = [start]
    current, axis = start, first_axis
    while True:
        line = by_row[current[0]] if axis is Axis.ROW else by_col[current[1]]
        if len(line) != 2:
            raise ShapeError(f"Cells {sorted(cell_set)} do not form a single cycle")
        current = line[0] if line[1] == current else line[1]
        if current == start:
            break
        order.append(current)
        if len(order) > len(cell_set):
            raise ShapeError(f"Cells {sorted(cell_set)} do not form a single cycle")
        axis = axis.other()
    if len(order) != len(cell_set):
        raise ShapeError(f"Cells {sorted(cell_set)} do not form a single cycle")
    return tuple(order)


def _cycle_count(graph: nx.Graph) -> int:
    return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)


def _core(graph: nx.Graph) -> nx.Graph:
    return graph.subgraph(v for v in graph if graph.degree(v) > 0)


def classify_graph(graph: BipartiteGraph) -> GraphShape:
    """
    Forest, a single cycle, or something with more cycles.

    A single cycle means the non-isolated vertices form exactly one cycle; its
    cells are listed from the least cell toward that cell's row neighbour.
    """
    g = graph.to_networkx()
    count = _cycle_count(g)
    if count == 0:
        return GraphShape(ShapeTag.FOREST)

    core = _core(g)
    if count == 1 and nx.is_connected(core) and all(d == 2 for _, d in core.degree()):
        start = min(graph.edges)
        return GraphShape(ShapeTag.SINGLE_CYCLE, trace_cycle(graph.edges, start, Axis.ROW), 1)
    return GraphShape(ShapeTag.CYCLES_PRESENT, cycle_count=count)


def is_pwo(matrix: SignMatrix) -> bool:
    """True iff Pr(M) is partially well-ordered, i.e. G(M) is a forest."""
    return classify_graph(bipartite_graph(matrix)).tag is ShapeTag.FOREST


@dataclass(frozen=True)
class FlowerStructure:
    """
    Cycles meeting at a single hub vertex and sharing no edges.

    Attributes:
        hub: The hub vertex name (e.g. "x1")
        hub_axis: ROW when the hub is a row vertex
        petals: Each petal's cells, starting at its hub cell with the smaller
            other coordinate and moving along the hub line first; petals are
            ordered by that starting cell
    """

    hub: str
    hub_axis: Axis
    petals: Tuple[Tuple[Cell, ...], ...]


def flower_structure(graph: BipartiteGraph) -> Optional[FlowerStructure]:
    """The flower decomposition of G(M), or None when G(M) is not a flower."""
    g = graph.to_networkx()
    core = _core(g)
    if core.number_of_nodes() == 0 or not nx.is_connected(core):
        return None
    hubs = [v for v, d in core.degree() if d != 2]
    if len(hubs) != 1:
        return None
    hub = hubs[0]
    degree = core.degree(hub)
    if degree < 4 or degree % 2:
        return None

    hub_axis = Axis.ROW if hub.startswith("x") else Axis.COLUMN
    rest = nx.Graph(core)
    rest.remove_node(hub)
    petals: List[Tuple[Cell, ...]] = []
    for component in nx.connected_components(rest):
        if not nx.is_tree(rest.subgraph(component)):
            return None
        hub_cells = [core.edges[hub, v]["cell"] for v in component if core.has_edge(hub, v)]
        if len(hub_cells) != 2:
            return None
        cells = [core.edges[u, v]["cell"] for u, v in core.subgraph(set(component) | {hub}).edges]
        if hub_axis is Axis.ROW:
            start = min(hub_cells, key=lambda cell: cell[1])
        else:
            start = min(hub_cells, key=lambda cell: cell[0])
        petals.append(trace_cycle(cells, start, hub_axis))

    if len(petals) < 2:
        return None
    key = (lambda petal: petal[0][1]) if hub_axis is Axis.ROW else (lambda petal: petal[0][0])
    petals.sort(key=key)
    return FlowerStructure(hub, hub_axis, tuple(petals))


@dataclass(frozen=True)
class SharedEdgeStructure:
    """
    Two cycles whose only common edge is one cell of M.

    Attributes:
        shared: The common cell
        cycles: The two cycles as sorted cell tuples, in lexicographic order
    """

    shared: Cell
    cycles: Tuple[Tuple[Cell, ...], Tuple[Cell, ...]]


def _cycle_cells(graph: nx.Graph, nodes: List[str]) -> FrozenSet[Cell]:
    pairs = zip(nodes, nodes[1:] + nodes[:1])
    return frozenset(graph.edges[u, v]["cell"] for u, v in pairs)


def shared_edge_structure(graph: BipartiteGraph) -> Optional[SharedEdgeStructure]:
    """The two cycles of G(M) and their shared cell, or None for other shapes."""
    g = graph.to_networkx()
    core = _core(g)
    if core.number_of_nodes() == 0 or not nx.is_connected(core) or _cycle_count(g) != 2:
        return None

    cycles = [_cycle_cells(core, list(nodes)) for nodes in nx.simple_cycles(core)]
    for first, second in combinations(cycles, 2):
        common = first & second
        if len(common) == 1 and first | second == graph.edges:
            pair = sorted((tuple(sorted(first)), tuple(sorted(second))))
            (shared,) = common
            logger.debug(f"Shared-edge structure: cell {shared}, cycles {pair}")
            return SharedEdgeStructure(shared, (pair[0], pair[1]))
    return None
