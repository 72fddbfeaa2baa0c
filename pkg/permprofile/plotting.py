"""
Dot plots of permutation matrices in SVG.

Row 1 is drawn at the top. Each point is its own artist with gid "dot-<k>"
and each batch succession an arrow with gid "arrow-<k>", so the SVG can be
inspected element by element. Output is byte-stable for a given input and
matplotlib version.
"""

import io
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import FancyArrowPatch

from permprofile.antichain_gen import GeneratorState, expanded_layout
from permprofile.core.errors import DomainError
from permprofile.sign_matrix import Position, QuasiPermMatrix

logger = logging.getLogger(__name__)

SVG_SALT = "permprofile"


@dataclass(frozen=True)
class PlotSpec:
    """
    What to draw.

    Attributes:
        rows: Matrix rows
        cols: Matrix columns
        points: Support positions
        arrows: Ordered (from, to) pairs between points
        size_inches: Canvas edge length
        dot_size: Marker size in points
        color: Dot and arrow colour
        grid: Draw the cell grid
    """

    rows: int
    cols: int
    points: Tuple[Position, ...]
    arrows: Tuple[Tuple[Position, Position], ...] = field(default_factory=tuple)
    size_inches: float = 4.0
    dot_size: float = 6.0
    color: str = "black"
    grid: bool = True

    def __post_init__(self):
        known = set(self.points)
        for tail, head in self.arrows:
            if tail not in known or head not in known:
                raise DomainError(f"Arrow {tail} -> {head} does not join two plotted points")


def spec_for_matrix(matrix: QuasiPermMatrix) -> PlotSpec:
    return PlotSpec(matrix.rows, matrix.cols, tuple(matrix.points()))


def spec_for_state(state: GeneratorState, expand: bool = True) -> PlotSpec:
    """Points of P_n (or P̄_n) with one arrow from each batch to the next."""
    if expand:
        layout = expanded_layout(state)
        matrix, anchors = layout.matrix, layout.representatives
    else:
        matrix = state.to_matrix()
        anchors = tuple(b.position for b in state.batches)
    arrows = tuple(zip(anchors, anchors[1:]))
    return PlotSpec(matrix.rows, matrix.cols, tuple(matrix.points()), arrows)


def plot_svg(spec: PlotSpec, title: Optional[str] = None) -> str:
    """Render a PlotSpec as an SVG document."""
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "none"}):
        figure = Figure(figsize=(spec.size_inches, spec.size_inches))
        axes = figure.add_subplot(1, 1, 1)
        axes.set_xlim(0.5, spec.cols + 0.5)
        axes.set_ylim(spec.rows + 0.5, 0.5)
        axes.set_aspect("equal")
        axes.set_xticks([])
        axes.set_yticks([])
        if spec.grid:
            for k in range(spec.cols + 1):
                axes.axvline(k + 0.5, color="0.85", linewidth=0.5)
            for k in range(spec.rows + 1):
                axes.axhline(k + 0.5, color="0.85", linewidth=0.5)

        for k, (row, col) in enumerate(spec.points):
            (dot,) = axes.plot([col], [row], "o", color=spec.color, markersize=spec.dot_size)
            dot.set_gid(f"dot-{k}")

        for k, ((r0, c0), (r1, c1)) in enumerate(spec.arrows):
            arrow = FancyArrowPatch(
                (c0, r0),
                (c1, r1),
                arrowstyle="-|>",
                mutation_scale=8,
                color=spec.color,
                linewidth=0.6,
                shrinkA=4,
                shrinkB=4,
            )
            arrow.set_gid(f"arrow-{k}")
            axes.add_patch(arrow)

        if title:
            axes.set_title(title)

        buffer = io.StringIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    logger.debug(f"Plotted {len(spec.points)} points and {len(spec.arrows)} arrows")
    return buffer.getvalue()
