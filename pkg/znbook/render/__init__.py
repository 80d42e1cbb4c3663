"""SVG drawings of book embeddings on a circular spine."""

from __future__ import annotations

import logging
import math
import typing

import drawsvg as draw

from znbook.circulant import Circulant, jump_of_edge
from znbook.descriptor import Field
from znbook.embedding import BookEmbedding, EmbeddingError, Page
from znbook.record import Record

log = logging.getLogger(__name__)

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
    "#393b79",
    "#637939",
)
DASHES = ("", "6,3", "2,2", "8,3,2,3")


class RenderOptions(Record):
    """Drawing options; the jump filter draws only selected parallel families."""

    radius: float = Field(200.0, check_types=True, on_setattr=float)
    show_labels: bool = Field(True, check_types=True)
    jumps: typing.Optional[typing.Tuple[int, ...]] = Field(
        None, on_setattr=lambda jumps: None if jumps is None else tuple(sorted(jumps))
    )
    palette: typing.Tuple[str, ...] = Field(PALETTE, on_setattr=tuple)

    def _post_init_(self):
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not self.palette:
            raise ValueError("palette must not be empty")


def vertex_point(position: int, n: int, radius: float) -> typing.Tuple[float, float]:
    """Place spine position p at angle 90° - 360°·p/n (top, then clockwise).

    Coordinates are relative to the centre with the SVG y axis pointing down.
    """
    angle = math.pi / 2 - 2 * math.pi * position / n
    return round(radius * math.cos(angle), 3), round(-radius * math.sin(angle), 3)


def page_style(color: int, palette: typing.Sequence[str]) -> dict:
    """Get the stroke of a page; colours cycle, each cycle adds a dash pattern."""
    stroke = {"stroke": palette[color % len(palette)]}
    dash = DASHES[(color // len(palette)) % len(DASHES)]
    if dash:
        stroke["stroke_dasharray"] = dash
    return stroke


def _edge_jumps(page: Page, circulant: typing.Optional[Circulant]) -> dict:
    if page.jump is not None:
        return dict.fromkeys(page.edges, page.jump)
    if circulant is None:
        raise EmbeddingError(f"Page {page.color} has no jump tag, pass the circulant")
    return {edge: jump_of_edge(circulant, edge) for edge in page.edges}


def render_svg(
    emb: BookEmbedding,
    options: RenderOptions = None,
    circulant: Circulant = None,
) -> str:
    """Draw the embedding: one circle per vertex and one path per drawn edge.

    Raises
    ------
    EmbeddingError:
        if a jump filter is requested but the jump of an edge is unknown, the
        filter is not a subset of the circulant's jumps, or an edge has a label
        outside the spine.
    """
    options = options or RenderOptions()
    if options.jumps is not None and circulant is not None:
        foreign = sorted(set(options.jumps) - set(circulant.jumps))
        if foreign:
            raise EmbeddingError(f"Jump filter {foreign} is not in {circulant}")
    for page in emb.pages:
        for edge in page.edges:
            if not (1 <= edge.u and edge.v <= emb.n):
                raise EmbeddingError(
                    f"Edge {edge} on page {page.color} is not on the spine 1..{emb.n}"
                )

    margin = 30.0
    size = 2 * (options.radius + margin)
    drawing = draw.Drawing(size, size, origin="center")

    drawn = 0
    for page in sorted(emb.pages, key=lambda page: page.color):
        style = page_style(page.color, options.palette)
        jumps = None if options.jumps is None else _edge_jumps(page, circulant)
        for edge in page.edges:
            if jumps is not None and jumps[edge] not in options.jumps:
                continue
            x1, y1 = vertex_point(emb.order.position_of(edge.u), emb.n, options.radius)
            x2, y2 = vertex_point(emb.order.position_of(edge.v), emb.n, options.radius)
            drawing.append(draw.Line(x1, y1, x2, y2, stroke_width=1.5, **style))
            drawn += 1

    for position, label in enumerate(emb.order):
        x, y = vertex_point(position, emb.n, options.radius)
        drawing.append(draw.Circle(x, y, 4, fill="#000000"))
        if options.show_labels:
            lx, ly = vertex_point(position, emb.n, options.radius + 16)
            drawing.append(
                draw.Text(
                    str(label),
                    11,
                    lx,
                    ly,
                    text_anchor="middle",
                    dominant_baseline="central",
                    font_family="sans-serif",
                )
            )
    log.debug(f"Rendered {drawn} edges on {emb.n} vertices")
    return drawing.as_svg()
