"""Unit tests for the SVG renderer."""

import math
import xml.etree.ElementTree as ET

import pytest

from znbook.circulant import make_circulant
from znbook.document import embedding_from_json
from znbook.embedding import EmbeddingError, parallel_embedding, ysl_embedding
from znbook.orders import natural_order
from znbook.render import (
    DASHES,
    PALETTE,
    RenderOptions,
    page_style,
    render_svg,
    vertex_point,
)

SVG = "{http://www.w3.org/2000/svg}"


def elements(svg: str, tag: str) -> list:
    """Parse the drawing and collect all elements of a tag."""
    return list(ET.fromstring(svg).iter(f"{SVG}{tag}"))


def test_render_k33():
    """One path per edge, one circle and label per vertex."""
    svg = render_svg(ysl_embedding(make_circulant(6, [1, 3])))
    assert len(elements(svg, "path")) == 9
    assert len(elements(svg, "circle")) == 6
    assert [text.text for text in elements(svg, "text")] == ["1", "6", "3", "4", "5", "2"]


def test_render_positions():
    """Position 0 is on top, the spine runs clockwise."""
    svg = render_svg(ysl_embedding(make_circulant(4, [1])), RenderOptions(radius=100))
    points = [
        (float(circle.get("cx")), float(circle.get("cy")))
        for circle in elements(svg, "circle")
    ]
    expected = [(0, -100), (100, 0), (0, 100), (-100, 0)]
    for (x, y), (ex, ey) in zip(points, expected):
        assert math.isclose(x, ex, abs_tol=1e-3)
        assert math.isclose(y, ey, abs_tol=1e-3)


def test_render_jump_filter():
    """Only the jump 1 and 5 families of C(16, {1, 3, 5, 7})."""
    c = make_circulant(16, [1, 3, 5, 7])
    emb = ysl_embedding(c)
    svg = render_svg(emb, RenderOptions(jumps=[5, 1]), circulant=c)
    assert len(elements(svg, "path")) == 4 * 8
    assert len(elements(svg, "circle")) == 16
    # jump tags on the pages are enough
    assert render_svg(emb, RenderOptions(jumps=[1, 5])) == svg


def test_render_jump_filter_untagged():
    """Untagged pages need the circulant to filter by jump."""
    c = make_circulant(8, [1, 3])
    emb = parallel_embedding(c, natural_order(8))
    options = RenderOptions(jumps=[3])
    with pytest.raises(EmbeddingError, match="no jump tag"):
        render_svg(emb, options)
    assert len(elements(render_svg(emb, options, circulant=c), "path")) == 8
    with pytest.raises(EmbeddingError, match="not in"):
        render_svg(emb, RenderOptions(jumps=[2]), circulant=c)


def test_render_without_labels():
    """Labels can be switched off."""
    svg = render_svg(
        ysl_embedding(make_circulant(6, [1, 3])), RenderOptions(show_labels=False)
    )
    assert elements(svg, "text") == []


def test_render_is_deterministic():
    """Equal embeddings give equal drawings."""
    c = make_circulant(12, [1, 3, 5])
    assert render_svg(ysl_embedding(c)) == render_svg(ysl_embedding(c))


def test_vertex_point():
    """Rounded coordinates relative to the centre."""
    assert vertex_point(0, 8, 200) == (0.0, -200.0)
    x, y = vertex_point(1, 8, 200)
    assert (x, y) == (round(200 / math.sqrt(2), 3), round(-200 / math.sqrt(2), 3))


def test_page_style():
    """Colours cycle through the palette, then dash patterns are added."""
    assert page_style(0, PALETTE) == {"stroke": PALETTE[0]}
    assert page_style(13, PALETTE) == {
        "stroke": PALETTE[1],
        "stroke_dasharray": DASHES[1],
    }
    assert page_style(3, ["#000000"]) == {
        "stroke": "#000000",
        "stroke_dasharray": DASHES[3],
    }


def test_render_options():
    """Defaults and validation."""
    options = RenderOptions(radius=50, jumps=[5, 1])
    assert options.radius == 50.0
    assert isinstance(options.radius, float)
    assert options.jumps == (1, 5)
    assert RenderOptions().palette == PALETTE
    assert RenderOptions().jumps is None
    with pytest.raises(ValueError):
        RenderOptions(radius=0)
    with pytest.raises(ValueError):
        RenderOptions(palette=[])
    with pytest.raises(TypeError):
        RenderOptions(show_labels="yes")


def test_render_off_spine_edge():
    """Edges with labels outside 1..n can not be drawn."""
    emb = embedding_from_json(
        '{"n": 4, "order": [1, 2, 3, 4],'
        ' "pages": [{"color": 0, "jump": null, "edges": [[3, 7]]}]}'
    )
    with pytest.raises(EmbeddingError, match=r"Edge\(u=3, v=7\) on page 0"):
        render_svg(emb)
