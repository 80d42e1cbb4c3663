"""The embedding JSON document shared by the library and the CLI.

Layout, in this field order::

    {"n": int, "order": [labels clockwise],
     "pages": [{"color": int, "jump": int | null, "edges": [[u, v], ...]}]}

Edges are in normal form and sorted, pages are sorted by colour, so the text is
byte-stable for equal embeddings.
"""

from __future__ import annotations

import json
import logging
import typing

from znbook.circulant import CirculantError
from znbook.embedding import BookEmbedding, Page
from znbook.orders import CyclicOrder, OrderError

log = logging.getLogger(__name__)


class DocumentError(ValueError):
    """The document does not follow the embedding schema."""

    def __init__(self, message: str, path: str = "$", line: int = None):
        """Store where in the document the problem was found."""
        location = path if line is None else f"line {line}, {path}"
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line = line


def embedding_to_dict(emb: BookEmbedding) -> dict:
    """Convert an embedding to the document dict with fixed key order."""
    return {
        "n": emb.n,
        "order": list(emb.order.seq),
        "pages": [
            {
                "color": page.color,
                "jump": page.jump,
                "edges": [list(edge) for edge in page.edges],
            }
            for page in sorted(emb.pages, key=lambda page: page.color)
        ],
    }


def embedding_to_json(emb: BookEmbedding) -> str:
    """Serialize an embedding, compact edge pairs, one page entry per line."""
    document = embedding_to_dict(emb)
    lines = [
        "{",
        f'  "n": {document["n"]},',
        f'  "order": {json.dumps(document["order"])},',
        '  "pages": [',
    ]
    pages = [
        f"    {json.dumps(page, separators=(', ', ': '))}" for page in document["pages"]
    ]
    lines.append(",\n".join(pages))
    lines.extend(["  ]", "}"])
    return "\n".join(line for line in lines if line) + "\n"


def _require_int(value, path: str, minimum: int = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {json.dumps(value)}", path)
    if minimum is not None and value < minimum:
        raise DocumentError(f"expected an integer >= {minimum}, got {value}", path)
    return value


def _require_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"expected an array, got {type(value).__name__}", path)
    return value


def _line_of(text: str, needle: str) -> typing.Optional[int]:
    index = text.find(needle)
    return None if index < 0 else text.count("\n", 0, index) + 1


def embedding_from_dict(document) -> BookEmbedding:
    """Validate a parsed document and build the embedding.

    Raises
    ------
    DocumentError: naming the field path of the first schema violation.
    """
    if not isinstance(document, dict):
        raise DocumentError("expected an object")
    for key in ("n", "order", "pages"):
        if key not in document:
            raise DocumentError(f"missing field '{key}'")
    unknown = sorted(set(document) - {"n", "order", "pages"})
    if unknown:
        raise DocumentError(f"unknown fields {unknown}")

    n = _require_int(document["n"], "$.n", minimum=1)
    order_seq = _require_list(document["order"], "$.order")
    for index, label in enumerate(order_seq):
        _require_int(label, f"$.order[{index}]")
    if len(order_seq) != n:
        raise DocumentError(f"order has {len(order_seq)} labels but n={n}", "$.order")
    try:
        order = CyclicOrder(seq=order_seq)
    except OrderError as err:
        raise DocumentError(str(err), "$.order") from err

    pages = []
    for index, entry in enumerate(_require_list(document["pages"], "$.pages")):
        path = f"$.pages[{index}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object", path)
        if set(entry) != {"color", "jump", "edges"}:
            raise DocumentError(
                "expected exactly the fields 'color', 'jump', 'edges'", path
            )
        color = _require_int(entry["color"], f"{path}.color", minimum=0)
        jump = entry["jump"]
        if jump is not None:
            _require_int(jump, f"{path}.jump", minimum=1)
        edges = []
        for e_index, edge in enumerate(_require_list(entry["edges"], f"{path}.edges")):
            edge_path = f"{path}.edges[{e_index}]"
            if not isinstance(edge, list) or len(edge) != 2:
                raise DocumentError("expected a pair [u, v]", edge_path)
            edges.append(tuple(_require_int(label, edge_path) for label in edge))
        try:
            pages.append(Page(color=color, edges=edges, jump=jump))
        except CirculantError as err:
            raise DocumentError(str(err), f"{path}.edges") from err
    colors = [page.color for page in pages]
    if len(set(colors)) != len(colors):
        raise DocumentError(f"page colours are not unique: {colors}", "$.pages")
    return BookEmbedding(order=order, pages=pages)


def embedding_from_json(text: str) -> BookEmbedding:
    """Parse and validate an embedding document.

    Raises
    ------
    DocumentError: for malformed JSON (with its line) or schema violations.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(err.msg, line=err.lineno) from err
    try:
        return embedding_from_dict(document)
    except DocumentError as err:
        if err.line is not None or err.path == "$":
            raise
        field = err.path.split(".")[1].split("[")[0]
        message = str(err).split(": ", 1)[1]
        raise DocumentError(message, err.path, _line_of(text, f'"{field}"')) from err
