"""Unit tests for the embedding JSON document."""

import json

import pytest

from znbook.circulant import make_circulant
from znbook.document import (
    DocumentError,
    embedding_from_dict,
    embedding_from_json,
    embedding_to_dict,
    embedding_to_json,
)
from znbook.embedding import (
    BookEmbedding,
    Page,
    dispersable_bipartite_circulant,
    parallel_embedding,
    ysl_embedding,
)
from znbook.orders import natural_order

SQUARE = """{
  "n": 4,
  "order": [1, 4, 3, 2],
  "pages": [
    {"color": 0, "jump": 1, "edges": [[1, 2], [3, 4]]},
    {"color": 1, "jump": 1, "edges": [[1, 4], [2, 3]]}
  ]
}
"""


@pytest.fixture
def square_document() -> dict:
    """The YSL embedding of C(4, {1}) as dict."""
    return json.loads(SQUARE)


def test_embedding_to_json():
    """Fixed layout, one page per line."""
    assert embedding_to_json(ysl_embedding(make_circulant(4, [1]))) == SQUARE


def test_embedding_to_dict_key_order():
    """Keys in schema order."""
    document = embedding_to_dict(ysl_embedding(make_circulant(6, [1, 3])))
    assert list(document) == ["n", "order", "pages"]
    assert list(document["pages"][0]) == ["color", "jump", "edges"]


def test_embedding_to_json_sorts_pages():
    """Pages are written by colour."""
    emb = BookEmbedding(
        order=natural_order(4),
        pages=[Page(color=1, edges=[(2, 3)]), Page(color=0, edges=[(1, 2)])],
    )
    document = json.loads(embedding_to_json(emb))
    assert [page["color"] for page in document["pages"]] == [0, 1]
    assert document["pages"][0]["jump"] is None


def test_empty_pages():
    """An embedding without pages is a valid document."""
    emb = BookEmbedding(order=natural_order(3), pages=[])
    text = embedding_to_json(emb)
    assert json.loads(text) == {"n": 3, "order": [1, 2, 3], "pages": []}
    assert embedding_from_json(text) == emb


@pytest.mark.parametrize(
    "emb",
    [
        ysl_embedding(make_circulant(16, [1, 3, 5, 7])),
        dispersable_bipartite_circulant(make_circulant(12, [2, 6])),
        parallel_embedding(make_circulant(8, [1, 3]), natural_order(8)),
    ],
)
def test_json_round_trip(emb):
    """Parsing the written text gives the embedding back, byte-stable."""
    text = embedding_to_json(emb)
    assert embedding_from_json(text) == emb
    assert embedding_to_json(embedding_from_json(text)) == text


def test_malformed_json():
    """The JSON error line is reported."""
    with pytest.raises(DocumentError) as err:
        embedding_from_json('{\n  "n": 4,\n  "order": [1, 2\n}')
    assert err.value.line == 4
    assert str(err.value).startswith("line 4, $:")


@pytest.mark.parametrize(
    ("change", "path"),
    [
        (lambda doc: doc.pop("pages"), "$"),
        (lambda doc: doc.update(extra=1), "$"),
        (lambda doc: doc.update(n="4"), "$.n"),
        (lambda doc: doc.update(n=True), "$.n"),
        (lambda doc: doc.update(order=[1, 4, 3]), "$.order"),
        (lambda doc: doc.update(order=[1, 4, 3, 3]), "$.order"),
        (lambda doc: doc.update(order=[1, 4, "3", 2]), "$.order[2]"),
        (lambda doc: doc.update(pages={}), "$.pages"),
        (lambda doc: doc["pages"][1].pop("jump"), "$.pages[1]"),
        (lambda doc: doc["pages"][1].update(color=-1), "$.pages[1].color"),
        (lambda doc: doc["pages"][1].update(color=0), "$.pages"),
        (lambda doc: doc["pages"][0].update(jump=0), "$.pages[0].jump"),
        (lambda doc: doc["pages"][0]["edges"].append([1]), "$.pages[0].edges[2]"),
        (lambda doc: doc["pages"][0]["edges"].append([1, 1]), "$.pages[0].edges"),
        (lambda doc: doc["pages"][0]["edges"].append([1, 2.5]), "$.pages[0].edges[2]"),
    ],
)
def test_schema_errors(square_document, change, path):
    """Every schema violation names its field path."""
    change(square_document)
    with pytest.raises(DocumentError) as err:
        embedding_from_dict(square_document)
    assert err.value.path == path


def test_schema_error_line():
    """Field errors found after parsing point at the line of the field."""
    text = SQUARE.replace('"order": [1, 4, 3, 2]', '"order": [1, 4, 3]')
    with pytest.raises(DocumentError) as err:
        embedding_from_json(text)
    assert err.value.path == "$.order"
    assert err.value.line == 3
    assert "order has 3 labels but n=4" in str(err.value)


def test_not_an_object():
    """The document must be a JSON object."""
    with pytest.raises(DocumentError, match="expected an object"):
        embedding_from_json("[1, 2, 3]")
