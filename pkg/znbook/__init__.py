"""znbook: dispersable book embeddings of bipartite circulant graphs."""

import importlib.metadata

from znbook.circulant import (
    Circulant,
    Edge,
    circulant_edges,
    decompose,
    heuberger_bipartite,
    make_circulant,
    max_degree,
)
from znbook.embedding import (
    BookEmbedding,
    Page,
    dispersable_bipartite_circulant,
    verify_embedding,
    ysl_embedding,
)
from znbook.orders import CyclicOrder, ysl_order

__all__ = (
    "BookEmbedding",
    "Circulant",
    "CyclicOrder",
    "Edge",
    "Page",
    "circulant_edges",
    "decompose",
    "dispersable_bipartite_circulant",
    "heuberger_bipartite",
    "make_circulant",
    "max_degree",
    "verify_embedding",
    "ysl_embedding",
    "ysl_order",
)

__version__ = importlib.metadata.version("znbook")
