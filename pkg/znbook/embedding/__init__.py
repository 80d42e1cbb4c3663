"""Book embeddings: YSL pages, chord crossings and dispersability checks."""

from __future__ import annotations

import collections
import itertools
import logging
import typing

from znbook.circulant import (
    Circulant,
    CirculantError,
    Edge,
    circulant_edges,
    cn_distance,
    component_labels,
    decompose,
    degrees,
    heuberger_bipartite,
    jump_of_edge,
    max_degree,
    wrap,
)
from znbook.descriptor import Field
from znbook.orders import CyclicOrder, natural_order, ysl_order
from znbook.record import Record

log = logging.getLogger(__name__)

SHARED_ENDPOINT = "shared-endpoint"
CROSSING = "crossing"
PAGE_COUNT = "page-count"
MISSING_EDGE = "missing-edge"
FOREIGN_EDGE = "foreign-edge"
DUPLICATE_EDGE = "duplicate-edge"
UNKNOWN_VERTEX = "unknown-vertex"


class EmbeddingError(ValueError):
    """An embedding can not be built or processed."""


def normalize_edges(edges) -> typing.Tuple[Edge, ...]:
    """Get the sorted normal forms of (u, v) pairs."""
    return tuple(sorted(Edge.of(*edge) for edge in edges))


class Page(Record):
    """One colour class of edges."""

    color: int = Field()
    edges: typing.Tuple[Edge, ...] = Field(on_setattr=normalize_edges)
    jump: typing.Optional[int] = Field(None)

    def __len__(self):
        """Get the number of edges on the page."""
        return len(self.edges)


class BookEmbedding(Record):
    """A cyclic order plus pages.

    The pages are not validated on construction, 'verify_embedding' reports every
    problem of an embedding read from a document.
    """

    order: CyclicOrder = Field()
    pages: typing.Tuple[Page, ...] = Field(on_setattr=tuple)

    @property
    def n(self) -> int:
        """Number of vertices on the spine."""
        return self.order.n

    @property
    def edges(self) -> typing.List[Edge]:
        """All page edges, page by page."""
        return [edge for page in self.pages for edge in page.edges]


class Violation(typing.NamedTuple):
    """A single problem found by 'verify_embedding'."""

    kind: str
    page: typing.Optional[int]
    edges: typing.Tuple[Edge, ...]


class VerificationReport(Record):
    """Result of 'verify_embedding'."""

    is_dispersable_layout: bool = Field()
    page_count: int = Field()
    delta: int = Field()
    violations: typing.Tuple[Violation, ...] = Field(on_setattr=tuple)

    def _post_init_(self):
        expected = not self.violations and self.page_count == self.delta
        if self.is_dispersable_layout != expected:
            raise ValueError(
                f"is_dispersable_layout={self.is_dispersable_layout} contradicts"
                f" {len(self.violations)} violations and {self.page_count} pages"
                f" for delta={self.delta}"
            )


def _positions(order: CyclicOrder, edge: Edge) -> typing.Tuple[int, int]:
    a, b = order.position_of(edge[0]), order.position_of(edge[1])
    return (a, b) if a < b else (b, a)


def chords_cross(order: CyclicOrder, e: Edge, f: Edge) -> bool:
    """Check whether two chords strictly interleave around the spine.

    Raises
    ------
    EmbeddingError: if the edges share an endpoint, that is a matching conflict.
    """
    if set(e) & set(f):
        raise EmbeddingError(f"Edges {tuple(e)} and {tuple(f)} share an endpoint")
    a, b = _positions(order, e)
    c, d = _positions(order, f)
    return a < c < b < d or c < a < d < b


def crossing_free(order: CyclicOrder, matching: typing.Sequence[Edge]) -> bool:
    """Check a matching for crossings by bracket matching along the spine."""
    owner = {}
    for index, edge in enumerate(matching):
        for position in _positions(order, edge):
            owner[position] = index
    stack, opened = [], set()
    for position in sorted(owner):
        index = owner[position]
        if stack and stack[-1] == index:
            stack.pop()
        elif index in opened:
            return False
        else:
            stack.append(index)
            opened.add(index)
    return True


def _check_ysl_input(c: Circulant):
    if c.n % 2:
        raise EmbeddingError(f"The YSL embedding needs an even n, got {c}")
    even = [jump for jump in c.jumps if jump % 2 == 0]
    if even:
        raise EmbeddingError(
            f"The YSL embedding needs odd jumps only, {c} has the even jumps {even};"
            " use 'dispersable_bipartite_circulant'"
        )


def ysl_embedding(c: Circulant) -> BookEmbedding:
    """Build the YSL pages of a circulant with even n and odd jumps.

    Every jump s < n/2 splits into page A, the edges {o, o + s} of the odd
    labels o, and page B, the edges {o, o - s}. The half jump forms one page.

    Raises
    ------
    EmbeddingError: for odd n or an even jump (not in the decomposed normal form).
    """
    _check_ysl_input(c)
    pages = []
    for jump in c.jumps:
        directions = (1,) if 2 * jump == c.n else (1, -1)
        for direction in directions:
            edges = [
                (odd, wrap(c.n, odd + direction * jump)) for odd in range(1, c.n, 2)
            ]
            pages.append(Page(color=len(pages), edges=edges, jump=jump))
    log.debug(f"YSL embedding of {c} with {len(pages)} pages")
    return BookEmbedding(order=ysl_order(c.n), pages=pages)


def _shared_endpoint_pairs(page: Page) -> typing.List[typing.Tuple[Edge, Edge]]:
    incident = collections.defaultdict(list)
    for edge in page.edges:
        incident[edge.u].append(edge)
        incident[edge.v].append(edge)
    pairs = set()
    for edges in incident.values():
        pairs.update(itertools.combinations(sorted(edges), 2))
    return sorted(pairs)


def _crossing_pairs(order: CyclicOrder, edges: typing.Sequence[Edge]):
    pairs = []
    for e, f in itertools.combinations(edges, 2):
        if set(e) & set(f):
            continue
        if chords_cross(order, e, f):
            pairs.append((e, f))
    return pairs


def verify_embedding(
    edges: typing.Iterable[Edge], delta: int, emb: BookEmbedding
) -> VerificationReport:
    """Check that the pages are Δ crossing-free matchings partitioning the edges.

    Never raises on a broken embedding, every problem becomes a Violation.
    """
    graph_edges = set(normalize_edges(edges))
    violations = []
    seen = collections.Counter(emb.edges)

    for edge in sorted(graph_edges - set(seen)):
        violations.append(Violation(MISSING_EDGE, None, (edge,)))
    for page in emb.pages:
        for edge in page.edges:
            if edge not in graph_edges:
                violations.append(Violation(FOREIGN_EDGE, page.color, (edge,)))
            if seen[edge] > 1:
                violations.append(Violation(DUPLICATE_EDGE, page.color, (edge,)))
            if not (1 <= edge.u and edge.v <= emb.n):
                violations.append(Violation(UNKNOWN_VERTEX, page.color, (edge,)))

    for page in emb.pages:
        on_spine = [edge for edge in page.edges if 1 <= edge.u and edge.v <= emb.n]
        shared = _shared_endpoint_pairs(page)
        for pair in shared:
            violations.append(Violation(SHARED_ENDPOINT, page.color, pair))
        if shared or not crossing_free(emb.order, on_spine):
            for pair in _crossing_pairs(emb.order, on_spine):
                violations.append(Violation(CROSSING, page.color, pair))

    if len(emb.pages) != delta:
        violations.append(Violation(PAGE_COUNT, None, ()))

    report = VerificationReport(
        is_dispersable_layout=not violations,
        page_count=len(emb.pages),
        delta=delta,
        violations=violations,
    )
    log.debug(
        f"Verified {len(emb.pages)} pages against delta={delta}:"
        f" {len(violations)} violations"
    )
    return report


def verify_circulant_embedding(c: Circulant, emb: BookEmbedding) -> VerificationReport:
    """Verify an embedding against the edges and Δ of a circulant."""
    return verify_embedding(circulant_edges(c), max_degree(c), emb)


def relabel_embedding(
    emb: BookEmbedding, relabel: typing.Callable[[int], int]
) -> BookEmbedding:
    """Rename every label of an embedding, the new labels must be 1..n again."""
    return BookEmbedding(
        order=CyclicOrder(seq=[relabel(label) for label in emb.order]),
        pages=[
            Page(
                color=page.color,
                edges=[(relabel(u), relabel(v)) for u, v in page.edges],
                jump=page.jump,
            )
            for page in emb.pages
        ],
    )


def union_embedding(
    copies: typing.Sequence[BookEmbedding],
    relabel: typing.Callable[[int, int], int] = None,
) -> BookEmbedding:
    """Embed a disjoint union by concatenating the component orders.

    Page i of the result is the union of page i of every copy. Copy t is placed on
    the labels relabel(t, label), by default on the disjoint range following the
    previous copies.

    Raises
    ------
    EmbeddingError: if the copies do not have the same number of pages.
    """
    if not copies:
        raise EmbeddingError("Need at least one embedding to unite")
    page_counts = {len(copy.pages) for copy in copies}
    if len(page_counts) > 1:
        raise EmbeddingError(f"Copies have different page counts {sorted(page_counts)}")

    offsets = list(itertools.accumulate([0] + [copy.n for copy in copies]))
    relabel = relabel or (lambda t, label: offsets[t] + label)

    seq = []
    merged = [list() for _ in copies[0].pages]
    for t, copy in enumerate(copies):
        seq.extend(relabel(t, label) for label in copy.order)
        for index, page in enumerate(copy.pages):
            merged[index].extend((relabel(t, u), relabel(t, v)) for u, v in page.edges)

    pages = []
    for index, page in enumerate(copies[0].pages):
        tags = {copy.pages[index].jump for copy in copies}
        jump = page.jump if len(tags) == 1 else None
        pages.append(Page(color=page.color, edges=merged[index], jump=jump))
    return BookEmbedding(order=CyclicOrder(seq=seq), pages=pages)


def dispersable_bipartite_circulant(c: Circulant) -> BookEmbedding:
    """Build a Δ-page dispersable embedding of any bipartite circulant.

    Decompose into r = gcd(n, S) copies of C(n/r, S/r), whose jumps are odd, embed
    one copy with the YSL order and place copy t on the labels congruent to t + 1
    mod r.

    Raises
    ------
    EmbeddingError: if c is not bipartite.
    """
    certificate = heuberger_bipartite(c)
    if certificate is None:
        raise EmbeddingError(f"{c} is not bipartite")
    decomposition = decompose(c)
    reduced, r = decomposition.reduced, decomposition.r
    log.debug(f"{c}: ell={certificate.ell}, {r} copies of {reduced}")

    if reduced.n == 2:
        base = BookEmbedding(
            order=natural_order(2), pages=[Page(color=0, edges=[(1, 2)], jump=1)]
        )
    else:
        base = ysl_embedding(reduced)

    labels = [component_labels(decomposition, t) for t in range(r)]
    union = union_embedding([base] * r, relabel=lambda t, label: labels[t][label - 1])
    embedding = BookEmbedding(
        order=union.order,
        pages=[
            Page(color=page.color, edges=page.edges, jump=page.jump * r)
            for page in union.pages
        ],
    )
    report = verify_circulant_embedding(c, embedding)
    if not report.is_dispersable_layout:
        raise RuntimeError(f"Embedding of {c} failed verification: {report}")
    return embedding


def position_sum(order: CyclicOrder, edge: Edge) -> int:
    """Get (position(u) + position(v)) mod n, equal for parallel chords."""
    return sum(_positions(order, edge)) % order.n


def parallel_embedding(c: Circulant, order: CyclicOrder) -> BookEmbedding:
    """Group the edges of c into classes of parallel chords.

    Chords with the same position sum mod n are parallel, hence pairwise disjoint
    and crossing free. Under the natural order this is Overbay's layout, under the
    YSL order it is the YSL embedding up to the page colours.
    """
    classes = collections.defaultdict(list)
    for edge in circulant_edges(c):
        classes[position_sum(order, edge)].append(edge)
    pages = []
    for color, residue in enumerate(sorted(classes)):
        jumps = {jump_of_edge(c, edge) for edge in classes[residue]}
        jump = jumps.pop() if len(jumps) == 1 else None
        pages.append(Page(color=color, edges=classes[residue], jump=jump))
    return BookEmbedding(order=order, pages=pages)


def parallel_families(order: CyclicOrder, page: Page) -> typing.List[Edge]:
    """Sort the chords of a page along a line orthogonal to them.

    The axis is fixed by the most frequent position sum c (ties: smallest). A chord
    with endpoint positions p, q is keyed by max((2p - c) mod 2n, (2q - c) mod 2n),
    which enumerates a parallel family from the pole opposite to position c/2
    inwards.

    Raises
    ------
    EmbeddingError: if two chords of the page cross.
    """
    edges = list(page.edges)
    if _shared_endpoint_pairs(page) or not crossing_free(order, edges):
        crossing = _crossing_pairs(order, edges)
        raise EmbeddingError(
            f"Page {page.color} is not a crossing-free matching: {crossing[:1]}"
        )
    if not edges:
        return []
    n = order.n
    sums = collections.Counter(position_sum(order, edge) for edge in edges)
    axis = min(sums, key=lambda residue: (-sums[residue], residue))

    def offset(edge):
        positions = _positions(order, edge)
        return max((2 * p - axis) % (2 * n) for p in positions), positions

    return sorted(edges, key=offset)


def page_jump_profile(
    c: Circulant, order: CyclicOrder, family: typing.Sequence[Edge]
) -> typing.List[int]:
    """Map a parallel family to the jump-lengths of its edges.

    Raises
    ------
    CirculantError: if an edge of the family is not an edge of c.
    """
    if order.n != c.n:
        raise CirculantError(f"Order on {order.n} labels does not fit {c}")
    return [jump_of_edge(c, edge) for edge in family]


def family_distance_checks(order: CyclicOrder, family: typing.Sequence[Edge]) -> bool:
    """Check that edges 1 and 2, and edges j and j + 2, have equal C_n-distances."""
    distances = [cn_distance(order.n, u, v) for u, v in family]
    first = distances[:1] == distances[1:2] or len(distances) < 2
    return first and all(a == b for a, b in zip(distances, distances[2:]))


def observed_max_degree(n: int, edges: typing.Iterable[Edge]) -> int:
    """Get the maximum degree of an edge list on the labels 1..n.

    Edges with a label outside 1..n are ignored, verification reports them.
    """
    on_spine = [edge for edge in edges if 1 <= edge.u and edge.v <= n]
    return max(degrees(n, on_spine).values(), default=0)
