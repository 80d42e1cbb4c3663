"""Exact small-instance solvers for dispersable page assignments.

A proper k-colouring of the conflict graph (edges conflict if they share an
endpoint or cross) is exactly a k-page crossing-free matching partition.
"""

from __future__ import annotations

import itertools
import logging
import typing

import networkx as nx

from znbook.circulant import Edge
from znbook.descriptor import Field
from znbook.embedding import (
    BookEmbedding,
    Page,
    chords_cross,
    normalize_edges,
    verify_embedding,
)
from znbook.orders import CyclicOrder, canonical_rotation_reflections
from znbook.record import Record

log = logging.getLogger(__name__)


class BudgetExceededError(RuntimeError):
    """The search budget ran out before the answer was known."""

    def __init__(self, message: str, explored: int):
        """Store how much of the search was explored."""
        super().__init__(f"{message} (explored {explored})")
        self.explored = explored


class SolverBudget(Record):
    """Caps on the exact searches."""

    max_nodes: int = Field(2_000_000, check_types=True)
    max_orders: int = Field(500_000, check_types=True)

    def _post_init_(self):
        if self.max_nodes < 1 or self.max_orders < 1:
            raise ValueError(f"Budget values must be positive, got {self}")


class ConflictGraph(Record):
    """Conflicts between host edges under a fixed cyclic order."""

    nodes: typing.Tuple[Edge, ...] = Field(on_setattr=tuple)
    adjacency: typing.Tuple[typing.FrozenSet[int], ...] = Field(
        on_setattr=lambda sets: tuple(frozenset(neighbours) for neighbours in sets),
        use_repr=False,
    )

    def _post_init_(self):
        if len(self.adjacency) != len(self.nodes):
            raise ValueError("Need one adjacency set per node")
        for node, neighbours in enumerate(self.adjacency):
            if node in neighbours:
                raise ValueError(f"Conflict graph has a loop at node {node}")
            if any(node not in self.adjacency[other] for other in neighbours):
                raise ValueError(f"Conflict graph is not symmetric at node {node}")

    def __len__(self):
        """Get the number of host edges."""
        return len(self.nodes)

    def conflicts(self) -> typing.List[typing.Tuple[int, int]]:
        """Get the conflicting node pairs (i < j)."""
        return [
            (node, other)
            for node, neighbours in enumerate(self.adjacency)
            for other in sorted(neighbours)
            if node < other
        ]


class SolverVerdict(Record):
    """Minimum page count for an order compared against Δ."""

    min_pages: int = Field()
    delta: int = Field()
    witness: typing.Optional[BookEmbedding] = Field(None, use_repr=False)

    @property
    def dispersable(self) -> bool:
        """Whether Δ pages suffice."""
        return self.min_pages == self.delta


def conflict_graph(order: CyclicOrder, edges: typing.Iterable[Edge]) -> ConflictGraph:
    """Connect edges that share an endpoint or cross under the order."""
    nodes = normalize_edges(edges)
    adjacency = [set() for _ in nodes]
    for (i, e), (j, f) in itertools.combinations(enumerate(nodes), 2):
        if set(e) & set(f) or chords_cross(order, e, f):
            adjacency[i].add(j)
            adjacency[j].add(i)
    return ConflictGraph(nodes=nodes, adjacency=adjacency)


def greedy_clique(graph: ConflictGraph) -> typing.List[int]:
    """Grow a clique from every node by descending degree, keep the largest."""
    by_degree = sorted(
        range(len(graph)), key=lambda node: (-len(graph.adjacency[node]), node)
    )
    best = []
    for start in by_degree:
        clique = [start]
        candidates = set(graph.adjacency[start])
        for node in by_degree:
            if node in candidates:
                clique.append(node)
                candidates &= graph.adjacency[node]
        if len(clique) > len(best):
            best = clique
    return best


class _Search:
    """DSATUR ordered backtracking for a k-colouring, sharing one node budget."""

    def __init__(self, graph: ConflictGraph, budget: SolverBudget):
        self.graph = graph
        self.budget = budget
        self.explored = 0

    def select(self, colors: typing.List[int]) -> int:
        best, best_key = -1, None
        for node, color in enumerate(colors):
            if color >= 0:
                continue
            neighbours = self.graph.adjacency[node]
            saturation = len({colors[other] for other in neighbours} - {-1})
            uncolored = sum(1 for other in neighbours if colors[other] < 0)
            key = (saturation, uncolored)
            if best_key is None or key > best_key:
                best, best_key = node, key
        return best

    def color(self, k: int, seed: typing.Sequence[int] = ()) -> typing.Optional[list]:
        """Find a k-colouring, the clique 'seed' is precoloured 0, 1, ...."""
        colors = [-1] * len(self.graph)
        for color, node in enumerate(seed):
            colors[node] = color
        if self._extend(colors, k, len(seed), len(self.graph) - len(seed)):
            return colors
        return None

    def _extend(self, colors, k, used, remaining) -> bool:
        if remaining == 0:
            return True
        self.explored += 1
        if self.explored > self.budget.max_nodes:
            raise BudgetExceededError(
                "Colouring search exceeded max_nodes", self.explored
            )
        node = self.select(colors)
        forbidden = {colors[other] for other in self.graph.adjacency[node]}
        for color in range(min(used + 1, k)):
            if color in forbidden:
                continue
            colors[node] = color
            if self._extend(colors, k, max(used, color + 1), remaining - 1):
                return True
        colors[node] = -1
        return False


def dsatur_greedy(graph: ConflictGraph) -> typing.List[int]:
    """Colour greedily in DSATUR order, the colours indexed by node."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(len(graph)))
    nx_graph.add_edges_from(graph.conflicts())
    coloring = nx.greedy_color(nx_graph, strategy="saturation_largest_first")
    return [coloring[node] for node in range(len(graph))]


def exact_coloring(
    graph: ConflictGraph, budget: SolverBudget = None
) -> typing.Tuple[int, typing.List[int]]:
    """Get the chromatic number and an optimal colouring.

    The greedy clique is a lower bound and is precoloured, DSATUR greedy gives the
    upper bound; every k in between is decided by backtracking.

    Raises
    ------
    BudgetExceededError: if the search needs more than budget.max_nodes nodes.
    """
    budget = budget or SolverBudget()
    if len(graph) == 0:
        return 0, []
    clique = greedy_clique(graph)
    best = dsatur_greedy(graph)
    upper = max(best) + 1
    log.debug(
        f"Colouring {len(graph)} nodes: clique bound {len(clique)}, greedy {upper}"
    )
    search = _Search(graph, budget)
    for k in range(len(clique), upper):
        colors = search.color(k, seed=clique)
        if colors is not None:
            best = colors
            break
    log.debug(f"Chromatic number {max(best) + 1} after {search.explored} nodes")
    return max(best) + 1, best


def min_pages_for_order(
    edges: typing.Iterable[Edge],
    order: CyclicOrder,
    delta: int,
    budget: SolverBudget = None,
) -> int:
    """Get the minimum number of crossing-free matchings for a fixed order.

    Raises
    ------
    BudgetExceededError: the result is indeterminate, never a wrong number.
    """
    pages, _ = exact_coloring(conflict_graph(order, edges), budget)
    log.debug(f"Minimum page count {pages} for delta={delta}")
    return pages


def _witness(
    graph: ConflictGraph, colors: typing.Sequence[int], order: CyclicOrder
) -> BookEmbedding:
    pages = []
    for color in range(max(colors, default=-1) + 1):
        members = [graph.nodes[node] for node, c in enumerate(colors) if c == color]
        pages.append(Page(color=color, edges=members))
    return BookEmbedding(order=order, pages=pages)


def is_dispersable_with_order(
    edges: typing.Iterable[Edge],
    order: CyclicOrder,
    delta: int,
    budget: SolverBudget = None,
) -> SolverVerdict:
    """Decide whether Δ pages suffice for the order, with a verified witness.

    Raises
    ------
    BudgetExceededError: propagated from the colouring search.
    """
    edges = list(edges)
    graph = conflict_graph(order, edges)
    pages, colors = exact_coloring(graph, budget)
    witness = None
    if pages == delta:
        witness = _witness(graph, colors, order)
        report = verify_embedding(edges, delta, witness)
        if not report.is_dispersable_layout:
            raise RuntimeError(f"Solver witness failed verification: {report}")
    return SolverVerdict(min_pages=pages, delta=delta, witness=witness)


def canonical_orders(n: int) -> typing.Iterator[CyclicOrder]:
    """Iterate over one order per dihedral class, in lexicographic order.

    Label 1 is fixed at position 0 and the sequences equal to their canonical
    form are kept: (n - 1)! / 2 orders for n >= 3.
    """
    for rest in itertools.permutations(range(2, n + 1)):
        if n >= 3 and rest[0] > rest[-1]:
            continue
        order = CyclicOrder(seq=(1,) + rest)
        if canonical_rotation_reflections(order) == order.seq:
            yield order


def iter_dispersable_orders(
    edges: typing.Iterable[Edge], n: int, delta: int, budget: SolverBudget = None
) -> typing.Iterator[typing.Tuple[CyclicOrder, BookEmbedding]]:
    """Iterate over the canonical orders admitting a Δ-page dispersable embedding.

    Raises
    ------
    BudgetExceededError: after budget.max_orders orders.
    """
    budget = budget or SolverBudget()
    edges = list(edges)
    for count, order in enumerate(canonical_orders(n), start=1):
        if count > budget.max_orders:
            raise BudgetExceededError("Order search exceeded max_orders", count - 1)
        verdict = is_dispersable_with_order(edges, order, delta, budget)
        if verdict.dispersable:
            log.debug(f"Order {order.seq} is dispersable ({count} orders tried)")
            yield order, verdict.witness


def search_dispersable_order(
    edges: typing.Iterable[Edge], n: int, delta: int, budget: SolverBudget = None
) -> typing.Optional[typing.Tuple[CyclicOrder, BookEmbedding]]:
    """Get the canonically least dispersable order with its witness, or None."""
    return next(iter_dispersable_orders(edges, n, delta, budget), None)


def brute_force_chromatic_number(graph: ConflictGraph) -> int:
    """Get the chromatic number by plain backtracking in node index order.

    No heuristics and no bounds, an independent check of 'exact_coloring' for
    small graphs.
    """

    def colorable(k: int) -> bool:
        colors = [-1] * len(graph)

        def assign(node: int) -> bool:
            if node == len(graph):
                return True
            for color in range(k):
                if all(colors[other] != color for other in graph.adjacency[node]):
                    colors[node] = color
                    if assign(node + 1):
                        return True
            colors[node] = -1
            return False

        return assign(0)

    return next(k for k in itertools.count() if colorable(k))
