"""Circulant graphs C(n, S): edges, degrees, bipartiteness and decomposition.

Vertex labels are 1-based (1..n); arithmetic on labels is taken mod n back into
the range 1..n.
"""

from __future__ import annotations

import logging
import math
import typing

import networkx as nx

from znbook.descriptor import Field
from znbook.record import Record

log = logging.getLogger(__name__)


class CirculantError(ValueError):
    """Invalid circulant parameters, labels or edges."""


class Edge(typing.NamedTuple):
    """Undirected edge in normal form (smaller label first)."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        """Build the normal form of the unordered pair {a, b}."""
        if a == b:
            raise CirculantError(f"Loop at vertex {a} is not an edge")
        return cls(a, b) if a < b else cls(b, a)


def wrap(n: int, label: int) -> int:
    """Reduce an integer mod n into the label range 1..n."""
    return (label - 1) % n + 1


def mu(k: int) -> int:
    """Get the largest odd number not exceeding k."""
    if k < 1:
        raise ValueError(f"mu(k) needs k >= 1, got {k}")
    return k if k % 2 else k - 1


class Circulant(Record):
    """The circulant graph C(n, S) on labels 1..n.

    Use 'make_circulant' for user input, it reports duplicates and normalizes
    the jump order. n = 2 is only produced by 'decompose' (a single edge).
    """

    n: int = Field(check_types=True)
    jumps: typing.Tuple[int, ...] = Field(check_types=True, on_setattr=tuple)

    def _post_init_(self):
        if self.n < 2:
            raise CirculantError(f"Vertex count must be at least 2, got n={self.n}")
        if not self.jumps:
            raise CirculantError("The jump set must not be empty")
        for jump in self.jumps:
            if not 1 <= jump <= self.n // 2:
                raise CirculantError(
                    f"Jump {jump} is outside [1, {self.n // 2}] for n={self.n}"
                )
        if any(a >= b for a, b in zip(self.jumps, self.jumps[1:])):
            raise CirculantError(f"Jumps must be strictly increasing: {self.jumps}")

    def __str__(self):
        """Get the usual notation, e.g. C(8,{1,3})."""
        return f"C({self.n},{{{','.join(map(str, self.jumps))}}})"

    @property
    def vertices(self) -> range:
        """Vertex labels 1..n."""
        return range(1, self.n + 1)

    @property
    def has_half_jump(self) -> bool:
        """Whether n/2 is a jump, whose edges form a perfect matching."""
        return 2 * self.jumps[-1] == self.n


def make_circulant(n: int, jumps: typing.Iterable[int]) -> Circulant:
    """Validate the parameters and build C(n, S).

    Raises
    ------
    CirculantError:
        for n < 3, an empty jump list, a duplicate jump or a jump outside
        [1, floor(n/2)].
    """
    jumps = list(jumps)
    if n < 3:
        raise CirculantError(f"Vertex count must be at least 3, got n={n}")
    if not jumps:
        raise CirculantError("The jump set must not be empty")
    seen = set()
    for jump in jumps:
        if jump in seen:
            raise CirculantError(f"Duplicate jump {jump} in {jumps}")
        seen.add(jump)
    for jump in jumps:
        if not 1 <= jump <= n // 2:
            raise CirculantError(f"Jump {jump} is outside [1, {n // 2}] for n={n}")
    return Circulant(n=n, jumps=sorted(jumps))


def circulant_edges(c: Circulant) -> typing.List[Edge]:
    """Get every edge of C(n, S) exactly once, grouped by jump.

    A jump s < n/2 contributes n edges, the half jump s = n/2 contributes n/2.
    """
    edges = []
    for jump in c.jumps:
        stop = c.n // 2 if 2 * jump == c.n else c.n
        edges.extend(Edge.of(i, wrap(c.n, i + jump)) for i in range(1, stop + 1))
    return edges


def max_degree(c: Circulant) -> int:
    """Get Δ: 2|S|, or 2|S| - 1 if n/2 is a jump (circulants are regular)."""
    return 2 * len(c.jumps) - (1 if c.has_half_jump else 0)


def degrees(n: int, edges: typing.Iterable[Edge]) -> typing.Dict[int, int]:
    """Count the degree of every label 1..n."""
    count = dict.fromkeys(range(1, n + 1), 0)
    for edge in edges:
        count[edge.u] += 1
        count[edge.v] += 1
    return count


def cn_distance(n: int, u: int, w: int) -> int:
    """Get the distance of two labels along the n-cycle."""
    for label in (u, w):
        if not 1 <= label <= n:
            raise CirculantError(f"Label {label} is outside [1, {n}]")
    diff = abs(u - w)
    return min(diff, n - diff)


def jump_of_edge(c: Circulant, e: Edge) -> int:
    """Get the jump-length that generates the edge e of c.

    Raises
    ------
    CirculantError: if e is not an edge of c.
    """
    distance = cn_distance(c.n, e[0], e[1])
    if distance not in c.jumps:
        raise CirculantError(f"{tuple(e)} is not an edge of {c}")
    return distance


class BipartitenessCertificate(Record):
    """Exponent ℓ with 2^ℓ | every jump, 2^(ℓ+1) | n and 2^(ℓ+1) | no jump."""

    ell: int = Field()

    def holds_for(self, c: Circulant) -> bool:
        """Check the divisibility conditions on c."""
        low, high = 2**self.ell, 2 ** (self.ell + 1)
        return (
            c.n % high == 0
            and all(jump % low == 0 for jump in c.jumps)
            and all(jump % high != 0 for jump in c.jumps)
        )


def heuberger_bipartite(c: Circulant) -> typing.Optional[BipartitenessCertificate]:
    """Decide bipartiteness by the divisibility characterization.

    Every candidate ℓ satisfies 2^(ℓ+1) | n, so ℓ ranges over 0..log2(n).
    """
    for ell in range(c.n.bit_length()):
        certificate = BipartitenessCertificate(ell=ell)
        if certificate.holds_for(c):
            return certificate
    return None


def to_networkx(n: int, edges: typing.Iterable[Edge]) -> nx.Graph:
    """Build a networkx graph on the labels 1..n."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from(edges)
    return graph


def bfs_bipartite(
    edges: typing.Iterable[Edge], n: int
) -> typing.Optional[typing.Dict[int, int]]:
    """Two-colour the labels 1..n by breadth first search.

    Returns
    -------
    dict|None:
        {label: 0 or 1} without monochromatic edge, None if there is an odd cycle.
    """
    graph = to_networkx(n, edges)
    try:
        return nx.bipartite.color(graph)
    except nx.NetworkXError:
        return None


def odd_cycle_witness(
    edges: typing.Iterable[Edge], n: int
) -> typing.Optional[typing.List[int]]:
    """Find an odd cycle from the BFS levels, None if the graph is bipartite.

    An edge between two labels of equal level closes an odd cycle through the
    lowest common ancestor of its endpoints in the BFS tree.
    """
    graph = to_networkx(n, edges)
    for component in nx.connected_components(graph):
        root = min(component)
        parent = dict(nx.bfs_predecessors(graph, root))
        level = nx.single_source_shortest_path_length(graph, root)
        for u, v in sorted(graph.subgraph(component).edges()):
            if level[u] != level[v]:
                continue
            left, right = [u], [v]
            while left[-1] != right[-1]:
                left.append(parent[left[-1]])
                right.append(parent[right[-1]])
            cycle = left + right[-2::-1]
            log.debug(f"Odd cycle of length {len(cycle)} through edge {(u, v)}")
            return cycle
    return None


class Decomposition(Record):
    """C(n, S) as r disjoint copies of C(n/r, S/r), r = gcd(n, S)."""

    r: int = Field()
    reduced: Circulant = Field()

    def two_adic(self) -> typing.Tuple[int, int]:
        """Split r = 2^ℓ · u with u odd."""
        ell, odd = 0, self.r
        while odd % 2 == 0:
            ell, odd = ell + 1, odd // 2
        return ell, odd


def decompose(c: Circulant) -> Decomposition:
    """Split a circulant into its isomorphic connected components."""
    r = math.gcd(c.n, *c.jumps)
    reduced = Circulant(n=c.n // r, jumps=[jump // r for jump in c.jumps])
    log.debug(f"{c} = {r} x {reduced}")
    return Decomposition(r=r, reduced=reduced)


def is_connected(c: Circulant) -> bool:
    """Check connectivity, gcd(n, S) = 1."""
    return decompose(c).r == 1


def component_labels(decomposition: Decomposition, t: int) -> typing.List[int]:
    """Get the labels of component t, indexed by reduced label - 1.

    Component t is the residue class {v : (v - 1) mod r = t}; reduced label x maps
    to (x - 1)·r + t + 1.
    """
    r = decomposition.r
    if not 0 <= t < r:
        raise CirculantError(f"Component index {t} is outside [0, {r - 1}]")
    return [(x - 1) * r + t + 1 for x in decomposition.reduced.vertices]
