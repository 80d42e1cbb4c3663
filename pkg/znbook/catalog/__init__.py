"""Named graphs with fixed labelings, built from LCF notation or as circulants."""

from __future__ import annotations

import logging
import re
import typing

import networkx as nx

from znbook.circulant import (
    Edge,
    circulant_edges,
    degrees,
    make_circulant,
    mu,
    to_networkx,
    wrap,
)
from znbook.descriptor import Field
from znbook.record import Record

log = logging.getLogger(__name__)


class LcfError(ValueError):
    """Inconsistent LCF pattern."""


class UnknownGraphError(KeyError):
    """Name not in the catalog."""


class LcfSpec(Record):
    """A cubic Hamiltonian graph as [pattern]^repeats on the cycle 1-2-...-n-1."""

    n: int = Field(check_types=True)
    pattern: typing.Tuple[int, ...] = Field(check_types=True, on_setattr=tuple)
    repeats: int = Field(check_types=True)

    def _post_init_(self):
        if self.repeats < 1 or len(self.pattern) * self.repeats != self.n:
            raise LcfError(
                f"|pattern| * repeats = {len(self.pattern)} * {self.repeats} != {self.n}"
            )
        for offset in self.pattern:
            if not 2 <= abs(offset) <= self.n - 2:
                raise LcfError(f"Offset {offset} is outside 2 <= |o| <= {self.n - 2}")

    def __str__(self):
        """Get the LCF notation, e.g. [5,-5]^6."""
        return f"[{','.join(map(str, self.pattern))}]^{self.repeats}"


def from_lcf(spec: LcfSpec) -> typing.List[Edge]:
    """Build the edges of an LCF graph, sorted.

    Raises
    ------
    LcfError: if the chords do not pair up into a cubic graph.
    """
    n = spec.n
    edges = {Edge.of(i, wrap(n, i + 1)) for i in range(1, n + 1)}
    chords = set()
    for i in range(1, n + 1):
        offset = spec.pattern[(i - 1) % len(spec.pattern)]
        chords.add(Edge.of(i, wrap(n, i + offset)))
    edges |= chords
    irregular = {label: d for label, d in degrees(n, edges).items() if d != 3}
    if irregular:
        raise LcfError(f"LCF {spec} is not cubic, degrees {irregular}")
    return sorted(edges)


FRANKLIN = LcfSpec(n=12, pattern=(5, -5), repeats=6)
HEAWOOD = LcfSpec(n=14, pattern=(5, -5), repeats=7)
DESARGUES = LcfSpec(n=20, pattern=(5, -5, 9, -9), repeats=5)

LCF_GRAPHS = {"franklin": FRANKLIN, "heawood": HEAWOOD, "desargues": DESARGUES}
CIRCULANT_GRAPHS = {"k33": (6, (1, 3)), "k44": (8, (1, 3))}
_PARAMETRIZED = re.compile(r"^(cycle|complete_bipartite)\((\d+)\)$")


def catalog_names() -> typing.List[str]:
    """Get the fixed names, parametrized families are written 'cycle(n)'."""
    return [*LCF_GRAPHS, *CIRCULANT_GRAPHS, "cycle(n)", "complete_bipartite(k)"]


def named_graph(name: str) -> typing.Tuple[int, typing.List[Edge]]:
    """Get (n, edges) of a catalog graph.

    Raises
    ------
    UnknownGraphError: if the name is not in the catalog.
    """
    key = name.strip().lower()
    if key in LCF_GRAPHS:
        spec = LCF_GRAPHS[key]
        return spec.n, from_lcf(spec)
    if key in CIRCULANT_GRAPHS:
        n, jumps = CIRCULANT_GRAPHS[key]
        return n, circulant_edges(make_circulant(n, jumps))
    match = _PARAMETRIZED.match(key)
    if match is not None:
        family, size = match.group(1), int(match.group(2))
        if family == "cycle" and size >= 3:
            return size, circulant_edges(make_circulant(size, [1]))
        if family == "complete_bipartite" and size >= 2:
            # K_{k,k} = C(2k, {1, 3, ..., mu(k)}), odd labels on one side
            return 2 * size, circulant_edges(
                make_circulant(2 * size, range(1, mu(size) + 1, 2))
            )
    raise UnknownGraphError(f"Unknown graph '{name}', choose from {catalog_names()}")


def girth(n: int, edges: typing.Iterable[Edge]) -> typing.Optional[int]:
    """Get the length of a shortest cycle, None for forests."""
    basis = nx.minimum_cycle_basis(to_networkx(n, edges))
    return min((len(cycle) for cycle in basis), default=None)


def describe_graph(name: str) -> dict:
    """Summarize a catalog graph: n, edge count, Δ, bipartiteness and girth."""
    n, edges = named_graph(name)
    graph = to_networkx(n, edges)
    return {
        "name": name,
        "n": n,
        "edges": len(edges),
        "delta": max(degrees(n, edges).values()),
        "bipartite": nx.is_bipartite(graph),
        "girth": girth(n, edges),
    }
