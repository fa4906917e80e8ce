"""Hypergraph data model and the incidence-graph reduction.

Vertices are ``0..n-1`` and edges are identified by their index in
``Hypergraph.edges``.  Repeated edge sets are allowed; they count as
different edges for Berge cycles.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property


class InvalidHypergraph(ValueError):
    """Raised when a hypergraph breaks the model invariants."""


class BudgetExhausted(RuntimeError):
    """Raised when an exhaustive search runs out of node expansions."""

    def __init__(self, message, best=None, expansions=0):
        super().__init__(message)
        self.best = best
        self.expansions = expansions


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on ``range(n)``.

    ``r`` is the declared uniformity; 0 means edges may have any size.
    """

    n: int
    edges: tuple
    r: int = 0

    def __post_init__(self):
        # keep duplicates inside an edge so validate() can report them
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple:
        """``incidence[v]`` is the sorted tuple of edge ids containing ``v``."""
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in set(e):
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_masks(self) -> tuple:
        return tuple(sum(1 << v for v in set(e)) for e in self.edges)

    @cached_property
    def pair_edges(self) -> tuple:
        """``pair_edges[u][v]``: ids of edges containing both ``u`` and ``v``."""
        n = self.n
        table = [[[] for _ in range(n)] for _ in range(n)]
        for i, e in enumerate(self.edges):
            vs = sorted(set(e))
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    table[vs[a]][vs[b]].append(i)
                    table[vs[b]][vs[a]].append(i)
        return tuple(tuple(tuple(c) for c in row) for row in table)

    @cached_property
    def neighbor_masks(self) -> tuple:
        masks = []
        for u in range(self.n):
            mask = 0
            for i in self.incidence[u]:
                mask |= self.edge_masks[i]
            masks.append(mask & ~(1 << u))
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def canonical_hash(self) -> str:
        """Hash of the labelled instance, insensitive to edge order."""
        body = f"{self.n}|{self.r}|" + ";".join(
            ",".join(map(str, e)) for e in sorted(self.edges)
        )
        return hashlib.sha256(body.encode()).hexdigest()[:16]


def validate(h: Hypergraph) -> list:
    """Return a list of problems; an empty list means ``h`` is well formed."""
    problems = []
    if h.n < 1:
        problems.append(f"n must be positive, got {h.n}")
    for i, e in enumerate(h.edges):
        if len(set(e)) != len(e):
            problems.append(f"edge {i} repeats a vertex: {list(e)}")
        if any(v < 0 or v >= h.n for v in e):
            problems.append(f"edge {i} has a vertex outside 0..{h.n - 1}: {list(e)}")
        if h.r and len(e) != h.r:
            problems.append(f"edge {i} has size {len(e)}, expected {h.r}")
    return problems


def check(h: Hypergraph) -> Hypergraph:
    problems = validate(h)
    if problems:
        raise InvalidHypergraph("; ".join(problems))
    return h


def _vertex(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.n:
        raise IndexError(f"vertex {v} outside 0..{h.n - 1}")
    return v


def degree(h: Hypergraph, v: int) -> int:
    return h.degree(_vertex(h, v))


def min_degree(h: Hypergraph) -> int:
    if h.n < 1:
        raise ValueError("min_degree of a hypergraph without vertices")
    return min(len(x) for x in h.incidence)


def neighborhood(h: Hypergraph, v: int) -> frozenset:
    _vertex(h, v)
    return frozenset(u for u in range(h.n) if h.neighbor_masks[v] >> u & 1)


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite incidence graph: node ``v`` for vertices, ``n + i`` for edge ``i``."""

    n: int
    m: int
    vertex_edges: tuple  # vertex -> edge ids
    edge_vertices: tuple  # edge id -> vertices

    @property
    def order(self) -> int:
        return self.n + self.m

    def adjacency(self) -> list:
        adj = [[self.n + i for i in es] for es in self.vertex_edges]
        adj += [list(vs) for vs in self.edge_vertices]
        return adj


def incidence_graph(h: Hypergraph) -> IncidenceGraph:
    return IncidenceGraph(
        n=h.n,
        m=h.m,
        vertex_edges=h.incidence,
        edge_vertices=tuple(tuple(sorted(set(e))) for e in h.edges),
    )


def from_incidence(ig: IncidenceGraph, r: int = 0) -> Hypergraph:
    return Hypergraph(ig.n, ig.edge_vertices, r)

