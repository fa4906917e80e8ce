"""Vertex connectivity, hypergraph k-connectivity and aligned disjoint paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import BudgetExhausted, Hypergraph, check, incidence_graph


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``range(n)`` with sorted adjacency tuples."""

    n: int
    adjacency: tuple

    @classmethod
    def from_edges(cls, n, edges):
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_hypergraph(cls, h: Hypergraph):
        """The incidence graph of ``h``; edge ``i`` becomes node ``n + i``."""
        return cls(h.n + h.m, tuple(tuple(a) for a in incidence_graph(h).adjacency()))

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u, v) -> bool:
        return v in self.adjacency[u]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_biconnected(g: Graph) -> bool:
    """Connected, at least three nodes and no cut vertex (iterative Tarjan)."""
    n = g.n
    if n < 3:
        return False
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    disc[0] = 0
    timer = 1
    root_children = 0
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] < 0:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < low[u]:
                low[u] = disc[w]
        if advanced:
            continue
        stack.pop()
        if parent < 0:
            continue
        if low[u] < low[parent]:
            low[parent] = low[u]
        if parent == 0:
            root_children += 1
        elif low[u] >= disc[parent]:
            return False
    return timer == n and root_children == 1


def local_connectivity(g: Graph, s: int, t: int, cap: int | None = None) -> int:
    """Maximum number of internally disjoint s,t-paths (s, t non-adjacent).

    Unit-capacity max-flow on the node-split digraph; stops once ``cap``
    paths are found.
    """
    n = g.n
    # node v splits into v_in = 2v and v_out = 2v + 1
    res: list[dict] = [dict() for _ in range(2 * n)]
    for v in range(n):
        res[2 * v][2 * v + 1] = n if v in (s, t) else 1
        res[2 * v + 1].setdefault(2 * v, 0)
        for w in g.adjacency[v]:
            res[2 * v + 1][2 * w] = 1
            res[2 * w].setdefault(2 * v + 1, 0)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    limit = cap if cap is not None else n
    while flow < limit:
        prev = {source: None}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b, c in res[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while prev[b] is not None:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """kappa(g), with kappa(K_n) = n - 1."""
    n = g.n
    if n < 1:
        raise ValueError("graph without nodes")
    if not is_connected(g):
        return 0
    kappa = n - 1
    # some node among the first kappa + 1 lies outside a minimum separator,
    # and the far side of that separator only holds larger indices
    i = 0
    while i <= kappa and i < n:
        nbrs = set(g.adjacency[i])
        for j in range(i + 1, n):
            if j not in nbrs:
                kappa = min(kappa, local_connectivity(g, i, j, kappa))
        i += 1
    return kappa


def is_k_connected(h: Hypergraph, k: int) -> bool:
    """True iff the incidence graph of ``h`` is k-connected."""
    check(h)
    g = Graph.from_hypergraph(h)
    if k <= 0:
        return True
    if k == 1:
        return g.n >= 2 and is_connected(g)
    if k == 2:
        return is_biconnected(g)
    return vertex_connectivity(g) >= k


def hypergraph_connectivity(h: Hypergraph) -> int:
    check(h)
    return vertex_connectivity(Graph.from_hypergraph(h))


@dataclass(frozen=True)
class AlignedPathsResult:
    p1: tuple  # x -> z
    p2: tuple  # x -> y


def is_path(g: Graph, p) -> bool:
    return (
        len(p) >= 1
        and len(set(p)) == len(p)
        and all(0 <= v < g.n for v in p)
        and all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
    )


def is_aligned(p, q) -> bool:
    """Shared nodes of ``p`` and ``q`` occur in the same relative order."""
    pos = {v: i for i, v in enumerate(q)}
    shared = [pos[v] for v in p if v in pos]
    return all(a < b for a, b in zip(shared, shared[1:]))


def check_aligned_paths(g: Graph, q, z, result: AlignedPathsResult) -> list:
    """Structural problems with ``result``; empty when it satisfies the lemma."""
    problems = []
    x, y = q[0], q[-1]
    p1, p2 = result.p1, result.p2
    if not is_path(g, p1) or not is_path(g, p2):
        problems.append("not a simple path")
    if p1[0] != x or p1[-1] != z:
        problems.append("p1 endpoints")
    if p2[0] != x or p2[-1] != y:
        problems.append("p2 endpoints")
    if set(p1) & set(p2) != {x}:
        problems.append("paths share more than x")
    if not is_aligned(p1, q) or not is_aligned(p2, q):
        problems.append("not aligned")
    return problems


def aligned_disjoint_paths(g: Graph, q, z: int, budget: int = 10**6) -> AlignedPathsResult:
    """Lexicographically least pair (p1, p2) of aligned paths meeting only at x.

    Bounded backtracking: p1 runs over x,z-paths in lexicographic order and
    for each one the least disjoint aligned x,y-path is searched.  Raises
    BudgetExhausted after ``budget`` node expansions.
    """
    q = tuple(q)
    if not is_path(g, q):
        raise ValueError("q is not a simple path of g")
    if not is_biconnected(g):
        raise PreconditionError("g is not 2-connected")
    x, y = q[0], q[-1]
    if not 0 <= z < g.n or z == y:
        raise ValueError("z must be a node other than y")
    pos = {v: i for i, v in enumerate(q)}
    adj = g.adjacency
    spent = 0

    def paths(target, blocked):
        # aligned simple x,target-paths avoiding ``blocked``, in lexicographic order
        nonlocal spent
        path = [x]
        on = {x}

        def rec(u, last):
            nonlocal spent
            spent += 1
            if spent > budget:
                raise BudgetExhausted("aligned path search exceeded budget", expansions=spent)
            if u == target:
                yield tuple(path)
                return
            for w in adj[u]:
                if w in on or w in blocked:
                    continue
                p = pos.get(w, -1)
                if p >= 0 and p <= last:
                    continue
                path.append(w)
                on.add(w)
                yield from rec(w, p if p >= 0 else last)
                path.pop()
                on.discard(w)

        yield from rec(x, 0)

    for p1 in paths(z, frozenset()):
        blocked = frozenset(p1[1:])
        if y in blocked:
            continue
        p2 = next(paths(y, blocked), None)
        if p2 is not None:
            return AlignedPathsResult(p1, p2)
    raise AssertionError("no aligned pair found; g is 2-connected so the lemma guarantees one")
