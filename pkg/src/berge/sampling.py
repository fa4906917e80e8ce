"""Random r-graphs with a minimum degree and (optionally) 2-connectivity.

Add-then-sparsify: random distinct r-sets are added until the degree and
connectivity targets hold, plus a random number of extra r-sets, then one
shuffled removal pass drops edges that are not needed for either property.
Half of the instances try to drop every edge, the other half try each edge
with a random probability, so both sparse and dense instances appear.  The
distribution is not uniform over the target class.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

from .connectivity import is_biconnected
from .core import Hypergraph


class SamplingError(RuntimeError):
    pass


def _incidence_biconnected(n, edges) -> bool:
    adj = [[] for _ in range(n + len(edges))]
    for i, e in enumerate(edges):
        for v in e:
            adj[v].append(n + i)
            adj[n + i].append(v)
    # is_biconnected only reads .n and .adjacency
    return is_biconnected(_Adj(n + len(edges), adj))


class _Adj:
    __slots__ = ("n", "adjacency")

    def __init__(self, n, adjacency):
        self.n = n
        self.adjacency = adjacency


def random_rgraph(n: int, r: int, min_deg: int, rng: random.Random, two_connected: bool = True) -> Hypergraph:
    """One sample; raises SamplingError if even the complete r-graph fails."""
    if r > n or min_deg > comb(n - 1, r - 1):
        raise SamplingError(f"no {r}-graph on {n} vertices has minimum degree {min_deg}")
    pool = list(combinations(range(n), r))
    rng.shuffle(pool)
    deg = [0] * n
    edges = []
    for e in pool:
        edges.append(e)
        for v in e:
            deg[v] += 1
        if min(deg) >= min_deg and (not two_connected or _incidence_biconnected(n, edges)):
            break
    else:
        raise SamplingError(f"complete {r}-graph on {n} vertices misses the targets")
    # overshoot by a random amount (skewed towards few extra edges)
    extra = int(rng.random() ** 2 * (len(pool) - len(edges)))
    for e in pool[len(edges):len(edges) + extra]:
        edges.append(e)
        for v in e:
            deg[v] += 1
    thin = 1.0 if rng.random() < 0.5 else rng.random()
    order = list(range(len(edges)))
    rng.shuffle(order)
    removed = set()
    for i in order:
        if rng.random() >= thin:
            continue
        e = edges[i]
        if any(deg[v] <= min_deg for v in e):
            continue
        removed.add(i)
        if two_connected and not _incidence_biconnected(n, [f for j, f in enumerate(edges) if j not in removed]):
            removed.discard(i)
            continue
        for v in e:
            deg[v] -= 1
    return Hypergraph(n, tuple(sorted(f for j, f in enumerate(edges) if j not in removed)), r)


def random_2connected_rgraph(n: int, r: int, k: int, seed) -> Hypergraph:
    """2-connected r-graph with minimum degree at least k, deterministic per seed."""
    if not 3 <= k <= r + 1 <= n:
        raise ValueError(f"need 3 <= k <= r+1 <= n, got n={n} r={r} k={k}")
    return random_rgraph(n, r, k, random.Random(seed), two_connected=True)
