"""Generators for the extremal examples, each with its expected invariants.

Vertex numbering is canonical: the special vertices (``x, y`` or the block
``X``) come first, then the blades or blocks in parameter order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .core import Hypergraph


@dataclass
class ConstructionSpec:
    """Name, parameters and the values the construction is known to have.

    ``expected`` keys: ``n``, ``m``, ``min_degree``, ``circumference`` with
    ``circumference_relation`` (``"="`` or ``"<="``), ``connectivity`` (a
    lower bound on the incidence-graph connectivity) and, for graphs,
    ``graph_connectivity``, where known.
    """

    name: str
    parameters: dict
    expected: dict
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "expected": dict(self.expected),
            "warnings": list(self.warnings),
        }


def gen_Hk(r: int, k: int, m: int):
    """``m`` blades ``A_i`` of size r-1; edges ``(A_i - a_ij) + {x, y}`` for j < k.

    x = 0, y = 1, blade i occupies ``2 + i(r-1) .. 2 + (i+1)(r-1) - 1``.
    """
    if m < 2 or r < 3 or not 3 <= k <= r:
        raise ValueError(f"H_k needs m >= 2 and 3 <= k <= r, got r={r} k={k} m={m}")
    n = m * (r - 1) + 2
    edges = []
    for i in range(m):
        blade = list(range(2 + i * (r - 1), 2 + (i + 1) * (r - 1)))
        for j in range(k - 1):
            edges.append(tuple([0, 1] + blade[:j] + blade[j + 1:]))
    h = Hypergraph(n, tuple(edges), r)
    expected = {
        "n": n,
        "m": m * (k - 1),
        "min_degree": k - 2,
        "circumference": 2 * k - 2,
        "circumference_relation": "=",
        "connectivity": 2,
    }
    warnings = []
    if k == 3:
        # blade vertices then lie in a single edge, so only x and y can sit on a cycle
        expected.update(circumference=2, connectivity=1)
        warnings.append("k = 3: blade vertices have degree 1, so c = 2 and the incidence graph has cut vertices")
    return h, ConstructionSpec("Hk", {"r": r, "k": k, "m": m}, expected, warnings)


def gen_H1(r: int, k: int, q: int):
    """``q`` blocks ``V_i`` of size k-2, each ``V_i + {x, y}`` a complete r-graph."""
    if q < 2 or not 4 <= r + 1 <= k:
        raise ValueError(f"H_1 needs q >= 2 and 4 <= r+1 <= k, got r={r} k={k} q={q}")
    n = q * (k - 2) + 2
    edges = []
    for i in range(q):
        block = [0, 1] + list(range(2 + i * (k - 2), 2 + (i + 1) * (k - 2)))
        edges.extend(combinations(block, r))
    h = Hypergraph(n, tuple(edges), r)
    spec = ConstructionSpec(
        "H1",
        {"r": r, "k": k, "q": q},
        {
            "n": n,
            "m": q * comb(k, r),
            "min_degree": comb(k - 1, r - 1),
            "circumference": 2 * k - 2,
            "circumference_relation": "<=",
            "connectivity": 2,
        },
    )
    return h, spec


def gen_H2(r: int, k: int, n: int):
    """``X = {0..k-2}``, ``Y`` the rest; all r-sets with at most one vertex in Y."""
    if r < 2 or k < r or n < k:
        raise ValueError(f"H_2 needs n >= k >= r, got r={r} k={k} n={n}")
    warnings = []
    if not 4 <= r + 1 <= k:
        warnings.append("parameters outside 4 <= r+1 <= k")
    xs = list(range(k - 1))
    edges = list(combinations(xs, r))
    for y in range(k - 1, n):
        edges.extend(c + (y,) for c in combinations(xs, r - 1))
    h = Hypergraph(n, tuple(edges), r)
    spec = ConstructionSpec(
        "H2",
        {"r": r, "k": k, "n": n},
        {
            "n": n,
            "m": comb(k - 1, r) + (n - k + 1) * comb(k - 1, r - 1),
            "min_degree": comb(k - 1, r - 1),
            "circumference": 2 * k - 2,
            "circumference_relation": "<=",
            "connectivity": k - 1,
        },
        warnings,
    )
    return h, spec


def gen_G3(a: int, b: int, a_prime: int, b_prime: int):
    """Bipartite graph K_{a'-b,a} and K_{b,b'-a} with the a-part joined to the b-part.

    Parts in vertex order: P1 (a'-b), P2 (a), Q1 (b), Q2 (b'-a); the sides
    of the bipartition are P1+Q1 (size a') and P2+Q2 (size b').
    """
    if a < 1 or b < 1 or not a_prime >= b_prime >= a + b - 1:
        raise ValueError(f"G_3 needs a, b >= 1 and a' >= b' >= a+b-1, got {a, b, a_prime, b_prime}")
    sizes = [a_prime - b, a, b, b_prime - a]
    starts = [sum(sizes[:i]) for i in range(4)]
    p1, p2, q1, q2 = (range(s, s + z) for s, z in zip(starts, sizes))
    edges = [(u, v) for u in p1 for v in p2]
    edges += [(u, v) for u in p2 for v in q1]
    edges += [(u, v) for u in q1 for v in q2]
    h = Hypergraph(sum(sizes), tuple(edges), 2)
    spec = ConstructionSpec(
        "G3",
        {"a": a, "b": b, "a_prime": a_prime, "b_prime": b_prime},
        {
            "n": sum(sizes),
            "m": len(edges),
            "sides": [a_prime, b_prime],
            "side_min_degrees": [a, b],
            "cycle_lower_bound": 2 * min(b_prime, a + b - 1, 2 * a - 2),
        },
    )
    return h, spec


def gen_Kbip(k: int, n: int):
    """Complete bipartite K_{k-1, n-k+1}; the small side is ``0..k-2``."""
    if not 2 <= k <= n / 2:
        raise ValueError(f"K_(k-1,n-k+1) needs 2 <= k <= n/2, got k={k} n={n}")
    edges = [(u, v) for u in range(k - 1) for v in range(k - 1, n)]
    h = Hypergraph(n, tuple(edges), 2)
    spec = ConstructionSpec(
        "Kbip",
        {"k": k, "n": n},
        {
            "n": n,
            "m": len(edges),
            "min_degree": k - 1,
            "circumference": 2 * k - 2,
            "circumference_relation": "=",
            "graph_connectivity": k - 1,
        },
    )
    return h, spec


GENERATORS = {
    "hk": (gen_Hk, ("r", "k", "m")),
    "h1": (gen_H1, ("r", "k", "q")),
    "h2": (gen_H2, ("r", "k", "n")),
    "g3": (gen_G3, ("a", "b", "a_prime", "b_prime")),
    "kbip": (gen_Kbip, ("k", "n")),
}
