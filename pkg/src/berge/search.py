"""Berge cycles and paths: validation and exact branch-and-bound search.

A Berge cycle is fixed by its vertex sequence once each consecutive pair is
matched to a distinct edge containing it.  The search therefore runs over
vertex sequences and keeps an incremental bipartite matching between the
consecutive pairs and the edges (Kuhn's augmenting paths), which is the same
as walking alternating cycles of the incidence graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BudgetExhausted, Hypergraph, check

DEFAULT_BUDGET = 10**7


class NoCycleError(ValueError):
    """The hypergraph has no Berge cycle at all."""


@dataclass(frozen=True)
class BergeCycle:
    vertices: tuple
    edges: tuple

    def __len__(self):
        return len(self.vertices)

    def pairs(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def rotated(self, k: int) -> "BergeCycle":
        """Cycle read from position ``k``: ``v_k`` becomes the first vertex."""
        k %= len(self.vertices)
        return BergeCycle(self.vertices[k:] + self.vertices[:k], self.edges[k:] + self.edges[:k])

    def reversed(self) -> "BergeCycle":
        vs = self.vertices[::-1]
        # edge between v_{i+1} and v_i keeps its pair
        es = self.edges[-2::-1] + self.edges[-1:]
        return BergeCycle(vs, es)

    def to_json(self) -> dict:
        return {"length": len(self), "vertices": list(self.vertices), "edges": list(self.edges)}

    @classmethod
    def from_json(cls, obj) -> "BergeCycle":
        return cls(tuple(obj["vertices"]), tuple(obj["edges"]))


@dataclass(frozen=True)
class BergePath:
    """Full path ``u_0, f_0, u_1, ..., u_l`` or partial path ``f_0, u_1, ..., u_l``.

    For a partial path ``vertices`` starts at ``u_1`` so it has as many
    vertices as edges.
    """

    vertices: tuple
    edges: tuple
    kind: str = "full"

    @property
    def length(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "edges": list(self.edges)}

    @classmethod
    def from_json(cls, obj) -> "BergePath":
        return cls(tuple(obj["vertices"]), tuple(obj["edges"]), obj.get("kind", "full"))


def _edge_ok(h: Hypergraph, e: int) -> bool:
    return isinstance(e, int) and 0 <= e < h.m


def validate_cycle(h: Hypergraph, c: BergeCycle) -> bool:
    vs, es = c.vertices, c.edges
    if len(vs) < 2 or len(vs) != len(es):
        return False
    if len(set(vs)) != len(vs) or len(set(es)) != len(es):
        return False
    if not all(_edge_ok(h, e) for e in es):
        return False
    masks = h.edge_masks
    for i, e in enumerate(es):
        pair = (1 << vs[i]) | (1 << vs[(i + 1) % len(vs)])
        if masks[e] & pair != pair:
            return False
    return True


def validate_path(h: Hypergraph, p: BergePath) -> bool:
    vs, es = p.vertices, p.edges
    if len(set(vs)) != len(vs) or len(set(es)) != len(es):
        return False
    if not all(_edge_ok(h, e) for e in es) or not all(0 <= v < h.n for v in vs):
        return False
    masks = h.edge_masks
    if p.kind == "full":
        if len(vs) != len(es) + 1:
            return False
        steps = zip(es, vs, vs[1:])
    elif p.kind == "partial":
        if len(vs) != len(es) or not vs:
            return False
        if not masks[es[0]] >> vs[0] & 1:
            return False
        steps = zip(es[1:], vs, vs[1:])
    else:
        return False
    for e, a, b in steps:
        pair = (1 << a) | (1 << b)
        if masks[e] & pair != pair:
            return False
    return True


def match_pairs(h: Hypergraph, pairs, forbidden=(), prefer=None):
    """Assign distinct edges to vertex pairs, each edge containing its pair.

    Returns the list of edge ids or None.  ``prefer`` optionally gives a
    first-choice edge per pair, tried before the others.
    """
    pe = h.pair_edges
    forbidden = set(forbidden)
    cands = []
    for i, (u, v) in enumerate(pairs):
        opts = [e for e in pe[u][v] if e not in forbidden]
        if prefer is not None and prefer[i] in opts:
            opts.remove(prefer[i])
            opts.insert(0, prefer[i])
        if not opts:
            return None
        cands.append(opts)
    owner: dict = {}
    assign = [-1] * len(cands)

    def augment(p, seen):
        for e in cands[p]:
            if e in seen:
                continue
            seen.add(e)
            o = owner.get(e)
            if o is None or augment(o, seen):
                owner[e] = p
                assign[p] = e
                return True
        return False

    for p in range(len(cands)):
        if not augment(p, set()):
            return None
    return assign


def lexmin_edges(h: Hypergraph, pairs):
    """Lexicographically least edge assignment for ``pairs`` (or None)."""
    if match_pairs(h, pairs) is None:
        return None
    chosen: list = []
    for i, (u, v) in enumerate(pairs):
        for e in h.pair_edges[u][v]:
            if e in chosen:
                continue
            if match_pairs(h, pairs[i + 1:], forbidden=chosen + [e]) is not None:
                chosen.append(e)
                break
    return chosen


def cycle_from_vertices(h: Hypergraph, vertices, prefer=None):
    """A Berge cycle on this vertex sequence, or None if the pairs cannot be matched."""
    vs = tuple(vertices)
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return None
    pairs = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    es = match_pairs(h, pairs, prefer=prefer)
    return None if es is None else BergeCycle(vs, tuple(es))


@dataclass(frozen=True)
class SearchResult:
    length: int
    witness: object  # BergeCycle, BergePath or None
    exact: bool
    expansions: int


class _Stop(Exception):
    pass


class _Matcher:
    """Incremental matching of sequence slots to distinct edges."""

    def __init__(self, h: Hypergraph, slots: int):
        self.pe = h.pair_edges
        self.owner = [-1] * h.m
        self.assign = [-1] * slots
        self.cands = [()] * slots

    def _augment(self, p, seen):
        owner = self.owner
        for e in self.cands[p]:
            if e in seen:
                continue
            seen.add(e)
            o = owner[e]
            if o < 0 or self._augment(o, seen):
                owner[e] = p
                self.assign[p] = e
                return True
        return False

    def push(self, p, u, v) -> bool:
        cands = self.pe[u][v]
        self.cands[p] = cands
        owner = self.owner
        for e in cands:
            if owner[e] < 0:
                owner[e] = p
                self.assign[p] = e
                return True
        return self._augment(p, set())

    def pop(self, p):
        self.owner[self.assign[p]] = -1
        self.assign[p] = -1


def _reach(nmask, u, allowed) -> int:
    """Number of vertices reachable from ``u`` through ``allowed`` (bitmask)."""
    seen = frontier = nmask[u] & allowed
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= nmask[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen.bit_count()


def _longest_cycle_sequence(h: Hypergraph, budget: int):
    n, upper = h.n, min(h.n, h.m)
    pe, nmask = h.pair_edges, h.neighbor_masks
    nbr = [tuple(w for w in range(n) if pe[u][w]) for u in range(n)]
    full = (1 << n) - 1
    best = [1, None]
    spent = 0
    seq: list = []
    mt = _Matcher(h, n)

    def rec(u, used, a, above):
        nonlocal spent
        spent += 1
        if spent > budget:
            raise _Stop
        length = len(seq)
        if length >= 2 and length > best[0] and pe[u][a]:
            if mt.push(length - 1, u, a):
                mt.pop(length - 1)
                best[0], best[1] = length, tuple(seq)
                if length == upper:
                    raise _Stop
        if length == upper:
            return
        allowed = above & ~used
        if length + _reach(nmask, u, allowed) <= best[0]:
            return
        for w in nbr[u]:
            if w <= a or used >> w & 1:
                continue
            if mt.push(length - 1, u, w):
                seq.append(w)
                rec(w, used | 1 << w, a, above)
                seq.pop()
                mt.pop(length - 1)

    exact = True
    try:
        for a in range(n):
            if n - a <= best[0]:
                break
            above = full & ~((1 << (a + 1)) - 1)
            seq[:] = [a]
            rec(a, 1 << a, a, above)
    except _Stop:
        exact = best[0] == upper and best[1] is not None
    return (best[0] if best[1] else 0), best[1], exact, spent


def circumference(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Exact circumference with the lexicographically least longest cycle.

    If the budget runs out the result carries the best cycle found so far
    and ``exact=False``.
    """
    check(h)
    length, seq, exact, spent = _longest_cycle_sequence(h, budget)
    if seq is None:
        return SearchResult(0, None, exact, spent)
    pairs = [(seq[i], seq[(i + 1) % length]) for i in range(length)]
    witness = BergeCycle(seq, tuple(lexmin_edges(h, pairs)))
    assert validate_cycle(h, witness)
    return SearchResult(length, witness, exact, spent)


def has_hamiltonian_berge_cycle(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> bool:
    check(h)
    if h.m < h.n:
        return False
    res = circumference(h, budget)
    if res.length == h.n:
        return True
    if not res.exact:
        raise BudgetExhausted("hamiltonicity undecided", best=res.witness, expansions=res.expansions)
    return False


def longest_berge_path(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Longest full Berge path; ``length`` counts edges."""
    check(h)
    n, upper = h.n, min(h.n - 1, h.m)
    pe, nmask = h.pair_edges, h.neighbor_masks
    nbr = [tuple(w for w in range(n) if pe[u][w]) for u in range(n)]
    full = (1 << n) - 1
    best = [0, (0,)]
    spent = 0
    seq: list = []
    mt = _Matcher(h, n)

    def rec(u, used):
        nonlocal spent
        spent += 1
        if spent > budget:
            raise _Stop
        edges = len(seq) - 1
        if edges > best[0] and u > seq[0]:
            best[0], best[1] = edges, tuple(seq)
            if edges == upper:
                raise _Stop
        if edges + _reach(nmask, u, full & ~used) <= best[0]:
            return
        for w in nbr[u]:
            if used >> w & 1:
                continue
            if mt.push(edges, u, w):
                seq.append(w)
                rec(w, used | 1 << w)
                seq.pop()
                mt.pop(edges)

    exact = True
    try:
        for a in range(n):
            seq[:] = [a]
            rec(a, 1 << a)
    except _Stop:
        exact = best[0] == upper
    vs = best[1]
    es = lexmin_edges(h, list(zip(vs, vs[1:])))
    witness = BergePath(vs, tuple(es))
    assert validate_path(h, witness)
    return SearchResult(best[0], witness, exact, spent)


def iter_cycle_sequences(h: Hypergraph, length: int, budget: int | None = None):
    """Canonical vertex sequences of Berge cycles of the given length.

    Canonical means the least vertex comes first and, for length >= 3, the
    second vertex is smaller than the last.  Sequences come out in
    lexicographic order.  ``budget`` caps node expansions (BudgetExhausted).
    """
    n = h.n
    pe, nmask = h.pair_edges, h.neighbor_masks
    nbr = [tuple(w for w in range(n) if pe[u][w]) for u in range(n)]
    full = (1 << n) - 1
    seq: list = []
    mt = _Matcher(h, max(n, 2))
    spent = 0

    def rec(u, used, a, above):
        nonlocal spent
        spent += 1
        if budget is not None and spent > budget:
            raise BudgetExhausted("cycle enumeration exceeded budget", expansions=spent)
        depth = len(seq)
        if depth == length:
            if pe[u][a] and (length == 2 or seq[1] < u) and mt.push(depth - 1, u, a):
                mt.pop(depth - 1)
                yield tuple(seq)
            return
        if depth + _reach(nmask, u, above & ~used) < length:
            return
        for w in nbr[u]:
            if w <= a or used >> w & 1:
                continue
            if mt.push(depth - 1, u, w):
                seq.append(w)
                yield from rec(w, used | 1 << w, a, above)
                seq.pop()
                mt.pop(depth - 1)

    if length < 2 or length > min(n, h.m):
        return
    for a in range(n - length + 1):
        seq[:] = [a]
        yield from rec(a, 1 << a, a, full & ~((1 << (a + 1)) - 1))
