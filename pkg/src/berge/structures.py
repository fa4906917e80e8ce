"""Lollipops, disjoint cycle-path pairs and disjoint cycle-cycle pairs.

Conventions (0-based): a cycle's ``edges[i]`` joins ``vertices[i]`` and
``vertices[i+1]``, so ``edges[-1]`` closes the cycle.  An ordinary lollipop
path starts at ``u_0 = cycle.vertices[-1]``; a partial lollipop path starts
with the closing edge ``cycle.edges[-1]``.  For a partial lollipop ``u_0`` is
taken to be ``cycle.vertices[-1]`` as well; :func:`path_vertices` is the one
place this is encoded.

Ranks: lollipops and dcp-pairs are compared by (r1, r2, r3, r4); dcp- and
dcc-pairs together by (r1, r2, r3, s4, r4) where s4 flags a second cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import BudgetExhausted, Hypergraph
from .search import (
    DEFAULT_BUDGET,
    BergeCycle,
    BergePath,
    circumference,
    iter_cycle_sequences,
    validate_cycle,
    validate_path,
)


class InvalidStructure(ValueError):
    pass


@dataclass(frozen=True)
class Lollipop:
    cycle: BergeCycle
    path: BergePath
    kind: str = "ordinary"  # or "partial"

    @property
    def ell(self) -> int:
        return self.path.length


@dataclass(frozen=True)
class DcpPair:
    cycle: BergeCycle
    path: BergePath  # u_1 .. u_l, full path with l - 1 edges

    @property
    def ell(self) -> int:
        return len(self.path.vertices)


@dataclass(frozen=True)
class DccPair:
    cycle: BergeCycle
    second_cycle: BergeCycle

    @property
    def ell(self) -> int:
        return len(self.second_cycle)


FAMILIES = ("lollipop", "dcp", "dcc")


@dataclass(frozen=True, order=False)
class RankVector:
    family: str  # "lollipop", "dcp" (rules R) or "joint" (rules S)
    r1: int
    r2: int
    r3: int
    r4: int
    s4: int | None = None

    def key(self) -> tuple:
        if self.family == "joint":
            return (self.r1, self.r2, self.r3, self.s4, self.r4)
        return (self.r1, self.r2, self.r3, self.r4)

    def to_json(self) -> dict:
        out = {"family": self.family, "r1": self.r1, "r2": self.r2, "r3": self.r3, "r4": self.r4}
        if self.s4 is not None:
            out["s4"] = self.s4
        return out


def compare(a: RankVector, b: RankVector) -> int:
    """1 if ``a`` is better, -1 if ``b`` is better, 0 if the vectors tie."""
    if a.family != b.family:
        raise ValueError(f"cannot compare {a.family} rank with {b.family} rank")
    ka, kb = a.key(), b.key()
    return (ka > kb) - (ka < kb)


# --- structure accessors ---------------------------------------------------


def path_vertices(s) -> tuple:
    """u_0..u_l for lollipops (u_0 = v_c for both kinds), u_1..u_l for pairs."""
    if isinstance(s, Lollipop):
        if s.kind == "partial":
            return (s.cycle.vertices[-1],) + s.path.vertices
        return s.path.vertices
    if isinstance(s, DcpPair):
        return s.path.vertices
    return s.second_cycle.vertices


def path_edges(s) -> tuple:
    if isinstance(s, DccPair):
        return s.second_cycle.edges
    return s.path.edges


def free_vertices(s) -> tuple:
    """V(P) - V(C)."""
    if isinstance(s, Lollipop):
        return s.path.vertices[1:] if s.kind == "ordinary" else s.path.vertices
    return path_vertices(s)


def spare_edges(h: Hypergraph, s) -> list:
    """Edge ids of H' = E(H) - E(C) - E(P)."""
    used = set(s.cycle.edges) | set(path_edges(s))
    return [i for i in range(h.m) if i not in used]


# --- validation ------------------------------------------------------------


def structure_problems(h: Hypergraph, s) -> list:
    c = s.cycle
    if not validate_cycle(h, c):
        return ["cycle is not a Berge cycle"]
    cv, ce = set(c.vertices), set(c.edges)
    if isinstance(s, Lollipop):
        p = s.path
        if not validate_path(h, p):
            return ["path is not a Berge path"]
        if s.kind == "ordinary":
            if p.kind != "full" or p.vertices[0] != c.vertices[-1]:
                return ["ordinary lollipop path must start at the last cycle vertex"]
            if cv & set(p.vertices[1:]) or ce & set(p.edges):
                return ["path meets the cycle outside u_0"]
        elif s.kind == "partial":
            if p.kind != "partial" or not p.edges or p.edges[0] != c.edges[-1]:
                return ["partial lollipop path must start with the closing cycle edge"]
            if cv & set(p.vertices) or ce & set(p.edges[1:]):
                return ["path meets the cycle outside f_0"]
        else:
            return [f"unknown lollipop kind {s.kind!r}"]
        return []
    if isinstance(s, DcpPair):
        p = s.path
        if p.kind != "full" or not p.vertices or not validate_path(h, p):
            return ["path is not a Berge path"]
        if cv & set(p.vertices) or ce & set(p.edges):
            return ["cycle and path share defining elements"]
        return []
    if isinstance(s, DccPair):
        d = s.second_cycle
        if not validate_cycle(h, d):
            return ["second cycle is not a Berge cycle"]
        if cv & set(d.vertices) or ce & set(d.edges):
            return ["cycles share defining elements"]
        return []
    return [f"not a structure: {type(s).__name__}"]


def is_valid(h: Hypergraph, s) -> bool:
    return not structure_problems(h, s)


# --- ranking ---------------------------------------------------------------


def rank(h: Hypergraph, s, order: str | None = None) -> RankVector:
    """Rank vector; ``order="S"`` ranks a dcp-pair in the joint dcp/dcc order."""
    problems = structure_problems(h, s)
    if problems:
        raise InvalidStructure("; ".join(problems))
    masks = h.edge_masks
    free = free_vertices(s)
    xmask = 0
    for v in free:
        xmask |= 1 << v
    pe = set(path_edges(s))
    r3 = sum((masks[e] & xmask).bit_count() for e in s.cycle.edges if e not in pe)
    r4 = sum(1 for e in pe if e not in s.cycle.edges and masks[e] & ~xmask == 0)
    c = len(s.cycle)
    if isinstance(s, DccPair):
        return RankVector("joint", c, len(free), r3, r4, 1)
    if isinstance(s, DcpPair):
        if order == "S":
            return RankVector("joint", c, len(free), r3, r4, 0)
        return RankVector("dcp", c, len(free), r3, r4)
    return RankVector("lollipop", c, len(free), r3, r4)


# --- normalising constructors ----------------------------------------------


def ordinary_lollipop(cycle: BergeCycle, anchor: int, path_vs, path_es) -> Lollipop:
    """Rotate ``cycle`` so that ``anchor`` is its last vertex."""
    i = cycle.vertices.index(anchor)
    return Lollipop(cycle.rotated(i + 1), BergePath(tuple(path_vs), tuple(path_es), "full"), "ordinary")


def partial_lollipop(cycle: BergeCycle, shared_edge: int, path_vs, path_es) -> Lollipop:
    """Rotate ``cycle`` so that ``shared_edge`` closes it; ``path_es[0]`` is that edge."""
    i = cycle.edges.index(shared_edge)
    return Lollipop(cycle.rotated(i + 1), BergePath(tuple(path_vs), tuple(path_es), "partial"), "partial")


# --- S1 / S2 and degree flags ----------------------------------------------


def s_sets(h: Hypergraph, lol: Lollipop):
    """(S1, S2): H'-neighbours of u_l on the path, and the u_m with u_l in f_m."""
    problems = structure_problems(h, lol)
    if problems or not isinstance(lol, Lollipop):
        raise InvalidStructure("; ".join(problems) or "not a lollipop")
    pv = path_vertices(lol)
    ul = pv[-1]
    bit = 1 << ul
    masks = h.edge_masks
    nbr = 0
    for e in spare_edges(h, lol):
        if masks[e] & bit:
            nbr |= masks[e]
    s1 = frozenset(v for v in pv if v != ul and nbr >> v & 1)
    # f_m precedes u_{m+1}; for both kinds f_m is path.edges[m]
    s2 = frozenset(
        pv[m] for m, f in enumerate(lol.path.edges) if masks[f] & bit and pv[m] not in s1 and pv[m] != ul
    )
    assert not (s1 | s2) & (set(lol.cycle.vertices) - {pv[0]})
    return s1, s2


def smalldeg_flags(h: Hypergraph, lol: Lollipop, k: int) -> dict:
    """Degree counts of u_l used by the small-degree corollary, with the three checks."""
    pv = path_vertices(lol)
    ul = pv[-1]
    pe, ce = set(lol.path.edges), set(lol.cycle.edges)
    inc = h.incidence[ul]
    d_p = sum(1 for e in inc if e in pe)
    d_rest = sum(1 for e in inc if e not in pe and e not in ce)
    d_cp = sum(1 for e in inc if e in ce and e not in pe)
    return {
        "d_P": d_p,
        "d_H-C-P": d_rest,
        "d_C-P": d_cp,
        "i": d_p <= k - 1,
        "ii": d_rest <= 1 and (d_rest < 1 or h.r == k - 1),
        "iii": d_cp == 0,
    }


# --- exhaustive search for a best structure ---------------------------------


@dataclass(frozen=True)
class BestStructure:
    structure: object
    rank: RankVector
    exact: bool
    evaluations: int


def _simple_sequences(h: Hypergraph, start, allowed: int, closed: bool = False):
    """Vertex sequences inside ``allowed`` whose consecutive pairs share an edge.

    With ``start`` given, open sequences begin there (``start`` may lie
    outside ``allowed``).  With ``closed``, canonical cyclic sequences of
    length >= 2 are produced: least vertex first and, from length 3 on, the
    second vertex below the last.
    """
    pe = h.pair_edges
    n = h.n
    seq = []

    def rec(u, used):
        if closed:
            if len(seq) >= 2 and pe[u][seq[0]] and (len(seq) == 2 or seq[1] < u):
                yield tuple(seq)
        else:
            yield tuple(seq)
        for w in range(n):
            if allowed >> w & 1 and not used >> w & 1 and pe[u][w]:
                if closed and w < seq[0]:
                    continue
                seq.append(w)
                yield from rec(w, used | 1 << w)
                seq.pop()

    if start is not None:
        seq.append(start)
        yield from rec(start, 1 << start)
        return
    for a in range(n):
        if allowed >> a & 1:
            seq[:] = [a]
            yield from rec(a, 1 << a)


class _Evaluator:
    """Max-weight assignment of slots (vertex sets) to distinct edges."""

    def __init__(self, h: Hypergraph, budget: int):
        self.h = h
        self.masks = h.edge_masks
        self.big = h.m + 1
        self.budget = budget
        self.count = 0

    def solve(self, slots):
        """``slots``: list of (required mask, weight_fn or None).

        Returns (total weight, edge ids) maximising the weight, or None.
        """
        self.count += 1
        if self.count > self.budget:
            raise BudgetExhausted("structure enumeration exceeded budget", expansions=self.count)
        masks = self.masks
        cands = [[e for e, em in enumerate(masks) if em & req == req] for req, _ in slots]
        if any(not c for c in cands):
            return None
        if all(w is None for _, w in slots):
            pairs_edges = _match(cands)
            return None if pairs_edges is None else (0, pairs_edges)
        cols = sorted(set(chain.from_iterable(cands)))
        if len(cols) < len(slots):
            return None
        col = {e: j for j, e in enumerate(cols)}
        forbid = 10.0 * self.big * (self.h.n * self.h.m + 1)
        cost = np.full((len(slots), len(cols)), forbid)
        for i, (c, (_, w)) in enumerate(zip(cands, slots)):
            for e in c:
                cost[i, col[e]] = -(w(masks[e]) if w else 0)
        rows, picked = linear_sum_assignment(cost)
        if any(cost[i, j] >= forbid for i, j in zip(rows, picked)):
            return None
        edges = [cols[j] for j in picked]
        return int(round(-cost[rows, picked].sum())), edges


def _match(cands):
    owner: dict = {}
    assign = [-1] * len(cands)

    def augment(p, seen):
        for e in cands[p]:
            if e not in seen:
                seen.add(e)
                if owner.get(e) is None or augment(owner[e], seen):
                    owner[e] = p
                    assign[p] = e
                    return True
        return False

    for p in range(len(cands)):
        if not augment(p, set()):
            return None
    return assign


def _pair_mask(*vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _cycle_slots(vs, xmask, big):
    w = (lambda em: (em & xmask).bit_count() * big) if xmask else None
    return [(_pair_mask(vs[i], vs[(i + 1) % len(vs)]), w) for i in range(len(vs))]


def _inside(xmask):
    return lambda em: 1 if em & ~xmask == 0 else 0


def _upper(slots, masks) -> int:
    total = 0
    for req, w in slots:
        if w is not None:
            total += max((w(em) for em in masks if em & req == req), default=0)
    return total


class _Best:
    """Keeps the first structure with the largest key seen so far."""

    def __init__(self, ev: _Evaluator):
        self.ev = ev
        self.key = None
        self.structure = None

    def offer(self, prefix: tuple, s4, slots, build):
        big = self.ev.big
        mid = () if s4 is None else (s4,)

        def full(total):
            return prefix + (total // big,) + mid + (total % big,)

        if self.key is not None and full(_upper(slots, self.ev.masks)) <= self.key:
            return
        res = self.ev.solve(slots)
        if res is None:
            return
        total, edges = res
        key = full(total)
        if self.key is None or key > self.key:
            self.key, self.structure = key, build(edges)


def enumerate_best(h: Hypergraph, family: str, budget: int = DEFAULT_BUDGET) -> BestStructure | None:
    """A best structure of the family by exhaustive enumeration, or None if none exists.

    ``family``: "lollipop" (rules R1-R4), "dcp" (R1-R4 over dcp-pairs) or
    "dcc" (S1-S5 over dcp- and dcc-pairs together).  ``budget`` caps the
    number of assignment problems solved; when it runs out the best
    structure so far is returned with ``exact=False``.  Ties keep the first
    structure in enumeration order, which is deterministic.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    ev = _Evaluator(h, budget)
    best = _Best(ev)
    order = "S" if family == "dcc" else None
    exact = True
    try:
        if family == "lollipop":
            length = circumference(h, budget=budget).length
            if length == 0:
                return None
            _lollipops(h, iter_cycle_sequences(h, length), best)
        else:
            for length in range(min(h.n - 1, h.m), 1, -1):
                seqs = list(iter_cycle_sequences(h, length))
                if seqs:
                    break
            else:
                return None
            _pairs(h, seqs, best, with_cycles=family == "dcc")
    except BudgetExhausted:
        if best.structure is None:
            raise
        exact = False
    if best.structure is None:
        return None
    return BestStructure(best.structure, rank(h, best.structure, order), exact, ev.count)


def _lollipops(h, seqs, best: _Best):
    n, masks, big = h.n, h.edge_masks, h.m + 1
    for cyc in seqs:
        c = len(cyc)
        outside = ((1 << n) - 1) & ~_pair_mask(*cyc)
        for t in range(c):
            vs = cyc[t + 1:] + cyc[: t + 1]  # anchor vertex and shared slot come last
            for pv in _simple_sequences(h, vs[-1], outside):
                xmask = _pair_mask(*pv[1:]) if len(pv) > 1 else 0
                slots = _cycle_slots(vs, xmask, big)
                slots += [(_pair_mask(a, b), _inside(xmask)) for a, b in zip(pv, pv[1:])]

                def build(edges, vs=vs, pv=pv):
                    cyc_b = BergeCycle(vs, tuple(edges[:c]))
                    return Lollipop(cyc_b, BergePath(pv, tuple(edges[c:]), "full"), "ordinary")

                best.offer((c, len(pv) - 1), None, slots, build)
            shared = _pair_mask(vs[-1], vs[0])
            for u1 in range(n):
                if not outside >> u1 & 1 or not any(em & shared == shared and em >> u1 & 1 for em in masks):
                    continue
                for pv in _simple_sequences(h, u1, outside):
                    xmask = _pair_mask(*pv)
                    slots = _cycle_slots(vs, xmask, big)
                    # the closing cycle slot doubles as f_0, so it must also hold u_1
                    slots[-1] = (shared | 1 << u1, None)
                    slots += [(_pair_mask(a, b), _inside(xmask)) for a, b in zip(pv, pv[1:])]

                    def build(edges, vs=vs, pv=pv):
                        cyc_b = BergeCycle(vs, tuple(edges[:c]))
                        path = BergePath(pv, (edges[c - 1],) + tuple(edges[c:]), "partial")
                        return Lollipop(cyc_b, path, "partial")

                    best.offer((c, len(pv)), None, slots, build)


def _pairs(h, seqs, best: _Best, with_cycles: bool):
    n, big = h.n, h.m + 1
    s4 = 0 if with_cycles else None
    for cyc in seqs:
        c = len(cyc)
        outside = ((1 << n) - 1) & ~_pair_mask(*cyc)
        for pv in _simple_sequences(h, None, outside):
            if len(pv) >= 2 and pv[0] > pv[-1]:
                continue
            xmask = _pair_mask(*pv)
            slots = _cycle_slots(cyc, xmask, big)
            slots += [(_pair_mask(a, b), _inside(xmask)) for a, b in zip(pv, pv[1:])]

            def build(edges, pv=pv, cyc=cyc):
                return DcpPair(BergeCycle(cyc, tuple(edges[:c])), BergePath(pv, tuple(edges[c:]), "full"))

            best.offer((c, len(pv)), s4, slots, build)
        if not with_cycles:
            continue
        for pv in _simple_sequences(h, None, outside, closed=True):
            xmask = _pair_mask(*pv)
            slots = _cycle_slots(cyc, xmask, big)
            slots += [(_pair_mask(pv[i], pv[(i + 1) % len(pv)]), _inside(xmask)) for i in range(len(pv))]

            def build(edges, pv=pv, cyc=cyc):
                return DccPair(BergeCycle(cyc, tuple(edges[:c])), BergeCycle(pv, tuple(edges[c:])))

            best.offer((c, len(pv)), 1, slots, build)


# --- JSON ------------------------------------------------------------------


def structure_to_json(s) -> dict:
    if isinstance(s, Lollipop):
        return {"type": "lollipop", "kind": s.kind, "cycle": s.cycle.to_json(), "path": s.path.to_json()}
    if isinstance(s, DcpPair):
        return {"type": "dcp", "cycle": s.cycle.to_json(), "path": s.path.to_json()}
    return {"type": "dcc", "cycle": s.cycle.to_json(), "second_cycle": s.second_cycle.to_json()}


def structure_from_json(obj: dict):
    cycle = BergeCycle.from_json(obj["cycle"])
    if obj["type"] == "lollipop":
        return Lollipop(cycle, BergePath.from_json(obj["path"]), obj["kind"])
    if obj["type"] == "dcp":
        return DcpPair(cycle, BergePath.from_json(obj["path"]))
    return DccPair(cycle, BergeCycle.from_json(obj["second_cycle"]))
