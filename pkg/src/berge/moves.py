"""Improvement moves on lollipops and cycle pairs, and a local-search driver.

Each move builds a candidate from an explicit substitution (path extension,
edge swap, splicing part of the path into the cycle, rotations, and the
expanding-set reroute) and is kept only if it validates and either lengthens
the cycle or strictly raises the rank.  Neutral re-rootings are returned
only on request; the driver uses them to diversify.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .core import Hypergraph
from .search import (
    BergeCycle,
    BergePath,
    NoCycleError,
    cycle_from_vertices,
    iter_cycle_sequences,
    validate_cycle,
)
from .structures import (
    DccPair,
    DcpPair,
    Lollipop,
    compare,
    free_vertices,
    is_valid,
    rank,
    spare_edges,
    structure_to_json,
)

MOVE_ORDER = ("m1", "m8", "m3", "m2", "m6", "m5", "m7", "m4")


class Move(NamedTuple):
    name: str
    result: object  # structure or BergeCycle
    kind: str  # "longer", "rank" or "neutral"


@dataclass
class _Chain:
    """A path inside a structure: ``vs[i]`` and ``vs[i+1]`` share ``es[i]``."""

    vs: tuple
    es: tuple
    free_from: int  # vs[free_from:] avoid the cycle


def _chains(s) -> list:
    if isinstance(s, Lollipop):
        if s.kind == "ordinary":
            return [_Chain(s.path.vertices, s.path.edges, 1)]
        return [_Chain(s.path.vertices, s.path.edges[1:], 0)]
    if isinstance(s, DcpPair):
        return [_Chain(s.path.vertices, s.path.edges, 0)]
    d = s.second_cycle
    out = []
    for j in range(len(d)):
        # open the second cycle at its edge j
        r = d.rotated(j + 1)
        out.append(_Chain(r.vertices, r.edges[:-1], 0))
    return out


def _with_path(s, vs, es):
    """Same structure type and cycle, new path (vertex and edge lists as in _chains)."""
    if isinstance(s, Lollipop):
        if s.kind == "ordinary":
            return Lollipop(s.cycle, BergePath(tuple(vs), tuple(es), "full"), "ordinary")
        return Lollipop(s.cycle, BergePath(tuple(vs), (s.path.edges[0],) + tuple(es), "partial"), "partial")
    return DcpPair(s.cycle, BergePath(tuple(vs), tuple(es), "full"))


def _with_cycle_edges(s, es):
    cyc = BergeCycle(s.cycle.vertices, tuple(es))
    if isinstance(s, Lollipop):
        return Lollipop(cyc, s.path, s.kind)
    if isinstance(s, DcpPair):
        return DcpPair(cyc, s.path)
    return DccPair(cyc, s.second_cycle)


class _Context:
    def __init__(self, h: Hypergraph, s, order):
        self.h = h
        self.s = s
        self.order = order
        self.masks = h.edge_masks
        self.cyc = s.cycle
        self.c = len(s.cycle)
        self.cmask = sum(1 << v for v in s.cycle.vertices)
        self.spare = spare_edges(h, s)
        self.base = rank(h, s, order)
        self.xmask = sum(1 << v for v in free_vertices(s))


def improvement_moves(h: Hypergraph, s, order: str | None = None, include_neutral: bool = False, first: bool = False) -> list:
    """Moves that lengthen the cycle or strictly improve the rank of ``s``.

    ``order="S"`` ranks dcp-pairs jointly with dcc-pairs (enables m8); dcc
    pairs always use that order.  With ``include_neutral`` rank-preserving
    re-rootings (m4, and m5 when it does not gain) are appended with kind
    "neutral".  With ``first`` the list stops at the first improving move.
    """
    if isinstance(s, DccPair):
        order = "S"
    ctx = _Context(h, s, order)
    out: list = []
    seen: set = set()

    def emit(name, cand) -> bool:
        if cand is None or cand in seen:
            return False
        seen.add(cand)
        if isinstance(cand, BergeCycle):
            if len(cand) > ctx.c and validate_cycle(h, cand):
                out.append(Move(name, cand, "longer"))
                return True
            return False
        if not is_valid(h, cand):
            return False
        cmp = compare(rank(h, cand, order), ctx.base)
        if cmp > 0:
            out.append(Move(name, cand, "rank"))
            return True
        if cmp == 0 and include_neutral and name in ("m4", "m5"):
            out.append(Move(name, cand, "neutral"))
        return False

    generators = [
        ("m1", _m1),
        ("m8", _m8),
        ("m3", _m3),
        ("m2", _splices),
        ("m5", _m5),
        ("m7", _m7),
        ("m4", _m4),
    ]
    for name, gen in generators:
        if name == "m4" and not include_neutral:
            continue
        for move_name, cand in gen(ctx):
            if emit(move_name, cand) and first:
                return out
    return out


# --- m1: path extension ------------------------------------------------------


def _m1(ctx: _Context):
    s, masks = ctx.s, ctx.masks
    if isinstance(s, DccPair):
        return
    if isinstance(s, Lollipop) and s.ell == 0:
        # a trivial lollipop may grow from any cycle vertex, or into a partial one
        cyc = ctx.cyc
        for t, v in enumerate(cyc.vertices):
            for g in ctx.spare:
                if masks[g] >> v & 1:
                    for y in _bits(masks[g] & ~ctx.cmask):
                        yield "m1", Lollipop(cyc.rotated(t + 1), BergePath((v, y), (g,), "full"), "ordinary")
        for t, e in enumerate(cyc.edges):
            for y in _bits(masks[e] & ~ctx.cmask):
                yield "m1", Lollipop(cyc.rotated(t + 1), BergePath((y,), (e,), "partial"), "partial")
        return
    (chain,) = _chains(s)
    ends = [chain]
    if isinstance(s, DcpPair) and len(chain.vs) > 1:
        ends.append(_Chain(chain.vs[::-1], chain.es[::-1], 0))
    for ch in ends:
        u = ch.vs[-1]
        taken = ctx.cmask | sum(1 << v for v in ch.vs)
        for g in ctx.spare:
            if masks[g] >> u & 1:
                for y in _bits(masks[g] & ~taken):
                    yield "m1", _with_path(s, ch.vs + (y,), ch.es + (g,))


# --- m8: dcp -> dcc closure ----------------------------------------------------


def _m8(ctx: _Context):
    s = ctx.s
    if ctx.order != "S" or not isinstance(s, DcpPair) or len(s.path.vertices) < 2:
        return
    vs = s.path.vertices
    need = (1 << vs[0]) | (1 << vs[-1])
    for g in ctx.spare:
        if ctx.masks[g] & need == need:
            yield "m8", DccPair(s.cycle, BergeCycle(vs, s.path.edges + (g,)))


# --- m3: edge swaps ------------------------------------------------------------


def _m3(ctx: _Context):
    s, masks, x = ctx.s, ctx.masks, ctx.xmask
    cyc = ctx.cyc
    c = ctx.c
    skip = c - 1 if isinstance(s, Lollipop) and s.kind == "partial" else None
    for t in range(c):
        if t == skip:
            continue
        need = (1 << cyc.vertices[t]) | (1 << cyc.vertices[(t + 1) % c])
        have = (masks[cyc.edges[t]] & x).bit_count()
        for g in ctx.spare:
            if masks[g] & need == need and (masks[g] & x).bit_count() > have:
                es = list(cyc.edges)
                es[t] = g
                yield "m3", _with_cycle_edges(s, es)
    if isinstance(s, DccPair):
        d = s.second_cycle
        for t in range(len(d)):
            need = (1 << d.vertices[t]) | (1 << d.vertices[(t + 1) % len(d)])
            if masks[d.edges[t]] & ~x == 0:
                continue
            for g in ctx.spare:
                if masks[g] & need == need and masks[g] & ~x == 0:
                    es = list(d.edges)
                    es[t] = g
                    yield "m3", DccPair(s.cycle, BergeCycle(d.vertices, tuple(es)))
        return
    (chain,) = _chains(s)
    for i, f in enumerate(chain.es):
        if masks[f] & ~x == 0:
            continue
        need = (1 << chain.vs[i]) | (1 << chain.vs[i + 1])
        for g in ctx.spare:
            if masks[g] & need == need and masks[g] & ~x == 0:
                es = list(chain.es)
                es[i] = g
                yield "m3", _with_path(s, chain.vs, es)


# --- m2 / m6: splicing a stretch of the path into the cycle ---------------------


def _splices(ctx: _Context):
    """Replace the cycle arc between two connectors by a stretch of the path.

    A connector joins a free path vertex u to the cycle either through a
    cycle edge containing u (edge connector) or through a non-cycle edge
    containing u and a cycle vertex (vertex connector).  The new cycle runs
    along C from the start attachment to the end attachment, then through
    the connectors and the path stretch.  Keeping all of C is the detour
    case (m2), dropping an arc is the splice case (m6).
    """
    h, masks, cyc, c = ctx.h, ctx.masks, ctx.cyc, ctx.c
    cvs, ces = cyc.vertices, cyc.edges
    pos = {v: i for i, v in enumerate(cvs)}
    ce = set(ces)
    others = [g for g in range(h.m) if g not in ce]
    for chain in _chains(ctx.s):
        vs, es = chain.vs, chain.es
        # per free index: list of (end attachment q, start attachment p, edge)
        conns = {}
        for a in range(chain.free_from, len(vs)):
            u = vs[a]
            ends, starts = [], []
            for t, e in enumerate(ces):
                if masks[e] >> u & 1:
                    ends.append((t, e))  # v_t --e_t-- u
                    starts.append(((t + 1) % c, e))  # u --e_t-- v_{t+1}
            for g in others:
                if masks[g] >> u & 1:
                    for v in _bits(masks[g] & ctx.cmask):
                        ends.append((pos[v], g))
                        starts.append((pos[v], g))
            conns[a] = (ends, starts)
        idx = range(chain.free_from, len(vs))
        for a in idx:
            ends = conns[a][0]
            if not ends:
                continue
            for b in idx:
                starts = conns[b][1]
                seg = abs(b - a) + 1
                if a <= b:
                    seg_vs = vs[a:b + 1]
                    seg_es = es[a:b]
                else:
                    seg_vs = vs[b:a + 1][::-1]
                    seg_es = es[b:a][::-1]
                seg_set = set(seg_es)
                for q, g1 in ends:
                    if g1 in seg_set:
                        continue
                    for p, g2 in starts:
                        if g2 == g1 or g2 in seg_set:
                            continue
                        arc = (q - p) % c + 1
                        if arc + seg <= c:
                            continue
                        arc_vs = tuple(cvs[(p + i) % c] for i in range(arc))
                        arc_es = tuple(ces[(p + i) % c] for i in range(arc - 1))
                        if g1 in arc_es or g2 in arc_es:
                            continue
                        name = "m2" if arc == c else "m6"
                        yield name, BergeCycle(arc_vs + seg_vs, arc_es + (g1,) + tuple(seg_es) + (g2,))


# --- m5 / m4: rotations of the path -------------------------------------------


def _rotation_chains(s):
    if isinstance(s, DccPair):
        return []
    (chain,) = _chains(s)
    out = [(chain, False)]
    if isinstance(s, DcpPair) and len(chain.vs) > 1:
        out.append((_Chain(chain.vs[::-1], chain.es[::-1], 0), True))
    return out


def _m5(ctx: _Context):
    """Rotate the path end through an H'-edge g containing u_l and u_m."""
    masks, s = ctx.masks, ctx.s
    for chain, _ in _rotation_chains(s):
        vs, es = chain.vs, chain.es
        last = len(vs) - 1
        u = vs[-1]
        for g in ctx.spare:
            if not masks[g] >> u & 1:
                continue
            for m in range(last - 1):
                if masks[g] >> vs[m] & 1:
                    yield "m5", _with_path(s, vs[: m + 1] + vs[m + 1:][::-1], es[:m] + (g,) + es[m + 1:][::-1])


def _m4(ctx: _Context):
    """Re-root the path end through a path edge f_m containing u_l."""
    masks, s = ctx.masks, ctx.s
    for chain, _ in _rotation_chains(s):
        vs, es = chain.vs, chain.es
        last = len(vs) - 1
        u = vs[-1]
        for m in range(last - 1):
            if masks[es[m]] >> u & 1:
                yield "m4", _with_path(s, vs[: m + 1] + vs[m + 1:][::-1], es[: m + 1] + es[m + 1:][::-1])
        if isinstance(s, Lollipop) and s.kind == "partial" and last >= 1 and masks[s.path.edges[0]] >> u & 1:
            # f_0 itself holds u_l: the path may start f_0, u_l, ..., u_1
            yield "m4", Lollipop(s.cycle, BergePath(vs[::-1], (s.path.edges[0],) + es[::-1], "partial"), "partial")


# --- m7: expanding-set reroute --------------------------------------------------


def connector_path(h: Hypergraph, cyc: BergeCycle, u: int, a: int, b: int, banned_edges=()):
    """Shortest a,b Berge path avoiding cycle edges, with internal vertices off C and u.

    Returns (internal vertices, edges) or None.
    """
    masks = h.edge_masks
    cmask = sum(1 << v for v in cyc.vertices) | (1 << u)
    blocked = set(cyc.edges) | set(banned_edges)
    prev = {("v", a): None}
    queue = deque([("v", a)])
    while queue:
        node = queue.popleft()
        kind, x = node
        if kind == "v":
            for e in h.incidence[x]:
                if e not in blocked and ("e", e) not in prev:
                    prev[("e", e)] = node
                    queue.append(("e", e))
            continue
        for y in _bits(masks[x]):
            nxt = ("v", y)
            if nxt in prev:
                continue
            if y == b:
                prev[nxt] = node
                verts, edges = [], []
                cur = prev[nxt]
                while cur is not None:
                    if cur[0] == "e":
                        edges.append(cur[1])
                    elif cur[1] != a:
                        verts.append(cur[1])
                    cur = prev[cur]
                return tuple(verts[::-1]), tuple(edges[::-1])
            if cmask >> y & 1:
                continue
            prev[nxt] = node
            queue.append(nxt)
    return None


def _m7(ctx: _Context):
    """u sits in cycle edges e_i and e_j; reroute v_i..v_j through a connector R."""
    h, masks = ctx.h, ctx.masks
    for base in (ctx.cyc, ctx.cyc.reversed()):
        vs, es = base.vertices, base.edges
        c = len(vs)
        for u in _bits(ctx.xmask):
            slots = [t for t in range(c) if masks[es[t]] >> u & 1]
            for x, i in enumerate(slots):
                for j in slots[x + 1:]:
                    r = connector_path(h, base, u, vs[i], vs[j])
                    if r is None:
                        continue
                    inner, r_es = r
                    new_vs = vs[: i + 1] + inner + vs[i + 1: j + 1][::-1] + (u,) + vs[j + 1:]
                    new_es = es[:i] + r_es + es[i + 1: j][::-1] + (es[i], es[j]) + es[j + 1:]
                    yield "m7", BergeCycle(new_vs, new_es)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --- driver ---------------------------------------------------------------------


@dataclass
class HeuristicRun:
    cycle: BergeCycle
    lengths: list = field(default_factory=list)  # best length after each improvement
    restarts: int = 0
    evaluations: int = 0
    stall: dict | None = None  # best-ranked structure of the last stalled climb

    def to_json(self) -> dict:
        return {
            "cycle": self.cycle.to_json(),
            "lengths": list(self.lengths),
            "restarts": self.restarts,
            "evaluations": self.evaluations,
            "stall": self.stall,
        }


DEFAULT_RESTARTS = 8
DEFAULT_CLIMB_EVALUATIONS = 400


def seed_cycle(h: Hypergraph, rng: random.Random):
    """A random maximal Berge path closed into the longest cycle it allows."""
    n = h.n
    pe = h.pair_edges
    path, edges = [rng.randrange(n)], []
    while True:
        u = path[-1]
        opts = [(w, e) for w in range(n) if w not in path for e in pe[u][w] if e not in edges]
        if not opts:
            break
        w, e = rng.choice(opts)
        path.append(w)
        edges.append(e)
    for span in range(len(path) - 1, 0, -1):
        for i in range(len(path) - span):
            j = i + span
            closing = [e for e in pe[path[i]][path[j]] if e not in edges[i:j]]
            if closing:
                return BergeCycle(tuple(path[i:j + 1]), tuple(edges[i:j]) + (closing[0],))
    # the random path closes nowhere: take the shortest cycle there is
    for length in range(2, min(h.n, h.m) + 1):
        for seq in iter_cycle_sequences(h, length):
            return cycle_from_vertices(h, seq)
    return None


def _climb_structures(h: Hypergraph, cyc: BergeCycle) -> list:
    out = [Lollipop(cyc.rotated(t + 1), BergePath((v,), (), "full"), "ordinary") for t, v in enumerate(cyc.vertices)]
    cset = set(cyc.vertices)
    out += [DcpPair(cyc, BergePath((v,), (), "full")) for v in range(h.n) if v not in cset]
    return out


def _climb(h, cyc, rng, cap, run):
    """Explore structures on the current cycle until a longer cycle turns up.

    Returns the final cycle and a dump of the best-ranked lollipop seen on
    it when the exploration stalls below the trivial upper bound.
    """
    upper = min(h.n, h.m)
    while len(cyc) < upper:
        frontier = deque(_climb_structures(h, cyc))
        seen = set(frontier)
        best_s, best_r = None, None
        longer = None
        spent = 0
        while frontier and spent < cap:
            s = frontier.popleft()
            spent += 1
            run.evaluations += 1
            if isinstance(s, Lollipop):
                r = rank(h, s)
                if best_r is None or compare(r, best_r) > 0:
                    best_s, best_r = s, r
            moves = improvement_moves(h, s, order="S", include_neutral=True)
            grown = [mv.result for mv in moves if mv.kind == "longer"]
            if grown:
                longer = max(grown, key=len)
                break
            fresh = [mv for mv in moves if mv.result not in seen]
            rng.shuffle(fresh)
            for mv in fresh:
                seen.add(mv.result)
                if mv.kind == "rank":
                    frontier.appendleft(mv.result)
                else:
                    frontier.append(mv.result)
        if longer is None:
            stall = {
                "structure": structure_to_json(best_s),
                "rank": best_r.to_json(),
                "cycle_length": len(cyc),
                "explored": spent,
            }
            return cyc, stall
        cyc = longer
        if len(cyc) > len(run.cycle):
            run.cycle = cyc
            run.lengths.append(len(cyc))
    return cyc, None


def long_cycle_search(h: Hypergraph, seed=0, budget: int = DEFAULT_RESTARTS, climb_cap: int = DEFAULT_CLIMB_EVALUATIONS) -> HeuristicRun:
    """Local search for a long Berge cycle; ``budget`` is the number of restarts.

    The reported best cycle never gets shorter during a run.  If the run
    ends below min(n, m), ``stall`` holds the best-ranked lollipop of the
    last climb that stalled at the final length.
    """
    rng = random.Random(seed)
    upper = min(h.n, h.m)
    run = None
    for attempt in range(max(1, budget)):
        cyc = seed_cycle(h, rng)
        if cyc is None:
            raise NoCycleError("the hypergraph has no Berge cycle")
        if run is None:
            run = HeuristicRun(cyc, [len(cyc)])
        elif len(cyc) > len(run.cycle):
            run.cycle = cyc
            run.lengths.append(len(cyc))
        run.restarts = attempt
        cyc, stall = _climb(h, cyc, rng, climb_cap, run)
        if len(cyc) == len(run.cycle) and stall is not None:
            run.stall = stall
        if len(run.cycle) >= upper:
            run.stall = None
            break
    return run


def find_long_cycle(h: Hypergraph, seed=0, budget: int = DEFAULT_RESTARTS) -> BergeCycle:
    return long_cycle_search(h, seed, budget).cycle
