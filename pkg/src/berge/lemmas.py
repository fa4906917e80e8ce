"""Counting facts about graph cycles, long segments and expanding sets.

Positions on a cycle of length ``s`` are ``0..s-1``; vertex ``i`` is
``v_i`` and edge ``j`` joins ``v_j`` and ``v_{j+1 mod s}``.  All distances
are circular: ``min(|i-j|, s-|i-j|)``.

Claim ids and their inputs:

``ver-new``       A, B vertex sets, q >= 2
``ed-new``        A, B edge sets, q >= 2
``consecpath2``   F, A, B vertex sets, q >= 2, q|F| < s
``ver-ed``        I independent vertex set, B edge set, q >= 1
``ver-ed2``       A vertex set, B edge set, q >= 1, q2 >= q-1
``ver-ver``       I independent vertex set, A vertex set, q >= 3

The exhaustive verifier runs over bitmasks with numpy and is checked against
the scalar ``check_hypotheses`` / ``claim_bound`` pair in the tests.

Two literal statements fail on small cycles (found by the verifier):

* ``ver-ed2`` with ``q = 1, q2 = 0``, e.g. s=3, A={0,1}, B={e_0,e_1,e_2}.
* ``ver-ver`` part (iii) when ``I`` is a proper subset of ``A``, e.g. s=6,
  I={0}, A={0,3}, q=3.  The least s there is ``(q-1)|I| + |A| + q - 1``.

``repaired=True`` adds the missing hypotheses (``q2 >= 1``; I not inside A
for part (iii)).  The default stays literal so the report shows the failures.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import Hypergraph
from .moves import connector_path
from .search import BergeCycle, BergePath, validate_cycle

CLAIMS = ("ver-new", "ed-new", "consecpath2", "ver-ed", "ver-ed2", "ver-ver")
DEFAULT_MAX_S = 12


@dataclass(frozen=True)
class CycleConfig:
    """One configuration on a cycle of length ``s``; unused sets stay empty."""

    s: int
    A: frozenset = frozenset()
    B: frozenset = frozenset()
    I: frozenset = frozenset()
    F: frozenset = frozenset()
    q: int = 2
    q2: int = 0

    def __post_init__(self):
        for name in ("A", "B", "I", "F"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.s < 3:
            raise ValueError(f"a graph cycle has length >= 3, got s={self.s}")
        for name in ("A", "B", "I", "F"):
            bad = [x for x in getattr(self, name) if not 0 <= x < self.s]
            if bad:
                raise ValueError(f"{name} has positions outside [0, {self.s}): {sorted(bad)}")

    def to_json(self) -> dict:
        out = {"s": self.s, "q": self.q, "q2": self.q2}
        for name in ("A", "B", "I", "F"):
            out[name] = sorted(getattr(self, name))
        return out


def cdist(s: int, i: int, j: int) -> int:
    d = abs(i - j) % s
    return min(d, s - d)


def vertex_edge_dist(s: int, i: int, j: int) -> int:
    """Distance from ``v_i`` to the ends ``{v_j, v_{j+1}}`` of edge ``e_j``."""
    return min(cdist(s, i, j), cdist(s, i, (j + 1) % s))


def _separated(s, X, Y, q) -> bool:
    return all(x == y or cdist(s, x, y) >= q for x in X for y in Y)


def _independent(s, X) -> bool:
    return all((x + 1) % s not in X for x in X)


def check_hypotheses(cfg: CycleConfig, claim: str, repaired: bool = False) -> bool:
    """Whether the distance, independence and parameter hypotheses of ``claim`` hold."""
    s, A, B, I, F, q = cfg.s, cfg.A, cfg.B, cfg.I, cfg.F, cfg.q
    if claim in ("ver-new", "ed-new"):
        # the line graph of C_s is C_s, so edge positions use the same distance
        return bool(A) and bool(B) and q >= 2 and _separated(s, A, B, q)
    if claim == "consecpath2":
        if not (A and B) or q < 2 or F & (A | B) or q * len(F) >= s:
            return False
        return _separated(s, A, B, q) and _separated(s, F, F | A | B, q)
    if claim == "ver-ed":
        if not (I and B) or q < 1 or not _independent(s, I):
            return False
        return all(vertex_edge_dist(s, i, j) >= q for i in I for j in B)
    if claim == "ver-ed2":
        q2 = cfg.q2
        if not (A and B) or q < 1 or q2 < q - 1 or q2 < (1 if repaired else 0):
            return False
        if any(vertex_edge_dist(s, i, j) < q2 for i in A for j in B):
            return False
        return all(j == k or cdist(s, j, k) >= q for j in B for k in B)
    if claim == "ver-ver":
        if not (I and A) or q < 3 or not _independent(s, I):
            return False
        if repaired and I < A:
            return False
        return _separated(s, I, A, q)
    raise ValueError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")


def claim_case(cfg: CycleConfig, claim: str) -> str:
    """Which part of the claim applies: ``"i"``, ``"ii"``, ``"iii"`` or ``""``."""
    if claim in ("ver-new", "ed-new", "consecpath2"):
        return "i" if cfg.A == cfg.B else "ii"
    if claim == "ver-ver":
        if cfg.A == cfg.I:
            return "i"
        return "ii" if cfg.A < cfg.I else "iii"
    if claim in ("ver-ed", "ver-ed2"):
        return ""
    raise ValueError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")


def claim_bound(cfg: CycleConfig, claim: str, repaired: bool = False) -> int:
    """Lower bound on ``s`` given by the claim; raises if the hypotheses fail."""
    if not check_hypotheses(cfg, claim, repaired):
        raise ValueError(f"hypotheses of {claim} fail for {cfg.to_json()}")
    A, B, I, F, q = len(cfg.A), len(cfg.B), len(cfg.I), len(cfg.F), cfg.q
    case = claim_case(cfg, claim)
    if claim in ("ver-new", "ed-new", "consecpath2"):
        base = q * A if case == "i" else A + B + 2 * q - 3
        return base + q * F
    if claim == "ver-ed":
        return 2 * I + B + 2 * (q - 1)
    if claim == "ver-ed2":
        return A + q * B + 2 * cfg.q2 - q
    if case == "i":
        return q * I
    if case == "ii":
        return 2 * I + (q - 2) * (A + 1)
    return 2 * I + A + 2 * q - 3


# ---------------------------------------------------------------------------
# exhaustive verification over bitmasks


def _rot(x, d, s):
    d %= s
    if d == 0:
        return x
    return ((x << d) | (x >> (s - d))) & ((1 << s) - 1)


def _popcount(x):
    return np.bitwise_count(x).astype(np.int64)


def _all_masks(s):
    return np.arange(1, 1 << s, dtype=np.int64)


def _canonical(masks, s):
    """Masks that are the least among their rotations."""
    least = masks.copy()
    for d in range(1, s):
        least = np.minimum(least, _rot(masks, d, s))
    return masks[least == masks]


def _cross_gap(X, Y, s, cap):
    """Least circular distance >= 1 between an element of X and a different one of Y.

    ``X`` has shape (a, 1) and ``Y`` shape (1, b) (or any broadcastable pair);
    pairs with no such elements get ``cap``.
    """
    out = np.full(np.broadcast_shapes(X.shape, Y.shape), cap, dtype=np.int64)
    for d in range(s // 2, 0, -1):
        ring = _rot(X, d, s) | _rot(X, -d, s)
        out = np.where((ring & Y) != 0, d, out)
    return out


def _edges_touched(X, s):
    """Edge mask of edges with an end in vertex mask X (edge j has ends j, j+1)."""
    return X | _rot(X, -1, s)


def _vertex_edge_gap(X, Y, s, cap):
    """Least distance from a vertex of X to an end of an edge of Y."""
    out = np.full(np.broadcast_shapes(X.shape, Y.shape), cap, dtype=np.int64)
    ball = X
    for d in range(0, s // 2 + 1):
        if d:
            ball = ball | _rot(ball, 1, s) | _rot(ball, -1, s)
        hit = (_edges_touched(ball, s) & Y) != 0
        out = np.where((out == cap) & hit, d, out)
    return out


@dataclass
class _Block:
    """Flat arrays for a family of configurations sharing one bound shape.

    Each row is a choice of sets plus the q range ``[qlo, qhi]``; the bound
    is ``c0 + c1*q``.  ``contained`` marks rows whose equality case is
    allowed (only consulted where the claim restricts equality).
    """

    sets: dict
    qlo: int
    qhi: np.ndarray
    c0: np.ndarray
    c1: np.ndarray
    case: np.ndarray  # case label per row
    contained: np.ndarray | None = None


def _flat(*arrays):
    arrays = [np.asarray(a) for a in arrays]
    shape = np.broadcast_shapes(*(a.shape for a in arrays))
    return [np.broadcast_to(a, shape).ravel() for a in arrays]


def _pair_block(s, X, Y, qhi, case_i, c0_i, c1_i, c0_ii, c1_ii, extra=None, names=("A", "B")):
    X, Y, qhi, case_i, c0_i, c1_i, c0_ii, c1_ii = _flat(X, Y, qhi, case_i, c0_i, c1_i, c0_ii, c1_ii)
    sets = {names[0]: X, names[1]: Y}
    if extra:
        sets.update({k: np.full(X.shape, v, dtype=np.int64) for k, v in extra.items()})
    return _Block(
        sets=sets,
        qlo=2,
        qhi=qhi,
        c0=np.where(case_i, c0_i, c0_ii),
        c1=np.where(case_i, c1_i, c1_ii),
        case=np.where(case_i, "i", "ii"),
        contained=((X & ~Y) == 0) | ((Y & ~X) == 0),
    )


def _blocks_new(s, repaired=False):
    """ver-new / ed-new: A up to rotation, B arbitrary (positions are vertices or edges)."""
    A = _canonical(_all_masks(s), s)[:, None]
    B = _all_masks(s)[None, :]
    qhi = np.minimum(_cross_gap(A, B, s, s), s)
    a, b = _popcount(A), _popcount(B)
    yield _pair_block(s, A, B, qhi, A == B, 0, a, a + b - 3, 2)


def _blocks_consecpath2(s, repaired=False):
    full = (1 << s) - 1
    for blk in _blocks_new(s, repaired):
        blk.sets["F"] = np.zeros_like(blk.qhi)
        yield blk
    for F in _canonical(_all_masks(s), s):
        f = int(F).bit_count()
        qff = int(_cross_gap(np.array([F]), np.array([F]), s, s)[0])
        cap = min(qff, (s - 1) // f, s)
        if cap < 2:
            continue
        near = int(F) | int(_rot(int(F), 1, s)) | int(_rot(int(F), -1, s))
        allowed = full & ~near
        if not allowed:
            continue
        subs = np.array([x for x in range(1, allowed + 1) if x & ~allowed == 0], dtype=np.int64)
        dF = _cross_gap(np.array([F]), subs, s, s)
        A, B = subs[:, None], subs[None, :]
        qhi = np.minimum(np.minimum(_cross_gap(A, B, s, s), cap), np.minimum(dF[:, None], dF[None, :]))
        a, b = _popcount(A), _popcount(B)
        yield _pair_block(s, A, B, qhi, A == B, 0, a + f, a + b - 3, 2 + f, extra={"F": int(F)})


def _independent_masks(s):
    m = _all_masks(s)
    return m[(m & _rot(m, 1, s)) == 0]


def _blocks_ver_ed(s, repaired=False):
    I = _canonical(_independent_masks(s), s)[:, None]
    B = _all_masks(s)[None, :]
    qhi = np.minimum(_vertex_edge_gap(I, B, s, s), s)
    i, b = _popcount(I), _popcount(B)
    I, B, qhi, i, b = _flat(I, B, qhi, i, b)
    yield _Block({"I": I, "B": B}, 1, qhi, 2 * i + b - 2, np.full(qhi.shape, 2), np.full(qhi.shape, ""))


def _blocks_ver_ver(s, repaired=False):
    I = _canonical(_independent_masks(s), s)[:, None]
    A = _all_masks(s)[None, :]
    qhi = np.minimum(_cross_gap(I, A, s, s), s)
    i, a = _popcount(I), _popcount(A)
    I, A, qhi, i, a = _flat(I, A, qhi, i, a)
    same = A == I
    inside = ((A & ~I) == 0) & ~same
    case = np.where(same, "i", np.where(inside, "ii", "iii"))
    if repaired:
        qhi = np.where(~same & ((I & ~A) == 0), 0, qhi)
    c0 = np.where(same, 0, np.where(inside, 2 * i - 2 * (a + 1), 2 * i + a - 3))
    c1 = np.where(same, i, np.where(inside, a + 1, 2))
    yield _Block({"I": I, "A": A}, 3, qhi, c0, c1, case)


def _blocks_ver_ed2(s, repaired=False):
    """Rows per fixed q: the free parameter is q2 in ``[max(q-1, 0), Q2]``."""
    A = _canonical(_all_masks(s), s)[:, None]
    B = _all_masks(s)[None, :]
    q2hi = np.minimum(_vertex_edge_gap(A, B, s, s), s)
    sep = np.minimum(_cross_gap(B, B, s, s), s)
    a, b = _popcount(A), _popcount(B)
    A, B, q2hi, sep, a, b = _flat(A, B, q2hi, sep, a, b)
    for q in range(1, s + 1):
        ok = sep >= q
        yield _Block(
            {"A": A[ok], "B": B[ok], "q": np.full(int(ok.sum()), q)},
            max(q - 1, 1 if repaired else 0),
            q2hi[ok],
            a[ok] + q * (b[ok] - 1),
            np.full(int(ok.sum()), 2),
            np.full(int(ok.sum()), ""),
        )


_FAMILIES = {
    "ver-new": _blocks_new,
    "ed-new": _blocks_new,
    "consecpath2": _blocks_consecpath2,
    "ver-ed": _blocks_ver_ed,
    "ver-ed2": _blocks_ver_ed2,
    "ver-ver": _blocks_ver_ver,
}
# claims whose part (ii) allows equality only when one set contains the other
_EQUALITY_RESTRICTED = ("ver-new", "ed-new", "consecpath2")


def _row_config(s, claim, blk, row, param) -> CycleConfig:
    sets = {k: _bits(v[row]) for k, v in blk.sets.items() if k != "q"}
    if claim == "ver-ed2":
        return CycleConfig(s, q=int(blk.sets["q"][row]), q2=param, **sets)
    return CycleConfig(s, q=param, **sets)


def _bits(x) -> list:
    x = int(x)
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _least_param_above(c0, c1, s):
    """Least integer p with c0 + c1*p > s (c1 > 0)."""
    return (s - c0) // c1 + 1


def _tally(s, claim, keep, repaired=False):
    out = {"configurations": 0, "violations": 0, "equality_witnesses": 0,
           "equality_condition_violations": 0, "by_case": {}, "equality_by_case": {},
           "violation_examples": [], "equality_examples": []}
    for blk in _FAMILIES[claim](s, repaired):
        lo, hi, c0, c1 = blk.qlo, blk.qhi, blk.c0, blk.c1
        width = np.maximum(hi - lo + 1, 0)
        out["configurations"] += int(width.sum())
        for label in np.unique(blk.case):
            if label:
                out["by_case"][str(label)] = out["by_case"].get(str(label), 0) + int(width[blk.case == label].sum())
        # violations: parameters p in [lo, hi] with c0 + c1*p > s
        first_bad = np.maximum(_least_param_above(c0, c1, s), lo)
        bad = np.maximum(hi - first_bad + 1, 0)
        out["violations"] += int(bad.sum())
        for row in np.flatnonzero(bad)[: keep - len(out["violation_examples"])]:
            cfg = _row_config(s, claim, blk, row, int(first_bad[row]))
            out["violation_examples"].append({"config": cfg.to_json(), "case": claim_case(cfg, claim),
                                              "bound": claim_bound(cfg, claim, repaired)})
        # equality: the unique p with c0 + c1*p == s, if it is in range
        p_eq = (s - c0) // c1
        eq = ((s - c0) % c1 == 0) & (p_eq >= lo) & (p_eq <= hi)
        out["equality_witnesses"] += int(eq.sum())
        for label in np.unique(blk.case):
            if label:
                n_eq = int((eq & (blk.case == label)).sum())
                out["equality_by_case"][str(label)] = out["equality_by_case"].get(str(label), 0) + n_eq
        if claim in _EQUALITY_RESTRICTED:
            eq_ii = eq & (blk.case == "ii")
            for row in np.flatnonzero(eq_ii)[: keep - len(out["equality_examples"])]:
                cfg = _row_config(s, claim, blk, row, int(p_eq[row]))
                out["equality_examples"].append({"config": cfg.to_json(), "bound": claim_bound(cfg, claim, repaired)})
            broken = eq_ii & ~blk.contained
            out["equality_condition_violations"] += int(broken.sum())
            out["violations"] += int(broken.sum())
            for row in np.flatnonzero(broken)[: keep - len(out["violation_examples"])]:
                cfg = _row_config(s, claim, blk, row, int(p_eq[row]))
                out["violation_examples"].append({"config": cfg.to_json(), "case": "ii-equality",
                                                  "bound": claim_bound(cfg, claim, repaired)})
    return out


def _merge(total, part, keep):
    for key in ("configurations", "violations", "equality_witnesses", "equality_condition_violations"):
        total[key] += part[key]
    for key in ("by_case", "equality_by_case"):
        for k, v in part[key].items():
            total[key][k] = total[key].get(k, 0) + v
    for key in ("violation_examples", "equality_examples"):
        total[key] = (total[key] + part[key])[:keep]


MAX_S_CEILING = 16


def verify_claims_exhaustive(max_s: int = DEFAULT_MAX_S, claims=CLAIMS, keep: int = 20, threads: int = 1,
                             repaired: bool = False) -> dict:
    """Check every claim on every configuration with ``3 <= s <= max_s``.

    The first set of each claim is enumerated up to rotation, the others in
    full.  Distance parameters run from the claim's minimum up to ``s``.
    The report is deterministic (no timing), ``keep`` caps the example lists.
    ``repaired`` adds the two missing hypotheses listed in the module notes.
    """
    if not 3 <= max_s <= MAX_S_CEILING:
        raise ValueError(f"max_s must be in [3, {MAX_S_CEILING}], got {max_s}")
    for claim in claims:
        if claim not in _FAMILIES:
            raise ValueError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    tasks = [(claim, s) for claim in claims for s in range(3, max_s + 1)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda t: _tally(t[1], t[0], keep, repaired), tasks))
    else:
        parts = [_tally(s, claim, keep, repaired) for claim, s in tasks]
    report = {"max_s": max_s, "parameter_ceiling": "q, q2 <= s", "repaired": repaired, "claims": {}}
    for (claim, s), part in zip(tasks, parts):
        total = report["claims"].setdefault(claim, {
            "configurations": 0, "violations": 0, "equality_witnesses": 0,
            "equality_condition_violations": 0, "by_case": {}, "equality_by_case": {},
            "violation_examples": [], "equality_examples": []})
        _merge(total, part, keep)
    for total in report["claims"].values():
        total["by_case"] = dict(sorted(total["by_case"].items()))
        total["equality_by_case"] = dict(sorted(total["equality_by_case"].items()))
    report["total_configurations"] = sum(c["configurations"] for c in report["claims"].values())
    report["total_violations"] = sum(c["violations"] for c in report["claims"].values())
    return report


# ---------------------------------------------------------------------------
# long segments


def _anchor_position(c: BergeCycle, anchor):
    kind, x = anchor
    seq = c.vertices if kind == "v" else c.edges if kind == "e" else None
    if seq is None:
        raise ValueError(f"anchor kind must be 'v' or 'e', got {kind!r}")
    if x not in seq:
        raise ValueError(f"anchor {anchor} is not on the cycle")
    return kind, seq.index(x)


def segment_guarantee(c_len: int, kinds) -> int:
    """Guaranteed vertex count of a long segment for the anchor kinds."""
    edges = sorted(kinds).count("e")
    return -(-(c_len + 2 - edges) // 2)


def long_segment(c: BergeCycle, anchors) -> tuple:
    """The longer of the two arcs joining the anchors, as a vertex sequence.

    ``anchors`` are two pairs ``("v", vertex)`` or ``("e", edge)`` on ``c``.
    Anchor edges are not used; an arc between an edge and something else
    starts at the end of the edge facing it.  Ties go to the forward arc.
    """
    (k1, i), (k2, j) = (_anchor_position(c, a) for a in anchors)
    if (k1, i) == (k2, j):
        raise ValueError("the two anchors must differ")
    n, vs = len(c), c.vertices

    def arc(a, b):
        # vertices from position a forward to position b inclusive
        return tuple(vs[(a + t) % n] for t in range((b - a) % n + 1))

    # forward arc leaves anchor 1 going up, backward arc leaves it going down
    start_fwd = (i + 1) % n if k1 == "e" else i
    start_bwd = i
    end_fwd = j
    end_bwd = (j + 1) % n if k2 == "e" else j
    forward = arc(start_fwd, end_fwd)
    backward = arc(end_bwd, start_bwd)[::-1]
    return forward if len(forward) >= len(backward) else backward


# ---------------------------------------------------------------------------
# expanding sets


@dataclass(frozen=True)
class ExpandingResult:
    expanding: bool
    paths: dict  # (v_i, v_j) -> BergePath for each connected pair
    missing: tuple  # pairs with no connector path


def _check_cycle_context(h, c, u, w):
    if not validate_cycle(h, c):
        raise ValueError("c is not a Berge cycle of h")
    if u in c.vertices or not 0 <= u < h.n:
        raise ValueError(f"u={u} must be a vertex of h off the cycle")
    extra = set(w) - set(c.vertices)
    if extra:
        raise ValueError(f"W has vertices off the cycle: {sorted(extra)}")


def is_expanding(h: Hypergraph, c: BergeCycle, u: int, w) -> ExpandingResult:
    """Whether every pair of ``w`` is joined by a path avoiding ``E(c)`` with
    internal vertices off ``V(c) + {u}``; paths are found pairwise by BFS."""
    _check_cycle_context(h, c, u, w)
    w = sorted(set(w))
    paths, missing = {}, []
    for x_idx, a in enumerate(w):
        for b in w[x_idx + 1:]:
            found = connector_path(h, c, u, a, b)
            if found is None:
                missing.append((a, b))
            else:
                inner, es = found
                paths[(a, b)] = BergePath((a,) + inner + (b,), es)
    return ExpandingResult(not missing, paths, tuple(missing))


def _interval_count(members, n) -> int:
    """Maximal runs of consecutive cycle positions; a full circle is one run."""
    if not members:
        return 0
    if len(members) == n:
        return 1
    return sum(1 for p in members if (p - 1) % n not in members)


@dataclass(frozen=True)
class No3Result:
    b: int
    q: int  # intervals formed by the cycle edges containing u
    q2: int  # intervals formed by W
    w_size: int
    bound_i: bool  # |W| <= c - (b + q) + 2
    bound_ii: bool  # b <= c - (|W| + q2) + 2

    def to_json(self) -> dict:
        return dict(self.__dict__)


def no3_bounds(h: Hypergraph, c: BergeCycle, u: int, w) -> No3Result:
    """Evaluate both counting bounds for an expanding set ``w`` of ``(u, c)``.

    They are only guaranteed when ``c`` is a longest cycle; the caller
    certifies that (for instance with ``circumference``).
    """
    res = is_expanding(h, c, u, w)
    if not res.expanding:
        raise ValueError(f"W is not expanding; unconnected pairs {list(res.missing)}")
    n = len(c)
    masks = h.edge_masks
    b_pos = {i for i, e in enumerate(c.edges) if masks[e] >> u & 1}
    w_pos = {c.vertices.index(x) for x in set(w)}
    b, q, q2, size = len(b_pos), _interval_count(b_pos, n), _interval_count(w_pos, n), len(w_pos)
    return No3Result(b, q, q2, size, size <= n - (b + q) + 2, b <= n - (size + q2) + 2)
