"""Batch verification of the circumference theorems on sampled instances.

Every instance gets its own RNG seeded by the string
``"{seed}:{theorem}:{n}:{r}:{k}:{i}"``, so a cell's instances do not depend
on the order cells run in or on the thread count.  Reports carry no wall
time and serialize with sorted keys, so one config gives one byte string.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from math import comb

from .connectivity import Graph, is_biconnected, is_k_connected
from .core import Hypergraph, min_degree, validate
from .lemmas import DEFAULT_MAX_S, is_expanding, no3_bounds, verify_claims_exhaustive
from .moves import DEFAULT_RESTARTS, long_cycle_search
from .sampling import SamplingError, random_rgraph
from .search import DEFAULT_BUDGET, circumference, validate_cycle
from .structures import enumerate_best, rank, structure_to_json

THEOREMS = ("theorem19", "dirac", "jackson-cor", "mainold2", "cycle-lemmas")
HOLDS, VIOLATION, INCONCLUSIVE, NOT_APPLICABLE = "holds", "violation", "inconclusive", "not-applicable"


# ---------------------------------------------------------------------------
# hypotheses


def _uniform(h: Hypergraph, r: int) -> bool:
    return h.r == r and all(len(e) == r for e in h.edges)


def _hypotheses(h: Hypergraph, k, theorem: str):
    """(bound, failed hypotheses, facts) for one instance."""
    n, m, r = h.n, h.m, h.r
    delta = min_degree(h)
    facts = {"n": n, "m": m, "r": r, "k": k, "delta": delta}
    failed = []
    if theorem == "theorem19":
        if not _uniform(h, r) or r < 2:
            failed.append("not uniform")
        if k is None or not 3 <= k <= r + 1 <= n:
            failed.append("needs 3 <= k <= r+1 <= n")
        if k is not None and delta < k:
            failed.append("delta < k")
        two = is_k_connected(h, 2)
        facts["two_connected"] = two
        if not two:
            failed.append("not 2-connected")
        bound = None if k is None else min(2 * k, n, m)
    elif theorem == "dirac":
        if not _uniform(h, 2):
            failed.append("not a graph")
        if k is None or not 2 <= k <= n:
            failed.append("needs n >= k >= 2")
        if k is not None and delta < k:
            failed.append("delta < k")
        two = n >= 3 and is_biconnected(Graph.from_edges(n, h.edges))
        facts["two_connected"] = two
        if not two:
            failed.append("not 2-connected")
        bound = None if k is None else min(2 * k, n)
    elif theorem == "jackson-cor":
        if not _uniform(h, r) or r < 2:
            failed.append("not uniform")
        if k is None or not 2 <= k <= r - 1:
            failed.append("needs 2 <= k <= r-1")
        if k is not None and delta < k + 1:
            failed.append("delta < k+1")
        two = is_k_connected(h, 2)
        facts["two_connected"] = two
        if not two:
            failed.append("not 2-connected")
        bound = None if k is None else min(2 * k, n, m)
    elif theorem == "mainold2":
        t = (n - 1) // 2
        if not _uniform(h, r):
            failed.append("not uniform")
        if not 3 <= r < n:
            failed.append("needs 3 <= r < n")
        case_a = r <= t and delta >= comb(t, r - 1) + 1
        case_b = 2 * r >= n and delta >= r
        facts["case"] = "a" if case_a else "b" if case_b else None
        if not (case_a or case_b):
            failed.append("neither degree condition holds")
        bound = n
    else:
        raise ValueError(f"unknown theorem {theorem!r}; known: {', '.join(THEOREMS)}")
    facts["bound"] = bound
    return bound, failed, facts


def verify_theorem(h: Hypergraph, k, theorem: str, budget: int = DEFAULT_BUDGET) -> dict:
    """One record: hypotheses first, then the circumference against the bound.

    ``holds`` needs a validated witness cycle at least as long as the bound.
    ``violation`` needs a completed exhaustive search below the bound (the
    search is then repeated with twice the budget).  Anything else is
    ``inconclusive``.
    """
    problems = validate(h)
    if problems:
        raise ValueError("; ".join(problems))
    if theorem == "cycle-lemmas":
        return _verify_lemmas_instance(h, budget)
    bound, failed, facts = _hypotheses(h, k, theorem)
    record = {"hash": h.canonical_hash(), "theorem": theorem, **facts, "failed_hypotheses": failed}
    if failed:
        record.update(status=NOT_APPLICABLE, circumference=None, witness=None, exact=None, expansions=0)
        return record
    res = circumference(h, budget)
    witness_ok = res.witness is not None and validate_cycle(h, res.witness)
    record.update(
        circumference=res.length,
        witness=res.witness.to_json() if res.witness else None,
        exact=res.exact,
        expansions=res.expansions,
    )
    if witness_ok and res.length >= bound:
        record["status"] = HOLDS
    elif res.exact:
        again = circumference(h, 2 * budget)
        record["recheck"] = {"circumference": again.length, "exact": again.exact, "budget": 2 * budget}
        record["status"] = VIOLATION if again.exact and again.length < bound else INCONCLUSIVE
    else:
        record["status"] = INCONCLUSIVE
    return record


def _expanding_candidates(h: Hypergraph, c, u):
    """Sets ``g & V(C)`` for edges off C and ``N(x) & V(C)`` for vertices off C."""
    on = set(c.vertices)
    cedges = set(c.edges)
    sets = set()
    for g, e in enumerate(h.edges):
        if g not in cedges:
            w = tuple(sorted(x for x in e if x in on))
            if w:
                sets.add(w)
    for x in range(h.n):
        if x in on or x == u:
            continue
        w = tuple(sorted({y for g in h.incidence[x] if g not in cedges for y in h.edges[g] if y in on}))
        if w:
            sets.add(w)
    return sorted(sets)


def _verify_lemmas_instance(h: Hypergraph, budget: int) -> dict:
    """Expanding-set facts on a longest cycle: both example families expand,
    u meets at most one edge after / before W, and both counting bounds hold."""
    res = circumference(h, budget)
    record = {"hash": h.canonical_hash(), "theorem": "cycle-lemmas", "n": h.n, "m": h.m, "r": h.r,
              "k": None, "delta": min_degree(h), "circumference": res.length, "exact": res.exact,
              "expansions": res.expansions, "witness": res.witness.to_json() if res.witness else None,
              "failed_hypotheses": [], "checks": 0, "failures": []}
    c = res.witness
    if c is None or len(c) == h.n:
        record["status"] = NOT_APPLICABLE
        record["failed_hypotheses"] = ["no vertex off a longest cycle"]
        return record
    if not res.exact:
        record["status"] = INCONCLUSIVE
        return record
    n_c = len(c)
    masks = h.edge_masks
    for u in range(h.n):
        if u in c.vertices:
            continue
        for w in _expanding_candidates(h, c, u):
            record["checks"] += 1
            if not is_expanding(h, c, u, w).expanding:
                record["failures"].append({"u": u, "W": list(w), "what": "not expanding"})
                continue
            pos = [c.vertices.index(x) for x in w]
            after = sum(masks[c.edges[j]] >> u & 1 for j in pos)
            before = sum(masks[c.edges[(j - 1) % n_c]] >> u & 1 for j in pos)
            if after > 1 or before > 1:
                record["failures"].append({"u": u, "W": list(w), "what": "u in two edges next to W"})
            b = no3_bounds(h, c, u, w)
            if not (b.bound_i and b.bound_ii):
                record["failures"].append({"u": u, "W": list(w), "what": "counting bound", **b.to_json()})
    record["status"] = VIOLATION if record["failures"] else HOLDS
    return record


# ---------------------------------------------------------------------------
# batch runs


@dataclass
class HarnessConfig:
    """Grid for one theorem.

    ``k`` empty means every k the theorem allows for the (n, r) pair.
    ``samples`` is the number of distinct instances wanted per cell; at most
    ``samples * attempts_factor`` draws are made.
    """

    theorem: str
    n: list = field(default_factory=list)
    r: list = field(default_factory=list)
    k: list = field(default_factory=list)
    samples: int = 1000
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    attempts_factor: int = 3
    heuristic: bool = False
    heuristic_restarts: int = DEFAULT_RESTARTS
    max_s: int = DEFAULT_MAX_S
    repaired: bool = False
    threads: int = 1

    @classmethod
    def from_json(cls, obj: dict) -> "HarnessConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**obj)
        if cfg.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {cfg.theorem!r}; known: {', '.join(THEOREMS)}")
        for name in ("n", "r", "k"):
            value = getattr(cfg, name)
            setattr(cfg, name, [value] if isinstance(value, int) else list(value))
        return cfg

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("threads")  # results do not depend on it
        return out


@dataclass
class VerificationReport:
    theorem: str
    parameters: dict
    records: list
    summary: dict
    exhaustive: dict | None = None

    def to_json(self) -> dict:
        out = {"theorem": self.theorem, "parameters": self.parameters, "summary": self.summary,
               "records": self.records}
        if self.exhaustive is not None:
            out["exhaustive"] = self.exhaustive
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"


def _k_range(theorem, n, r):
    if theorem == "theorem19":
        return list(range(3, min(r + 1, n) + 1))
    if theorem == "jackson-cor":
        return list(range(2, r))
    if theorem == "dirac":
        return list(range(2, n + 1))
    return [None]


def _min_degree_target(theorem, n, r, k):
    if theorem == "theorem19":
        return k
    if theorem == "dirac":
        return k
    if theorem == "jackson-cor":
        return k + 1
    if theorem == "mainold2":
        t = (n - 1) // 2
        return comb(t, r - 1) + 1 if r <= t else r
    return 1


def _cells(cfg: HarnessConfig):
    rs = [2] if cfg.theorem == "dirac" else cfg.r
    cells = []
    for n in cfg.n:
        for r in rs:
            if r > n:
                continue
            ks = cfg.k if cfg.k and cfg.theorem != "mainold2" else _k_range(cfg.theorem, n, r)
            for k in ks:
                cells.append((n, r, k))
    return cells


def _two_connected_needed(theorem):
    return theorem in ("theorem19", "dirac", "jackson-cor")


def _heuristic_fields(h, record, cfg, rng_seed):
    run = long_cycle_search(h, seed=rng_seed, budget=cfg.heuristic_restarts)
    length = len(run.cycle)
    out = {"length": length, "valid": validate_cycle(h, run.cycle)}
    if record.get("circumference") is not None:
        out["exact"] = length == record["circumference"]
    if record.get("bound") is not None:
        out["reaches_bound"] = length >= record["bound"]
    if record.get("circumference") is not None and length < record["circumference"]:
        best = enumerate_best(h, "lollipop")
        out["stall"] = run.stall
        out["best_lollipop"] = {"structure": structure_to_json(best.structure),
                                "rank": rank(h, best.structure).to_json()} if best.structure else None
    return out


def _run_cell(cfg: HarnessConfig, cell):
    n, r, k = cell
    theorem = cfg.theorem
    target = _min_degree_target(theorem if theorem != "cycle-lemmas" else "", n, r, k)
    seen, records = set(), []
    draws = failures = 0
    for i in range(cfg.samples * max(1, cfg.attempts_factor)):
        if len(seen) >= cfg.samples:
            break
        tag = f"{cfg.seed}:{theorem}:{n}:{r}:{k}:{i}"
        rng = random.Random(tag)
        draws += 1
        try:
            h = random_rgraph(n, r, target, rng, two_connected=_two_connected_needed(theorem))
        except SamplingError:
            failures += 1
            break  # deterministic: the complete r-graph already misses the targets
        key = h.canonical_hash()
        if key in seen:
            continue
        seen.add(key)
        record = verify_theorem(h, k, theorem, cfg.budget)
        record["cell"] = [n, r, k]
        record["edges"] = [list(e) for e in h.edges]
        if cfg.heuristic and theorem != "cycle-lemmas":
            record["heuristic"] = _heuristic_fields(h, record, cfg, tag)
        records.append(record)
    stats = {"cell": [n, r, k], "draws": draws, "distinct": len(seen), "sampling_failures": failures}
    return records, stats


def _summarize(records, cell_stats, heuristic):
    statuses = [rec["status"] for rec in records]
    summary = {
        "checked": sum(s != NOT_APPLICABLE for s in statuses),
        "holds": statuses.count(HOLDS),
        "violations": statuses.count(VIOLATION),
        "inconclusive": statuses.count(INCONCLUSIVE),
        "not_applicable": statuses.count(NOT_APPLICABLE),
        "instances": len(records),
        "draws": sum(s["draws"] for s in cell_stats),
        "cells": cell_stats,
        "violation_hashes": [rec["hash"] for rec in records if rec["status"] == VIOLATION],
    }
    if heuristic:
        runs = [rec["heuristic"] for rec in records if "heuristic" in rec and "exact" in rec["heuristic"]]
        summary["heuristic"] = {
            "runs": len(runs),
            "exact": sum(run["exact"] for run in runs),
            "reaches_bound": sum(run.get("reaches_bound", False) for run in runs),
            "invalid": sum(not run["valid"] for run in runs),
            "shortfalls": sum(not run["exact"] for run in runs),
        }
    return summary


def batch_verify(config) -> VerificationReport:
    """Run a grid; ``config`` is a HarnessConfig or its JSON dict."""
    cfg = config if isinstance(config, HarnessConfig) else HarnessConfig.from_json(dict(config))
    exhaustive = None
    if cfg.theorem == "cycle-lemmas":
        exhaustive = verify_claims_exhaustive(cfg.max_s, repaired=cfg.repaired)
    cells = _cells(cfg) if cfg.n else []
    if cfg.threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda c: _run_cell(cfg, c), cells))
    else:
        results = [_run_cell(cfg, c) for c in cells]
    records = sorted((rec for recs, _ in results for rec in recs), key=lambda rec: (rec["cell"], rec["hash"]))
    cell_stats = sorted((stats for _, stats in results), key=lambda s: s["cell"])
    summary = _summarize(records, cell_stats, cfg.heuristic)
    if exhaustive is not None:
        summary["exhaustive_violations"] = exhaustive["total_violations"]
        summary["violations"] += exhaustive["total_violations"]
    return VerificationReport(cfg.theorem, cfg.to_json(), records, summary, exhaustive)
