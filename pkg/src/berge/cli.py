"""Command-line front end.

Exit codes: 0 success or holds, 1 violation (or a false predicate),
2 inconclusive, 64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .connectivity import hypergraph_connectivity, is_k_connected
from .constructions import GENERATORS
from .core import min_degree
from .formats import FormatError, format_text, read
from .harness import THEOREMS, HarnessConfig, batch_verify
from .moves import DEFAULT_RESTARTS, long_cycle_search
from .search import DEFAULT_BUDGET, NoCycleError, circumference
from .structures import FAMILIES, enumerate_best, structure_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DATAERR = 0, 1, 2, 64, 65

# per-generator parameter flags; a' and b' are spelled --a-prime / --b-prime
_PARAM_FLAGS = ("r", "k", "m", "n", "q", "a", "b", "a_prime", "b_prime")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, as_json: bool, text: str, out):
    if as_json:
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _load(path):
    if not Path(path).is_file():
        raise UsageError(f"cannot read {path}")
    try:
        return read(path)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def cmd_circumference(args, out):
    h = _load(args.file)
    res = circumference(h, args.budget)
    obj = {
        "circumference": res.length,
        "exact": res.exact,
        "expansions": res.expansions,
        "budget": args.budget,
        "witness": res.witness.to_json() if res.witness else None,
    }
    text = f"circumference: {res.length}{'' if res.exact else ' (lower bound, budget exhausted)'}\n"
    if res.witness:
        text += f"witness vertices: {' '.join(map(str, res.witness.vertices))}\n"
        text += f"witness edges: {' '.join(map(str, res.witness.edges))}\n"
    text += f"expansions: {res.expansions} of budget {args.budget}"
    _emit(obj, args.json, text, out)
    return EXIT_OK if res.exact else EXIT_INCONCLUSIVE


def cmd_connectivity(args, out):
    h = _load(args.file)
    if args.k is not None:
        verdict = is_k_connected(h, args.k)
        _emit({"k": args.k, "k_connected": verdict}, args.json, f"{args.k}-connected: {str(verdict).lower()}", out)
        return EXIT_OK if verdict else EXIT_VIOLATION
    kappa = hypergraph_connectivity(h)
    _emit({"connectivity": kappa}, args.json, f"incidence-graph connectivity: {kappa}", out)
    return EXIT_OK


def cmd_generate(args, out):
    fn, names = GENERATORS[args.family]
    try:
        params = json.loads(args.params) if args.params else {}
    except json.JSONDecodeError:
        raise UsageError(f"--params is not a JSON object: {args.params!r}") from None
    if not isinstance(params, dict):
        raise UsageError("--params must be a JSON object")
    for name in _PARAM_FLAGS:
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    missing = [p for p in names if p not in params]
    extra = sorted(set(params) - set(names))
    if missing or extra:
        raise UsageError(f"{args.family} takes {', '.join(names)}; missing {missing}, unexpected {extra}")
    try:
        h, spec = fn(**{p: int(params[p]) for p in names})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = format_text(h, header=spec.to_json())
    if args.output:
        Path(args.output).write_text(text)
        summary = f"wrote {args.output}: n={h.n} m={h.m} r={h.r}"
        for w in spec.warnings:
            summary += f"\nwarning: {w}"
        _emit({"output": args.output, **spec.to_json()}, args.json, summary, out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_find_cycle(args, out):
    h = _load(args.file)
    try:
        run = long_cycle_search(h, seed=args.seed, budget=args.budget)
    except NoCycleError:
        _emit({"length": 0, "cycle": None}, args.json, "no Berge cycle", out)
        return EXIT_OK
    upper = min(h.n, h.m)
    delta = min_degree(h)
    k = min(delta, h.r + 1) if h.r else None
    guaranteed = None
    if k is not None and 3 <= k <= h.r + 1 <= h.n and is_k_connected(h, 2):
        guaranteed = min(2 * k, h.n, h.m)
    obj = {**run.to_json(), "length": len(run.cycle), "upper_bound": upper, "theorem_bound": guaranteed,
           "seed": args.seed, "restarts_budget": args.budget}
    text = (f"length: {len(run.cycle)}\n"
            f"vertices: {' '.join(map(str, run.cycle.vertices))}\n"
            f"edges: {' '.join(map(str, run.cycle.edges))}\n"
            f"upper bound min(n, m): {upper}\n"
            f"theorem bound min(2k, n, m) with k=min(delta, r+1): {guaranteed if guaranteed is not None else 'n/a'}\n"
            f"seed {args.seed}, restarts budget {args.budget}, evaluations {run.evaluations}")
    _emit(obj, args.json, text, out)
    return EXIT_OK


def _parse_config(value):
    path = Path(value)
    text = path.read_text() if path.is_file() else value
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        if path.is_file():
            raise FormatError(f"config is not JSON: {exc.msg}", exc.lineno) from None
        raise UsageError(f"--config is neither a file nor inline JSON: {value!r}") from None
    if not isinstance(obj, dict):
        raise UsageError("config must be a JSON object")
    return obj


def cmd_verify(args, out):
    obj = _parse_config(args.config)
    if obj.setdefault("theorem", args.theorem) != args.theorem:
        raise UsageError(f"config names theorem {obj['theorem']!r} but the command says {args.theorem!r}")
    obj.setdefault("threads", args.threads)
    try:
        cfg = HarnessConfig.from_json(obj)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad config: {exc}") from None
    report = batch_verify(cfg)
    if args.output:
        Path(args.output).write_text(report.dumps())
    s = report.summary
    text = (f"{args.theorem}: checked {s['checked']}, holds {s['holds']}, violations {s['violations']}, "
            f"inconclusive {s['inconclusive']}, not applicable {s['not_applicable']}\n"
            f"seed {cfg.seed}, budget {cfg.budget} expansions per instance")
    if report.exhaustive is not None:
        ex = report.exhaustive
        text += f"\nexhaustive claims up to s={ex['max_s']}: {ex['total_configurations']} configurations, " \
                f"{ex['total_violations']} violations" + (" (repaired hypotheses)" if ex["repaired"] else "")
        for claim, row in ex["claims"].items():
            text += f"\n  {claim}: {row['configurations']} configurations, {row['violations']} violations"
    if "heuristic" in s:
        hs = s["heuristic"]
        text += f"\nheuristic: {hs['exact']}/{hs['runs']} exact, {hs['reaches_bound']}/{hs['runs']} reach the bound"
    _emit({"summary": s, "output": args.output, "budget": cfg.budget}, args.json, text, out)
    if s["violations"]:
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE if s["inconclusive"] else EXIT_OK


def cmd_best_structure(args, out):
    h = _load(args.file)
    best = enumerate_best(h, args.family, args.budget)
    if best is None:
        _emit({"family": args.family, "exact": True, "structure": None, "rank": None, "budget": args.budget},
              args.json, f"no {args.family} structure", out)
        return EXIT_OK
    obj = {"family": args.family, "exact": best.exact, "evaluations": best.evaluations, "budget": args.budget,
           "structure": structure_to_json(best.structure), "rank": best.rank.to_json()}
    text = (f"{args.family}: rank {list(best.rank.key())}\n"
            f"{json.dumps(structure_to_json(best.structure), sort_keys=True)}\n"
            f"evaluations {best.evaluations} of budget {args.budget}" + ("" if best.exact else " (not exhaustive)"))
    _emit(obj, args.json, text, out)
    return EXIT_OK if best.exact else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="berge", description="Berge cycles in uniform hypergraphs.")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("circumference", cmd_circumference, "exact circumference with a witness cycle")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("connectivity", cmd_connectivity, "incidence-graph connectivity or a k-connectivity test")
    sp.add_argument("file")
    sp.add_argument("--k", type=int)

    sp = add("generate", cmd_generate, "write an extremal construction")
    sp.add_argument("family", choices=sorted(GENERATORS))
    sp.add_argument("--params", help="parameters as a JSON object")
    for name in _PARAM_FLAGS:
        sp.add_argument("--" + name.replace("_", "-"), dest=name, type=int)
    sp.add_argument("-o", "--output")

    sp = add("find-cycle", cmd_find_cycle, "heuristic long cycle search")
    sp.add_argument("file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_RESTARTS, help="number of restarts")

    sp = add("verify", cmd_verify, "batch verification from a JSON config")
    sp.add_argument("theorem", choices=THEOREMS)
    sp.add_argument("--config", required=True, help="JSON file or inline JSON object")
    sp.add_argument("-o", "--output")

    sp = add("best-structure", cmd_best_structure, "best lollipop, dcp- or dcc-pair by exhaustive search")
    sp.add_argument("file")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        err.write(f"malformed input: {exc}\n")
        return EXIT_DATAERR


def main():
    sys.exit(run())
