"""Run the verification grids in scripts/configs and write one report per config.

    python scripts/run_grids.py                 # every config
    python scripts/run_grids.py dirac mainold2  # a subset, by file stem
"""

import argparse
import json
import time
from pathlib import Path

from berge.harness import HarnessConfig, batch_verify

HERE = Path(__file__).resolve().parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", help="config stems (default: all)")
    ap.add_argument("--out", default="results", help="directory for the JSON reports")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    paths = sorted((HERE / "configs").glob("*.json"))
    if args.names:
        paths = [p for p in paths if p.stem in args.names]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for path in paths:
        obj = json.loads(path.read_text())
        obj.setdefault("threads", args.threads)
        start = time.perf_counter()
        report = batch_verify(HarnessConfig.from_json(obj))
        seconds = time.perf_counter() - start
        (out / f"{path.stem}.json").write_text(report.dumps())
        s = report.summary
        line = (f"{path.stem:22} checked {s['checked']:6}  holds {s['holds']:6}  violations {s['violations']:4}  "
                f"inconclusive {s['inconclusive']:3}  {seconds:6.1f} s")
        if report.exhaustive is not None:
            line += f"  claim violations {report.exhaustive['total_violations']}"
        print(line)


if __name__ == "__main__":
    main()
