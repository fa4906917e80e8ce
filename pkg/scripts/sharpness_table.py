"""Print minimum degree, connectivity and circumference for small extremal constructions."""

from berge.connectivity import hypergraph_connectivity
from berge.constructions import gen_H2, gen_Hk, gen_Kbip
from berge.core import min_degree
from berge.search import circumference

CASES = [
    ("Hk", gen_Hk, dict(r=5, k=5, m=2)),
    ("Hk", gen_Hk, dict(r=4, k=4, m=2)),
    ("H2", gen_H2, dict(r=3, k=4, n=8)),
    ("Kbip", gen_Kbip, dict(k=3, n=6)),
    ("Kbip", gen_Kbip, dict(k=4, n=8)),
]


def main():
    print(f"{'family':6} {'params':28} {'n':>3} {'m':>3} {'r':>2} {'delta':>5} {'kappa':>5} {'c':>3}")
    for name, fn, params in CASES:
        h, _ = fn(**params)
        c = circumference(h).length
        print(f"{name:6} {str(params):28} {h.n:3} {h.m:3} {h.r:2} {min_degree(h):5} "
              f"{hypergraph_connectivity(h):5} {c:3}")


if __name__ == "__main__":
    main()
