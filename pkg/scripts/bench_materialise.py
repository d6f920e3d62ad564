"""Seminaive vs modular materialisation on chain, cycle and DAG workloads.

    python scripts/bench_materialise.py --sizes 25 50 100 --csv out.csv
"""
import argparse
import csv
import sys
import time

from modlog import workloads
from modlog.engine import materialise


def run(kind, n, seed):
    if kind == "chain":
        prog, E = workloads.tc_program(), workloads.chain(n)
    elif kind == "cycle":
        prog, E = workloads.stc_program(), workloads.cycle(n)
    else:
        prog, E = workloads.tc_program(), workloads.dag(n, 3 * n, seed)
    rows = []
    for mode in ("seminaive", "modular"):
        t0 = time.perf_counter()
        st = materialise(prog, E, mode=mode)
        ms = (time.perf_counter() - t0) * 1000
        rows.append({"workload": kind, "n": n, "mode": mode, "explicit": len(E), "facts": len(st.facts),
                     "rule_instances": st.counters.total("rule_instances"),
                     "join_results": st.counters.total("join_results"), "wall_ms": f"{ms:.1f}"})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100])
    ap.add_argument("--kinds", nargs="+", default=["chain", "cycle", "dag"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", help="write rows here instead of stdout")
    args = ap.parse_args()
    rows = [r for kind in args.kinds for n in args.sizes for r in run(kind, n, args.seed)]
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    w = csv.DictWriter(out, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
