"""Command-line front end.

    modlog materialise -p prog.dl -f facts.dl [--mode seminaive|modular] [--modules auto|off] -o out.dl [--stats out.csv]
    modlog update -p prog.dl -f facts.dl --delete d.dl --insert i.dl -o out.dl [--stats out.csv]
    modlog generate --kind chain|cycle|dag|clique --n N [--edges M] [--seed S] -o facts.dl
    modlog verify -p prog.dl -f facts.dl [--against out.dl]

Exit codes: 0 success, 1 parse or parameter error, 2 program not
stratifiable, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

from . import workloads
from .apply import CSV_COLUMNS
from .datalog import DatalogError, NotStratifiable
from .engine import MODES, incremental_update, materialise
from .oracle import naive_fixpoint, verify
from .parser import ParseError, parse_facts, parse_program, serialise_dataset

EXIT_OK, EXIT_INPUT, EXIT_STRATIFY, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass
class RunConfig:
    program: Path | None = None
    facts: Path | None = None
    mode: str = "modular"
    modules: str = "auto"
    output: Path | None = None
    stats: Path | None = None
    seed: int = 0
    report: str = "text"


def _read(path):
    return Path(path).read_text() if path is not None else ""


def _load(cfg):
    return parse_program(_read(cfg.program)), parse_facts(_read(cfg.facts))


def _write(path, text):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def stats_block(state) -> str:
    """Dataset and program sizes in the style of the usual |E|, |I|, S, rule and module counts."""
    strat = state.strat
    nonrec = sum(len(v) for v in strat.nonrecursive.values())
    rec = sum(len(v) for v in strat.recursive.values())
    kinds = state.module_summary()
    rows = [("|E|", len(state.explicit)), ("|I|", len(state.facts)), ("S", strat.max_stratum),
            ("|Pi_nr|", nonrec), ("|Pi_r|", rec), ("|TC|", kinds["tc"]), ("|STC|", kinds["stc"]),
            ("|Generic|", kinds["generic"])]
    return "".join(f"{k:<10} {v}\n" for k, v in rows)


def write_stats_csv(path, counters):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for row in counters.rows():
            row["wall_ms"] = f"{row['wall_ms']:.3f}"
            w.writerow(row)


def _phase_lines(counters):
    return "".join(f"{r['phase']:<12} instances={r['rule_instances']} joins={r['join_results']} "
                   f"deleted={r['facts_deleted']} rederived={r['facts_rederived']} "
                   f"added={r['facts_added']}\n" for r in counters.rows())


def cmd_materialise(cfg: RunConfig) -> int:
    prog, facts = _load(cfg)
    st = materialise(prog, facts, mode=cfg.mode, modules=cfg.modules)
    _write(cfg.output, serialise_dataset(st.facts))
    sys.stderr.write(stats_block(st))
    if cfg.stats:
        write_stats_csv(cfg.stats, st.counters)
    return EXIT_OK


def cmd_update(cfg: RunConfig, delete_path=None, insert_path=None) -> int:
    # state is recomputed on load, then updated incrementally
    prog, facts = _load(cfg)
    dels, ins = parse_facts(_read(delete_path)), parse_facts(_read(insert_path))
    st = materialise(prog, facts, mode=cfg.mode, modules=cfg.modules)
    incremental_update(st, dels, ins)
    _write(cfg.output, serialise_dataset(st.facts))
    sys.stderr.write(stats_block(st) + _phase_lines(st.counters))
    if cfg.stats:
        write_stats_csv(cfg.stats, st.counters)
    return EXIT_OK


def cmd_generate(kind: str, n: int, edges=None, seed: int = 0, output=None) -> int:
    if n < 1:
        raise ValueError("--n must be at least 1")
    if kind == "dag":
        facts = workloads.dag(n, n * 2 if edges is None else edges, seed)
    elif kind in workloads.GENERATORS:
        facts = workloads.GENERATORS[kind](n)
    else:
        raise ValueError(f"unknown workload kind {kind!r}")
    _write(output, serialise_dataset(facts))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, against=None) -> int:
    prog, facts = _load(cfg)
    if against is not None:
        actual = parse_facts(_read(against))
    else:
        actual = materialise(prog, facts, mode=cfg.mode, modules=cfg.modules).facts
    report = verify(actual, naive_fixpoint(prog, None, facts))
    print(report)
    return EXIT_OK if report.ok else EXIT_MISMATCH


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # bad parameters share the exit code of bad input files
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="modlog", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("-p", "--program", required=True, type=Path)
        p.add_argument("-f", "--facts", required=True, type=Path)
        p.add_argument("--mode", choices=MODES, default="modular")
        p.add_argument("--modules", choices=("auto", "off"), default="auto")
        if output:
            p.add_argument("-o", "--output", default="-")
            p.add_argument("--stats", type=Path, help="write per-phase counters as CSV")

    common(sub.add_parser("materialise", aliases=["materialize"], help="compute the materialisation"))
    up = sub.add_parser("update", help="materialise, then apply deletions and insertions incrementally")
    common(up)
    up.add_argument("--delete", type=Path)
    up.add_argument("--insert", type=Path)
    gen = sub.add_parser("generate", help="write a synthetic R-graph workload")
    gen.add_argument("--kind", required=True, choices=("chain", "cycle", "dag", "clique"))
    gen.add_argument("--n", type=int, required=True, help="edges (chain), vertices otherwise")
    gen.add_argument("--edges", type=int, help="edge count for dag (default 2n)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", default="-")
    ver = sub.add_parser("verify", help="compare against the naive fixpoint oracle")
    common(ver, output=False)
    ver.add_argument("--against", type=Path, help="materialisation file to check instead of the engine")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args.kind, args.n, args.edges, args.seed, args.output)
        cfg = RunConfig(args.program, args.facts, args.mode, args.modules,
                        getattr(args, "output", None), getattr(args, "stats", None))
        if args.command == "update":
            return cmd_update(cfg, args.delete, args.insert)
        if args.command == "verify":
            return cmd_verify(cfg, args.against)
        return cmd_materialise(cfg)
    except NotStratifiable as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STRATIFY
    except (ParseError, DatalogError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
