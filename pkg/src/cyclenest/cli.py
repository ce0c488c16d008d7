"""Command-line surface.

Subcommands: gen, nest find, nest verify, expander reduce,
expander test, connect, wrap, sweep.  Graphs travel as edge-list text
files ("N M" header, then "u v" lines); cycles and reports as JSON.
Exit codes: 0 success, 1 structured failure (reported), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .connect import ConnectionBudget, short_connect
from .cycles import Cycle, NestedFamily, verify_family
from .errors import CycleNestError, GraphFormatError, NoShortConnectionError
from .expander import (peel_to_candidate, test_robust_expansion_exact,
                       test_robust_expansion_sampled)
from .generate import gnp, gnp_average_degree, random_regular
from .graph import Graph, load_graph, save_graph
from .pipeline import Constants, find_nested_cycles
from .wrap import WrapBudget, controlled_wrap, linked_wrap


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_consts(path: str | None) -> Constants:
    if not path:
        return Constants()
    with open(path, "r", encoding="utf-8") as fh:
        return Constants.from_json(json.load(fh))


def _read_set_file(path: str) -> list[int]:
    ids: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            ids.extend(int(tok) for tok in line.split())
    return ids


# -- gen ---------------------------------------------------------------------

def _cmd_gen(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        g = _generate(args.generator, args.n, args.p, args.avg_degree,
                      args.d, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    if args.output:
        save_graph(g, args.output)
    else:
        sys.stdout.write(f"{g.n} {g.m}\n")
        for u, v in g.edges():
            sys.stdout.write(f"{u} {v}\n")
    return 0


def _generate(generator: str, n: int, p: float | None,
              avg_degree: float | None, d: int | None, seed: int) -> Graph:
    if generator == "gnp":
        if (p is None) == (avg_degree is None):
            raise ValueError("gnp needs exactly one of --p / --avg-degree")
        if p is not None:
            return gnp(n, p, seed)
        return gnp_average_degree(n, avg_degree, seed)
    if generator == "random-regular":
        if d is None:
            raise ValueError("random-regular needs --d")
        return random_regular(n, d, seed)
    raise ValueError(f"unknown generator {generator!r}")


# -- nest ----------------------------------------------------------------------

def _cmd_nest_find(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    consts = _load_consts(args.consts)
    report = find_nested_cycles(g, args.k, consts, args.seed)
    _emit(report.to_json(), args.output)
    return 0 if report.success else 1


def _cmd_nest_verify(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    with open(args.family, "r", encoding="utf-8") as fh:
        fam = json.load(fh)
    verdict = verify_family(g, fam["cycles"])
    _emit(verdict.to_json(), args.output)
    return 0 if verdict.passed else 1


# -- expander ------------------------------------------------------------------

def _cmd_expander_reduce(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    result = peel_to_candidate(g)
    _emit(result.to_json(), args.output)
    return 0


def _cmd_expander_test(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.exact:
        report = test_robust_expansion_exact(g, cap=args.cap)
    else:
        report = test_robust_expansion_sampled(g, args.trials, args.seed)
    _emit(report.to_json(), args.output)
    return 0


# -- connect -------------------------------------------------------------------

def _cmd_connect(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    x = _read_set_file(args.from_file)
    y = _read_set_file(args.to_file)
    s = _read_set_file(args.avoid) if args.avoid else []
    budget = ConnectionBudget(g.n, a_sc=args.a_sc, n_sc=3)
    try:
        outcome = short_connect(g, x, y, s, budget.t)
    except NoShortConnectionError as exc:
        _emit({
            "error": str(exc),
            "trace_x": exc.trace_x.to_json() if exc.trace_x else None,
            "trace_y": exc.trace_y.to_json() if exc.trace_y else None,
        }, args.output)
        return 1
    _emit(outcome.to_json(), args.output)
    return 0


# -- wrap ----------------------------------------------------------------------

def _cmd_wrap(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    with open(args.cycle, "r", encoding="utf-8") as fh:
        cyc = Cycle(g, json.load(fh)["cycle"])
    budget = WrapBudget()
    try:
        if args.mode == "controlled":
            conn = ConnectionBudget(g.n, n_sc=3)
            result = controlled_wrap(g, cyc, budget, conn, args.seed)
        else:
            result = linked_wrap(g, cyc, budget, args.seed)
    except CycleNestError as exc:
        _emit({"error": str(exc),
               "diagnostics": getattr(exc, "diagnostics", {})}, args.output)
        return 1
    _emit(result.to_json(), args.output)
    return 0


# -- sweep ---------------------------------------------------------------------

def _sweep_worker(task: tuple[dict, int]) -> tuple[int, dict]:
    spec, seed = task
    g = _generate(spec["generator"], spec["n"], spec.get("p"),
                  spec.get("avg_degree"), spec.get("d"), seed)
    consts = Constants.from_json(spec.get("consts", {}))
    report = find_nested_cycles(g, spec["k"], consts, seed)
    return seed, report.to_json()


def _cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.seed_count < 0:
        parser.error("--seed-count must be >= 0")
    spec = {
        "generator": args.generator,
        "n": args.n,
        "p": args.p,
        "avg_degree": args.avg_degree,
        "d": args.d,
        "k": args.k,
        "consts": json.load(open(args.consts)) if args.consts else {},
    }
    try:
        _generate(spec["generator"], 4, spec["p"], spec["avg_degree"],
                  spec["d"], 0)
    except ValueError as exc:
        parser.error(str(exc))

    seeds = list(range(args.seed_start, args.seed_start + args.seed_count))
    jsonl_path = Path(f"{args.out}.jsonl")
    summary_path = Path(f"{args.out}.summary.json")
    tasks = [(spec, s) for s in seeds]
    try:
        with open(jsonl_path, "w", encoding="utf-8") as fh:
            if args.jobs > 1 and tasks:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    for seed, rep in pool.map(_sweep_worker, tasks):
                        fh.write(json.dumps(
                            {"spec": spec, "seed": seed, "report": rep}) + "\n")
                        fh.flush()
            else:
                for task in tasks:
                    seed, rep = _sweep_worker(task)
                    fh.write(json.dumps(
                        {"spec": spec, "seed": seed, "report": rep}) + "\n")
                    fh.flush()
        summary = summarize_jsonl(jsonl_path)
    except OSError as exc:
        print(f"I/O error on {exc.filename}: {exc}", file=sys.stderr)
        return 1
    summary_path.write_text(json.dumps(summary, indent=2) + "\n",
                            encoding="utf-8")
    print(json.dumps(summary, indent=2))
    return 0


def _quantiles(values: list[int]) -> dict:
    if not values:
        return {"count": 0}
    vs = sorted(values)

    def q(frac: float) -> float:
        idx = frac * (len(vs) - 1)
        lo, hi = int(idx), min(int(idx) + 1, len(vs) - 1)
        return vs[lo] + (vs[hi] - vs[lo]) * (idx - lo)

    return {
        "count": len(vs), "min": vs[0], "max": vs[-1],
        "mean": sum(vs) / len(vs),
        "p10": q(0.1), "p50": q(0.5), "p90": q(0.9),
    }


def summarize_jsonl(path) -> dict:
    """Second pass over a sweep's JSONL: rates, quantiles, flag stats."""
    runs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                runs.append(json.loads(line))
    if not runs:
        return {"runs": 0, "successes": 0, "success_rate": None,
                "layer_lengths": {}, "flag_counts": {}}

    successes = sum(1 for r in runs if r["report"]["success"])
    lengths: dict[str, list[int]] = {}
    flag_counts: dict[str, int] = {}
    precondition_counts: dict[str, int] = {}
    for r in runs:
        rep = r["report"]
        for layer in rep.get("layers", []):
            lengths.setdefault(str(layer["layer"]), []).append(layer["length"])
            key = f"layer_{layer['layer']}_{layer['mode']}"
            if layer.get("precondition_held"):
                precondition_counts[key] = precondition_counts.get(key, 0) + 1
        sched = rep.get("schedule")
        if sched:
            for name, val in sched["flags"].items():
                if val:
                    flag_counts[name] = flag_counts.get(name, 0) + 1
    return {
        "runs": len(runs),
        "successes": successes,
        "success_rate": successes / len(runs),
        "layer_lengths": {k: _quantiles(v) for k, v in sorted(lengths.items())},
        "flag_counts": dict(sorted(flag_counts.items())),
        "precondition_counts": dict(sorted(precondition_counts.items())),
    }


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclenest",
        description="Nested noncrossing cycles: construction, testing, verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("generator", choices=["gnp", "random-regular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--avg-degree", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    nest = sub.add_parser("nest", help="find or verify nested cycle families")
    nest_sub = nest.add_subparsers(dest="nest_command", required=True)
    p = nest_sub.add_parser("find")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--consts")
    p.add_argument("-o", "--output")
    p = nest_sub.add_parser("verify")
    p.add_argument("graph")
    p.add_argument("--family", required=True)
    p.add_argument("-o", "--output")

    exp = sub.add_parser("expander", help="density reduction and expansion tests")
    exp_sub = exp.add_subparsers(dest="expander_command", required=True)
    p = exp_sub.add_parser("reduce")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p = exp_sub.add_parser("test")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--sampled", action="store_true")
    p.add_argument("graph")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("-o", "--output")

    p = sub.add_parser("connect", help="short connection avoiding a vertex set")
    p.add_argument("graph")
    p.add_argument("--from-file", required=True)
    p.add_argument("--to-file", required=True)
    p.add_argument("--avoid")
    p.add_argument("--a-sc", type=float, default=40.0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("wrap", help="build an outer cycle around a cycle")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["controlled", "linked"], required=True)
    p.add_argument("--cycle", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("sweep", help="seeded experiment sweep with JSONL output")
    p.add_argument("generator", choices=["gnp", "random-regular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--avg-degree", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed-start", type=int, default=0)
    p.add_argument("--seed-count", type=int, required=True)
    p.add_argument("--consts")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args, parser)
        if args.command == "nest" and args.nest_command == "find":
            return _cmd_nest_find(args)
        if args.command == "nest" and args.nest_command == "verify":
            return _cmd_nest_verify(args)
        if args.command == "expander" and args.expander_command == "reduce":
            return _cmd_expander_reduce(args)
        if args.command == "expander" and args.expander_command == "test":
            return _cmd_expander_test(args)
        if args.command == "connect":
            return _cmd_connect(args)
        if args.command == "wrap":
            return _cmd_wrap(args)
        if args.command == "sweep":
            return _cmd_sweep(args, parser)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CycleNestError as exc:
        print(json.dumps({"error": str(exc)}))
        return 1
    except ValueError as exc:
        parser.error(str(exc))
    raise AssertionError("unhandled command")


if __name__ == "__main__":
    sys.exit(main())
