"""Command-line entry point: ``hyperkube {run,sweep,query,verify}``."""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from pathlib import Path
from typing import Sequence

from hyperkube import __version__
from hyperkube.errors import HyperkubeError
from hyperkube.keywords import MAX_DIMENSION, KeywordSet, NodeId
from hyperkube.ledger import load_fixture
from hyperkube.network import Network
from hyperkube.routing import Query, SearchKind, execute
from hyperkube.simulator import WORKLOADS, ExperimentConfig, ExperimentResult, run_experiment
from hyperkube import verification

RESULT_COLUMNS = ["nodes", "objects", "search", "repetition", "mean_hops", "queries"]
SUMMARY_COLUMNS = ["nodes", "objects", "search", "mean", "stddev", "ci_low", "ci_high", "n"]
DEFAULT_R_LIST = "7,8,9,10,11,12,13"
DEFAULT_OBJECTS_LIST = "100,1000,10000"

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_PROPERTY = 3


class UsageError(Exception):
    pass


def _dimension(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 1 <= r <= MAX_DIMENSION:
        raise argparse.ArgumentTypeError(f"r must be in [1, {MAX_DIMENSION}], got {r}")
    return r


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    if text == "random":
        return random.SystemRandom().randrange(1 << 63)
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {text!r}")


def _bias(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {value}")
    return value


def _int_list(item_type):
    def parse(text: str) -> list[int]:
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return [item_type(t) for t in items]

    return parse


def _keyword_list(text: str) -> KeywordSet:
    ks = KeywordSet(t for t in text.split(",") if t.strip())
    if not ks:
        raise argparse.ArgumentTypeError("no keywords given")
    return ks


def _add_workload_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--limit", type=_positive, default=10)
    p.add_argument("--queries", type=_positive, default=1, help="queries per repetition")
    p.add_argument("--reps", type=_positive, default=50)
    p.add_argument("--seed", type=_seed, default=42, help="integer, or 'random'")
    p.add_argument("--out", type=Path, default=Path(os.environ.get("HYPERKUBE_OUT", "out")))
    p.add_argument("--vocab", type=_positive, default=1000)
    p.add_argument("--kw-min", type=_positive, default=1)
    p.add_argument("--kw-max", type=_positive, default=5)
    p.add_argument("--qkw-min", type=_positive, default=1)
    p.add_argument("--qkw-max", type=_positive, default=3)
    p.add_argument("--match-bias", type=_bias, default=0.5)
    p.add_argument("--workload", choices=WORKLOADS, default="synthetic")
    p.add_argument("--emit-traces", action="store_true", help="also write traces.jsonl")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperkube", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment cell")
    run.add_argument("--r", type=_dimension, required=True)
    run.add_argument("--objects", type=_positive, required=True)
    run.add_argument("--search", choices=["pin", "superset"], default="pin")
    _add_workload_flags(run)

    sweep = sub.add_parser("sweep", help="run a grid of cells")
    sweep.add_argument("--r-list", type=_int_list(_dimension), default=DEFAULT_R_LIST)
    sweep.add_argument("--objects-list", type=_int_list(_positive), default=DEFAULT_OBJECTS_LIST)
    sweep.add_argument("--search", choices=["pin", "superset"], default=None,
                       help="restrict to one search kind (default: both)")
    _add_workload_flags(sweep)

    query = sub.add_parser("query", help="one query against a fixture-loaded network")
    query.add_argument("--fixture", type=Path, required=True)
    query.add_argument("--keywords", type=_keyword_list, required=True)
    query.add_argument("--r", type=_dimension, default=8)
    query.add_argument("--search", choices=["pin", "superset"], default="pin")
    query.add_argument("--limit", type=_positive, default=10)
    query.add_argument("--start", default=None, help="MSB-first bit string; random if omitted")
    query.add_argument("--seed", type=_seed, default=42)

    verify = sub.add_parser("verify", help="oracle and spanning-tree checks at small scale")
    verify.add_argument("--r", type=_dimension, default=4)
    verify.add_argument("--objects", type=_positive, default=200)
    verify.add_argument("--queries", type=_positive, default=200)
    verify.add_argument("--vocab", type=_positive, default=16)
    verify.add_argument("--seed", type=_seed, default=7)
    return parser


def _config(args, r: int, objects: int, search: str) -> ExperimentConfig:
    try:
        return _make_config(args, r, objects, search)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _make_config(args, r: int, objects: int, search: str) -> ExperimentConfig:
    return ExperimentConfig(
        r=r,
        object_count=objects,
        search_kind=SearchKind(search),
        query_count=args.queries,
        repetitions=args.reps,
        limit=args.limit,
        seed=args.seed,
        vocabulary_size=args.vocab,
        keywords_per_object=(args.kw_min, args.kw_max),
        query_keywords=(args.qkw_min, args.qkw_max),
        match_bias=args.match_bias,
        workload=args.workload,
    )


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _result_rows(result: ExperimentResult) -> list[list]:
    cfg = result.config
    return [
        [1 << cfg.r, cfg.object_count, cfg.search_kind.value, i, _fmt(m), result.queries_per_repetition]
        for i, m in enumerate(result.repetition_means)
    ]


def _summary_row(result: ExperimentResult) -> list:
    cfg, s = result.config, result.summary
    return [1 << cfg.r, cfg.object_count, cfg.search_kind.value,
            _fmt(s.mean), _fmt(s.stddev), _fmt(s.ci95[0]), _fmt(s.ci95[1]), s.n]


def _write_traces(fh, result: ExperimentResult) -> None:
    cfg = result.config
    for rep, results in enumerate(result.traces):
        for q, res in enumerate(results):
            record = {"nodes": 1 << cfg.r, "objects": cfg.object_count,
                      "search": cfg.search_kind.value, "repetition": rep, "query": q,
                      **res.to_dict()}
            fh.write(json.dumps(record) + "\n")


def _run_cells(args, configs: Sequence[ExperimentConfig]) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "version": __version__,
        "command": args.command,
        "cells": [cfg.to_dict() for cfg in configs],
    }
    (out / "metadata.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    traces = open(out / "traces.jsonl", "w") if args.emit_traces else None
    try:
        with open(out / "results.csv", "w", newline="") as rf, \
                open(out / "summary.csv", "w", newline="") as sf:
            results_csv, summary_csv = csv.writer(rf, lineterminator="\n"), csv.writer(sf, lineterminator="\n")
            results_csv.writerow(RESULT_COLUMNS)
            summary_csv.writerow(SUMMARY_COLUMNS)
            for cfg in configs:
                result = run_experiment(cfg, keep_traces=traces is not None)
                results_csv.writerows(_result_rows(result))
                summary_csv.writerow(_summary_row(result))
                rf.flush()
                sf.flush()
                if traces is not None:
                    _write_traces(traces, result)
                s = result.summary
                print(f"r={cfg.r} objects={cfg.object_count} search={cfg.search_kind.value} "
                      f"mean={s.mean:.2f} stddev={s.stddev:.2f}", file=sys.stderr)
    finally:
        if traces is not None:
            traces.close()
    return 0


def cmd_run(args) -> int:
    return _run_cells(args, [_config(args, args.r, args.objects, args.search)])


def cmd_sweep(args) -> int:
    kinds = [args.search] if args.search else ["pin", "superset"]
    configs = [_config(args, r, n, kind)
               for kind in kinds for r in args.r_list for n in args.objects_list]
    return _run_cells(args, configs)


def cmd_query(args) -> int:
    network = Network(args.r)
    for keywords, root in load_fixture(args.fixture):
        network.publish(keywords, root)
    if args.start is not None:
        start = NodeId.parse(args.start)
        if start.r != args.r:
            raise ValueError(f"--start has {start.r} bits but --r is {args.r}")
    else:
        start = NodeId(random.Random(args.seed).randrange(network.node_count), args.r)
    kind = SearchKind(args.search)
    limit = args.limit if kind is SearchKind.SUPERSET else None
    result = execute(network, Query(kind, args.keywords, start, limit))
    print(result.to_json())
    return 0


def cmd_verify(args) -> int:
    if args.r > verification.MAX_VERIFY_DIMENSION:
        print(f"verify: --r must be <= {verification.MAX_VERIFY_DIMENSION}", file=sys.stderr)
        return EXIT_USAGE
    checks = verification.run_all(args.r, args.objects, args.queries, args.vocab, args.seed)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status}  {check.name}: {check.detail}")
    return 0 if all(c.passed for c in checks) else EXIT_PROPERTY


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "query": cmd_query, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, ValueError, HyperkubeError) as exc:
        print(f"hyperkube {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
