#!/usr/bin/env python3
"""
Run Benchmarks

For every (length, repetition) a fresh seeded sequence is generated and the
selected miners are run on it, each run in its own worker process so that
wall time and peak memory belong to that run alone. One CSV row per run goes
to stdout; a mean ± std summary per (length, miner, constrained) goes to
stderr.

Runs that exceed --time-budget or --mem-budget are kept as censored rows and
left out of the summary. Both miners (and both constraint variants) share the
seed of a (length, repetition) pair: seed = --seed + 1000 * length + rep.

Usage:
    python run_benchmarks.py --profile scaling
    python run_benchmarks.py --lengths 20..60:10 --miners incremental,naive --reps 3
"""

import argparse
import csv
import io
import json
import logging
import resource
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import yaml

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.cli_common import (
    fail,
    format_threshold,
    parse_lengths,
    parse_threshold,
    positive_int,
    print_header,
    setup_logging,
    split_tokens,
    status,
)
from serialminer.env_loader import load_settings
from serialminer.errors import EXIT_OK, ParameterError, SerialMinerError
from serialminer.mining import MiningParams, mine, mine_naive
from serialminer.occurrences import ConstraintSet
from serialminer.sequence_model import generate_random_sequence

logger = logging.getLogger("run_benchmarks")

PROFILES_FILE = Path(__file__).resolve().parent / "bench_profiles.yaml"
MINERS = ("incremental", "naive")
CSV_FIELDS = [
    "sequence_length",
    "alphabet_size",
    "threshold",
    "miner",
    "constrained",
    "wall_time_s",
    "peak_memory_bytes",
    "pattern_count",
    "repetition",
    "seed",
    "censored",
]


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark run. pattern_count and peak_memory_bytes are None for censored runs."""

    sequence_length: int
    alphabet_size: int
    threshold: Union[int, float]
    miner: str
    constrained: bool
    wall_time_s: float
    peak_memory_bytes: Optional[int]
    pattern_count: Optional[int]
    repetition: int
    seed: int
    censored: bool = False

    def to_row(self) -> Dict[str, str]:
        row = {}
        for name, value in asdict(self).items():
            if value is None:
                row[name] = ""
            elif isinstance(value, bool):
                row[name] = "true" if value else "false"
            elif name == "wall_time_s":
                row[name] = f"{value:.6f}"
            else:
                row[name] = str(value)
        return row

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "BenchRecord":
        def optional_int(text: str) -> Optional[int]:
            return int(text) if text else None

        try:
            threshold = int(row["threshold"])
        except ValueError:
            threshold = float(row["threshold"])
        return cls(
            sequence_length=int(row["sequence_length"]),
            alphabet_size=int(row["alphabet_size"]),
            threshold=threshold,
            miner=row["miner"],
            constrained=row["constrained"] == "true",
            wall_time_s=float(row["wall_time_s"]),
            peak_memory_bytes=optional_int(row["peak_memory_bytes"]),
            pattern_count=optional_int(row["pattern_count"]),
            repetition=int(row["repetition"]),
            seed=int(row["seed"]),
            censored=row["censored"] == "true",
        )


def load_profile(name: str) -> dict:
    """Read one named profile from bench_profiles.yaml as argparse defaults."""
    try:
        with open(PROFILES_FILE, "r", encoding="utf-8") as f:
            profiles = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise ParameterError(f"profiles file {PROFILES_FILE} not found")
    except yaml.YAMLError as e:
        raise ParameterError(f"invalid YAML in {PROFILES_FILE}: {e}")

    if name not in profiles:
        known = ", ".join(sorted(profiles)) or "none"
        raise ParameterError(f"unknown profile {name!r} (known: {known})")
    profile = dict(profiles[name])
    profile.pop("description", None)
    return {key.replace("-", "_"): value for key, value in profile.items()}


def build_parser(settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Benchmark the incremental and naive miners")
    parser.add_argument("--profile", help=f"Named set-up from {PROFILES_FILE.name}")
    parser.add_argument("--lengths", default="20", help="Sequence lengths: A..B:STEP or A,B,C (default: 20)")
    parser.add_argument("--reps", type=positive_int, default=5, help="Repetitions per length (default: 5)")
    parser.add_argument("--miners", default="incremental",
                        help="Comma-separated miners: incremental,naive (default: incremental)")
    parser.add_argument("--alphabet", "--ql", dest="alphabet", type=positive_int, default=10,
                        help="Alphabet size of generated sequences (default: 10)")
    parser.add_argument("--threshold", default="10%", help="N or P%% of |S| (default: 10%%)")
    parser.add_argument("--max-pattern-len", type=positive_int, default=10,
                        help="Maximal pattern length (default: 10)")
    parser.add_argument("--constraints", default="",
                        help="Constraint settings, e.g. maxgap=7,mingap=0,maxduration=20")
    parser.add_argument("--exclude", default="", help="Comma-separated item tokens to exclude")
    parser.add_argument("--compare-unconstrained", action="store_true",
                        help="With --constraints, also run every sequence unconstrained")
    parser.add_argument("--time-budget", type=float, default=settings.bench_time_budget,
                        help=f"Seconds per run before it is censored (default: {settings.bench_time_budget:g})")
    parser.add_argument("--mem-budget", type=int, default=settings.bench_mem_budget,
                        help="Bytes of address space per run before it is censored (default: none)")
    parser.add_argument("--seed", type=int, default=0, help="Base seed (default: 0)")
    parser.add_argument("--jobs", type=positive_int, default=settings.jobs,
                        help=f"Runs executed concurrently (default: {settings.jobs})")
    parser.add_argument("--save", action="store_true", help=f"Also write the CSV under {settings.bench_output_dir}")
    parser.add_argument("--run-one", help=argparse.SUPPRESS)
    return parser


def parse_args(argv, settings) -> argparse.Namespace:
    parser = build_parser(settings)
    known, _ = parser.parse_known_args(argv)
    if known.profile:
        try:
            parser.set_defaults(**load_profile(known.profile))
        except ParameterError as e:
            parser.error(str(e))
    args = parser.parse_args(argv)

    try:
        args.lengths = parse_lengths(str(args.lengths))
        args.threshold = parse_threshold(str(args.threshold))
        args.constraint_set = ConstraintSet.parse(
            args.constraints, excluded_items=[int(token) for token in split_tokens(args.exclude)]
        )
    except (argparse.ArgumentTypeError, ParameterError, ValueError) as e:
        parser.error(str(e))

    args.miners = split_tokens(args.miners)
    unknown = [m for m in args.miners if m not in MINERS]
    if not args.miners or unknown:
        parser.error(f"--miners must list {' and/or '.join(MINERS)}, got {','.join(args.miners) or 'nothing'}")
    return args


# ----------------------------------------------------------------------------
# Worker side: one run inside a fresh interpreter
# ----------------------------------------------------------------------------

def run_one(job: dict) -> int:
    """Execute a single run and print its measurements as one JSON line."""
    if job.get("mem_budget"):
        limit = int(job["mem_budget"])
        resource.setrlimit(resource.RLIMIT_AS, (limit, limit))

    sequence = generate_random_sequence(job["length"], job["alphabet"], job["seed"])
    params = MiningParams(
        threshold=job["threshold"],
        max_pattern_len=job["max_pattern_len"],
        constraints=ConstraintSet.from_dict(job["constraints"]),
    )
    try:
        started = time.perf_counter()
        if job["miner"] == "naive":
            result = mine_naive(sequence, params, force=True)
        else:
            result = mine(sequence, params)
        elapsed = time.perf_counter() - started
    except MemoryError:
        print(json.dumps({"censored": "memory"}))
        return EXIT_OK

    # ru_maxrss is reported in kilobytes on Linux
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    print(json.dumps({"wall_time_s": elapsed, "peak_memory_bytes": peak, "pattern_count": len(result)}))
    return EXIT_OK


# ----------------------------------------------------------------------------
# Driver side
# ----------------------------------------------------------------------------

def plan_runs(args) -> List[dict]:
    variants = [args.constraint_set]
    if args.compare_unconstrained and not args.constraint_set.is_unconstrained:
        variants.append(ConstraintSet())

    jobs = []
    for length in args.lengths:
        for rep in range(args.reps):
            seed = args.seed + 1000 * length + rep
            for miner in args.miners:
                for constraints in variants:
                    jobs.append({
                        "length": length,
                        "alphabet": args.alphabet,
                        "seed": seed,
                        "repetition": rep,
                        "miner": miner,
                        "threshold": args.threshold,
                        "max_pattern_len": args.max_pattern_len,
                        "constraints": constraints.to_dict(),
                        "constrained": not constraints.is_unconstrained,
                        "mem_budget": args.mem_budget,
                    })
    return jobs


def execute(job: dict, time_budget: float) -> BenchRecord:
    """Run one job in a worker process and turn its report into a BenchRecord."""
    cmd = [sys.executable, str(Path(__file__).resolve()), "--run-one", json.dumps(job)]
    measured: dict = {}
    started = time.perf_counter()
    try:
        result = subprocess.run(cmd, capture_output=True, text=True, timeout=time_budget)
        lines = result.stdout.strip().splitlines()
        if result.returncode == 0 and lines:
            measured = json.loads(lines[-1])
        else:
            logger.warning("Run %s/%s seed %d failed (code %d): %s",
                           job["miner"], job["length"], job["seed"], result.returncode,
                           result.stderr.strip()[-300:])
            measured = {"censored": "crash"}
    except subprocess.TimeoutExpired:
        measured = {"censored": "time"}
    except json.JSONDecodeError as e:
        logger.warning("Unreadable worker report for seed %d: %s", job["seed"], e)
        measured = {"censored": "crash"}

    censored = "censored" in measured
    return BenchRecord(
        sequence_length=job["length"],
        alphabet_size=job["alphabet"],
        threshold=job["threshold"],
        miner=job["miner"],
        constrained=job["constrained"],
        wall_time_s=time.perf_counter() - started if censored else measured["wall_time_s"],
        peak_memory_bytes=None if censored else measured["peak_memory_bytes"],
        pattern_count=None if censored else measured["pattern_count"],
        repetition=job["repetition"],
        seed=job["seed"],
        censored=censored,
    )


def summarize(records: List[BenchRecord]) -> List[str]:
    groups: Dict[Tuple[int, str, bool], List[BenchRecord]] = {}
    for rec in records:
        groups.setdefault((rec.sequence_length, rec.miner, rec.constrained), []).append(rec)

    lines = []
    for (length, miner, constrained), recs in sorted(groups.items()):
        done = [r for r in recs if not r.censored]
        label = f"  |S|={length:<4} {miner:<11} {'constrained' if constrained else 'unconstrained':<13}"
        if not done:
            lines.append(f"{label} all {len(recs)} runs censored")
            continue
        times = np.array([r.wall_time_s for r in done])
        memory = np.array([r.peak_memory_bytes for r in done], dtype=float)
        counts = np.array([r.pattern_count for r in done], dtype=float)
        line = (f"{label} {times.mean():.3f}s ± {times.std():.3f}s, "
                f"{memory.mean() / 2**20:.1f} MiB, {counts.mean():.1f} patterns")
        if len(done) < len(recs):
            line += f" ({len(recs) - len(done)} censored)"
        lines.append(line)
    return lines


def main(argv=None) -> int:
    settings = load_settings()
    argv = sys.argv[1:] if argv is None else argv
    if argv[:1] == ["--run-one"]:
        return run_one(json.loads(argv[1]))

    args = parse_args(argv, settings)
    setup_logging(settings.log_level)
    print_header("RUN BENCHMARKS")

    jobs = plan_runs(args)
    if "naive" in args.miners:
        status("⚠ The naive miner runs forced; runs over the time budget are censored")
    status(f"  Lengths: {args.lengths[0]}..{args.lengths[-1]} ({len(args.lengths)} values), reps {args.reps}")
    status(f"  Alphabet {args.alphabet}, threshold {format_threshold(args.threshold)}, "
           f"max pattern length {args.max_pattern_len}, constraints {args.constraint_set.describe()}")
    status(f"  {len(jobs)} runs, time budget {args.time_budget:g}s, "
           f"memory budget {args.mem_budget or 'none'}")

    buffer = io.StringIO()
    writers = [csv.DictWriter(sys.stdout, fieldnames=CSV_FIELDS), csv.DictWriter(buffer, fieldnames=CSV_FIELDS)]
    for writer in writers:
        writer.writeheader()
    sys.stdout.flush()

    records = []
    try:
        with ThreadPoolExecutor(max_workers=args.jobs) as executor:
            for record in executor.map(lambda job: execute(job, args.time_budget), jobs):
                for writer in writers:
                    writer.writerow(record.to_row())
                sys.stdout.flush()
                records.append(record)
    except SerialMinerError as e:
        return fail(e)

    if args.save:
        settings.bench_output_dir.mkdir(parents=True, exist_ok=True)
        path = settings.bench_output_dir / f"bench-{datetime.now().strftime('%Y%m%d-%H%M%S')}.csv"
        path.write_text(buffer.getvalue(), encoding="utf-8")
        status(f"✓ Saved {path}")

    status("")
    status("Summary (mean ± std over uncensored runs):")
    for line in summarize(records):
        status(line)
    censored = sum(r.censored for r in records)
    status(f"✓ {len(records)} runs, {censored} censored")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
