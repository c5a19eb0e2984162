#!/usr/bin/env python3
"""
Verify Miners

Fuzzes the incremental miner against the naive miner and the brute-force
oracle. Each trial draws a small random sequence and random mining parameters
(optionally random gap/duration/exclusion constraints) from its own seed,
seed = --seed + trial index, so any trial can be replayed alone.

On the first failing trial the counterexample is printed to stdout as JSON
(and written to --save-counterexample if given) and the exit code is 1.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.cli_common import fail, positive_int, print_header, setup_logging, status
from serialminer.env_loader import load_settings
from serialminer.errors import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, SerialMinerError
from serialminer.verification import Trial, TrialConfig, check_trial, run_trial


def constraint_rate(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"constraint rate must be in [0, 1], got {value}")
    return value


def build_parser(settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Cross-check mine(), mine_naive() and the oracle")
    parser.add_argument("--trials", type=int, default=500, help="Number of fuzz trials (default: 500)")
    parser.add_argument("--max-seq-len", type=positive_int, default=20,
                        help="Maximal sequence length per trial (default: 20)")
    parser.add_argument("--max-alphabet", type=positive_int, default=4,
                        help="Maximal alphabet size per trial (default: 4)")
    parser.add_argument("--max-pattern-len", type=positive_int, default=4,
                        help="Maximal pattern length per trial (default: 4)")
    parser.add_argument("--max-threshold", type=positive_int, default=4,
                        help="Maximal absolute threshold per trial (default: 4)")
    parser.add_argument("--constraint-rate", type=constraint_rate, default=0.0,
                        help="Fraction of trials with random constraints (default: 0)")
    parser.add_argument("--seed", type=int, default=0, help="Base seed (default: 0)")
    parser.add_argument("--jobs", type=positive_int, default=settings.jobs,
                        help=f"Worker processes (default: {settings.jobs})")
    parser.add_argument("--save-counterexample", help="Also write a failing trial to this JSON file")
    parser.add_argument("--replay", help="Re-check a saved counterexample instead of fuzzing")
    return parser


def report_failure(trial: dict, problems, save_path) -> int:
    status(f"✗ Trial {trial['index']} (seed {trial['seed']}) failed:")
    for problem in problems[:20]:
        status(f"    {problem}")
    if len(problems) > 20:
        status(f"    ... and {len(problems) - 20} more")
    document = dict(trial, problems=problems)
    print(json.dumps(document, indent=2))
    if save_path:
        Path(save_path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        status(f"  Counterexample saved to {save_path}")
    return EXIT_MISMATCH


def replay(path: str) -> int:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        trial = Trial.from_dict(data)
    except (OSError, ValueError, KeyError) as e:
        status(f"✗ Cannot load counterexample {path}: {e}")
        return EXIT_INPUT
    except SerialMinerError as e:
        return fail(e)

    problems = check_trial(trial)
    if problems:
        return report_failure(trial.to_dict(), problems, None)
    status(f"✓ Trial {trial.index} (seed {trial.seed}) now passes")
    return EXIT_OK


def main(argv=None) -> int:
    settings = load_settings()
    args = build_parser(settings).parse_args(argv)
    setup_logging(settings.log_level)

    print_header("VERIFY MINERS")
    if args.replay:
        return replay(args.replay)
    if args.trials < 1:
        status(f"✗ --trials must be >= 1, got {args.trials}")
        return EXIT_USAGE

    config = TrialConfig(
        max_seq_len=args.max_seq_len,
        max_alphabet=args.max_alphabet,
        max_pattern_len=args.max_pattern_len,
        max_threshold=args.max_threshold,
        constraint_rate=args.constraint_rate,
    )
    status(f"  Trials: {args.trials} (seeds {args.seed}..{args.seed + args.trials - 1})")
    status(f"  |S| <= {config.max_seq_len}, alphabet <= {config.max_alphabet}, "
           f"pattern length <= {config.max_pattern_len}, constraint rate {config.constraint_rate:g}")

    jobs = [(index, args.seed + index, config) for index in range(args.trials)]
    started = time.perf_counter()
    if args.jobs > 1:
        executor = ProcessPoolExecutor(max_workers=args.jobs)
        outcomes = executor.map(run_trial, jobs, chunksize=16)
    else:
        executor = None
        outcomes = map(run_trial, jobs)

    try:
        for index, problems, trial in outcomes:
            if problems:
                return report_failure(trial, problems, args.save_counterexample)
    finally:
        if executor is not None:
            executor.shutdown(wait=True, cancel_futures=True)

    elapsed = time.perf_counter() - started
    status(f"✓ All {args.trials} trials agree ({elapsed:.1f}s)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
