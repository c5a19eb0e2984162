#!/usr/bin/env python3
"""
Mine Patterns

Mines the frequent string patterns of a sequence file and writes one JSON
object per pattern:

    {"pattern": ["a", "c"], "support": 2, "occurrences": [[1, 3], [3, 4]]}

Records go to stdout (or --output); the summary goes to stderr.

Exit codes: 0 success, 2 bad flags, 3 unreadable or malformed input,
4 the naive miner's safety bound was hit without --force.
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.cli_common import (
    add_common_flags,
    build_constraints,
    fail,
    format_threshold,
    print_header,
    setup_logging,
    status,
)
from serialminer.env_loader import load_settings
from serialminer.errors import EXIT_INPUT, EXIT_OK, SerialMinerError
from serialminer.mining import MiningParams, mine, mine_naive
from serialminer.sequence_model import read_sequence_file


def build_parser(settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Mine frequent string patterns under minimal occurrences")
    parser.add_argument("--input", required=True, help="Sequence file to mine")
    add_common_flags(parser, settings)
    parser.add_argument("--no-occurrences", action="store_true",
                        help="Omit occurrence lists from the output records")
    parser.add_argument("--output", help="Write records to this file instead of stdout")
    return parser


def main(argv=None) -> int:
    settings = load_settings()
    args = build_parser(settings).parse_args(argv)
    setup_logging(settings.log_level)

    print_header("MINE PATTERNS")
    try:
        sequence = read_sequence_file(args.input)
    except OSError as e:
        status(f"✗ Cannot read {args.input}: {e.strerror or e}")
        return EXIT_INPUT
    except SerialMinerError as e:
        return fail(e)

    miner = "naive" if args.naive else "incremental"
    try:
        params = MiningParams(
            threshold=args.threshold,
            max_pattern_len=args.max_pattern_len,
            constraints=build_constraints(args, sequence.alphabet),
        )
        status(f"  Input: {args.input} ({sequence.length} itemsets, {len(sequence.alphabet)} items)")
        status(f"  Threshold: {format_threshold(args.threshold)} -> σ={params.resolve_threshold(sequence)}")
        status(f"  Constraints: {params.constraints.describe()}")
        status(f"  Miner: {miner}")

        started = time.perf_counter()
        if args.naive:
            result = mine_naive(
                sequence,
                params,
                force=args.force,
                max_candidates=settings.naive_max_candidates,
                oracle_max_entries=settings.oracle_max_entries,
            )
        else:
            result = mine(sequence, params, jobs=args.jobs)
        elapsed = time.perf_counter() - started
    except SerialMinerError as e:
        return fail(e)

    rows = result.to_records(sequence.alphabet, with_occurrences=not args.no_occurrences)
    lines = "".join(json.dumps(row, separators=(",", ":")) + "\n" for row in rows)
    if args.output:
        Path(args.output).write_text(lines, encoding="utf-8")
    else:
        sys.stdout.write(lines)

    status(f"✓ {len(result)} frequent patterns, {result.levels} levels, {elapsed:.3f}s")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
