#!/usr/bin/env python3
"""
Generate Sequence

Writes a seeded random itemset sequence (one singleton itemset per timestamp,
items equiprobable over 1..alphabet) in the sequence file format. The same
length, alphabet and seed always produce the same file.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.cli_common import fail, non_negative_int, positive_int, setup_logging, status
from serialminer.env_loader import load_settings
from serialminer.errors import EXIT_OK, SerialMinerError
from serialminer.sequence_model import generate_random_sequence, serialize_sequence, write_sequence_file


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Generate a seeded random itemset sequence")
    parser.add_argument("--length", type=non_negative_int, required=True,
                        help="Number of itemsets (timestamps 1..length)")
    parser.add_argument("--alphabet", "--ql", dest="alphabet", type=positive_int, required=True,
                        help="Alphabet size; items are the tokens 1..alphabet")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument("--output", help="Write to this file instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = load_settings()
    setup_logging(settings.log_level)

    try:
        sequence = generate_random_sequence(args.length, args.alphabet, args.seed)
    except SerialMinerError as e:
        return fail(e)

    if args.output:
        write_sequence_file(args.output, sequence)
        status(f"✓ Wrote {sequence.length} itemsets over {args.alphabet} items to {args.output}")
    else:
        sys.stdout.write(serialize_sequence(sequence))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
