"""
Flag parsing and console helpers shared by the stage scripts.

Human-readable status goes to stderr; stdout is reserved for machine output
(JSON lines, sequence text, CSV) so scripts can be piped.
"""

import argparse
import logging
import sys
from typing import List, Optional, Union

from serialminer.env_loader import Settings
from serialminer.errors import SerialMinerError
from serialminer.occurrences import ConstraintSet
from serialminer.sequence_model import SymbolTable


def print_header(title: str) -> None:
    """Print a ruled section header to stderr."""
    print("=" * 60, file=sys.stderr)
    print(title, file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def status(message: str) -> None:
    print(message, file=sys.stderr)


def fail(error: SerialMinerError) -> int:
    """Report a library error and return the exit code it maps to."""
    status(f"✗ {error}")
    return error.exit_code


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def parse_threshold(text: str) -> Union[int, float]:
    """'N' is an absolute support count, 'P%' a percentage of |S|."""
    text = text.strip()
    try:
        if text.endswith("%"):
            value = float(text[:-1]) / 100.0
            if not 0 < value <= 1:
                raise argparse.ArgumentTypeError(f"percentage must be in (0, 100], got {text}")
            return value
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threshold must be N or P%, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"threshold must be >= 1, got {value}")
    return value


def format_threshold(threshold: Union[int, float]) -> str:
    if isinstance(threshold, float):
        return f"{threshold * 100:g}%"
    return str(threshold)


def parse_lengths(text: str) -> List[int]:
    """'A..B:STEP' (inclusive), 'A..B' (step 1), or a comma list."""
    try:
        if ".." in text:
            span, _, step = text.partition(":")
            start, _, stop = span.partition("..")
            step_value = int(step) if step else 1
            if step_value < 1:
                raise argparse.ArgumentTypeError(f"step must be >= 1 in {text!r}")
            values = list(range(int(start), int(stop) + 1, step_value))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"lengths must look like A..B:STEP or A,B,C, got {text!r}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"lengths must be non-negative and non-empty, got {text!r}")
    return values


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {value}")
    return value


def split_tokens(text: Optional[str]) -> List[str]:
    return [token.strip() for token in (text or "").split(",") if token.strip()]


def add_constraint_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-pattern-len", type=positive_int, default=10,
                        help="Maximal pattern length (default: 10)")
    parser.add_argument("--min-gap", type=non_negative_int, default=1,
                        help="Minimal timestamp gap between consecutive items (default: 1)")
    parser.add_argument("--max-gap", type=positive_int, default=None,
                        help="Maximal timestamp gap between consecutive items (default: unbounded)")
    parser.add_argument("--max-duration", type=non_negative_int, default=None,
                        help="Maximal last-minus-first timestamp of an occurrence (default: unbounded)")
    parser.add_argument("--exclude", default="",
                        help="Comma-separated item tokens that may not appear in patterns")


def add_common_flags(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument("--threshold", type=parse_threshold, default=1,
                        help="Minimal support: N (absolute) or P%% of |S| (default: 1)")
    add_constraint_flags(parser)
    parser.add_argument("--naive", action="store_true", help="Use the generate-and-test miner")
    parser.add_argument("--force", action="store_true", help="Ignore the naive miner / oracle safety bounds")
    parser.add_argument("--jobs", type=positive_int, default=settings.jobs,
                        help=f"Worker count (default: {settings.jobs})")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")


def build_constraints(args: argparse.Namespace, alphabet: SymbolTable) -> ConstraintSet:
    """ConstraintSet from the shared constraint flags; unknown excluded tokens are skipped."""
    excluded = set()
    for token in split_tokens(args.exclude):
        if token in alphabet:
            excluded.add(alphabet.id_of(token))
        else:
            logging.getLogger(__name__).info("Excluded item %r does not occur in the sequence", token)
    return ConstraintSet(
        excluded_items=frozenset(excluded),
        max_duration=args.max_duration,
        min_gap=args.min_gap,
        max_gap=args.max_gap,
    )
