#!/usr/bin/env python3
"""
Serial Miner - Command Dispatcher

Entry point for the frequent string pattern miner. Each command runs the
matching stage script with the remaining arguments and returns its exit code:

    python main.py mine --input sequences/example3.seq --threshold 2
    python main.py generate --length 100 --alphabet 10 --seed 1
    python main.py verify --trials 1000 --constraint-rate 0.5
    python main.py bench --profile scaling
"""

import subprocess
import sys
from pathlib import Path

from serialminer.env_loader import init_env

ROOT = Path(__file__).resolve().parent

COMMANDS = {
    "prerequisites": ("0-prerequisites/prerequisites.py", "Check packages and create .env"),
    "generate": ("1-generate-sequence/generate_sequence.py", "Write a seeded random sequence"),
    "mine": ("2-mine-patterns/mine_patterns.py", "Mine frequent patterns of a sequence file"),
    "verify": ("3-verify-miners/verify_miners.py", "Fuzz the miners against the oracle"),
    "bench": ("4-run-benchmarks/run_benchmarks.py", "Time both miners on generated sequences"),
    "tests": ("5-tests/run_tests.py", "Run the test scripts"),
}


def print_header():
    """Print the main header."""
    print("=" * 60, file=sys.stderr)
    print("SERIAL MINER", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(file=sys.stderr)


def print_commands():
    """Print the available commands."""
    print("Usage: python main.py <command> [flags]", file=sys.stderr)
    print(file=sys.stderr)
    print("Available commands:", file=sys.stderr)
    for name, (script, description) in COMMANDS.items():
        print(f"  {name:<14} {description}", file=sys.stderr)
        print(f"  {'':<14} ({script})", file=sys.stderr)
    print(file=sys.stderr)
    print("Run 'python main.py <command> --help' for the flags of a command.", file=sys.stderr)


def run_script(script_path: str, *args) -> int:
    """Run a stage script with the given arguments and return its exit code."""
    cmd = [sys.executable, str(ROOT / script_path)] + list(args)
    try:
        return subprocess.run(cmd, cwd=Path.cwd()).returncode
    except KeyboardInterrupt:
        print("\n✗ Interrupted", file=sys.stderr)
        return 130


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    # .env values become visible to every stage script through the environment
    init_env()

    if not argv or argv[0] in ("-h", "--help", "help"):
        print_header()
        print_commands()
        return 0

    command, rest = argv[0], argv[1:]
    if command not in COMMANDS:
        print(f"✗ Unknown command: {command}", file=sys.stderr)
        print_commands()
        return 2
    return run_script(COMMANDS[command][0], *rest)


if __name__ == "__main__":
    sys.exit(main())
