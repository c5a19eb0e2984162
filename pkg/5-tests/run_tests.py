#!/usr/bin/env python3
"""
Run Tests

Runs every test script in this directory in its own interpreter and prints a
summary. Exits non-zero when any script fails.
"""

import subprocess
import sys
import time
from pathlib import Path

TEST_SCRIPTS = [
    ("test_sequence_model.py", "Sequence model tests"),
    ("test_occurrences.py", "Occurrence and oracle tests"),
    ("test_mining.py", "Miner tests"),
    ("test_verification.py", "Randomized agreement tests"),
    ("test_cli.py", "Command tests"),
]


def print_header():
    """Print the run tests header."""
    print("=" * 60)
    print("RUN TESTS")
    print("=" * 60)
    print()


def run_script(script_path: Path, description: str, cwd: str) -> bool:
    """Run a test script and return success status."""
    print(f"Running {description}...")
    started = time.perf_counter()

    try:
        result = subprocess.run(
            [sys.executable, str(script_path)],
            capture_output=True,
            text=True,
            cwd=cwd,
        )
    except OSError as e:
        print(f"  ✗ {description} failed with error: {e}")
        return False

    elapsed = time.perf_counter() - started
    if result.returncode == 0:
        print(f"  ✓ {description} passed ({elapsed:.1f}s)")
        return True

    print(f"  ✗ {description} failed")
    failures = [line for line in result.stdout.splitlines() if line.startswith(("✗", "  ✗"))]
    for line in failures[:10]:
        print(f"    {line.strip()}")
    if result.stderr:
        print(f"    Error: {result.stderr.strip()[-2000:]}")
    return False


def main():
    """Main test function."""
    print_header()

    tests_dir = Path(__file__).resolve().parent
    only = set(sys.argv[1:])

    results = []
    for script, description in TEST_SCRIPTS:
        if only and script not in only and script.removesuffix(".py") not in only:
            continue
        script_path = tests_dir / script
        if not script_path.exists():
            print(f"  ⚠ {description} script not found")
            results.append((description, False))
            continue
        results.append((description, run_script(script_path, description, str(tests_dir))))

    print()
    print("=" * 60)
    print("TEST SUMMARY")
    print("=" * 60)

    passed = sum(1 for _, ok in results if ok)
    print(f"Total test scripts: {len(results)}")
    print(f"Passed: {passed}")
    print(f"Failed: {len(results) - passed}")
    print()

    for description, ok in results:
        if not ok:
            print(f"  ✗ {description}")

    if passed == len(results):
        print("✓ All tests passed!")
        return 0
    print("⚠ Some tests failed. Please check the issues above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
