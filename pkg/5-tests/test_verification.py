#!/usr/bin/env python3
"""
Randomized agreement between mine(), mine_naive() and the oracle.
"""

import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.mining import MiningParams, MiningResult, PatternRecord
from serialminer.occurrences import ConstraintSet, MinimalOccurrenceSet
from serialminer.verification import Trial, TrialConfig, _compare_results, check_trial, random_trial, run_trial


def run_fuzz(trials: int, config: TrialConfig, base_seed: int) -> int:
    failures = 0
    for index in range(trials):
        _, problems, trial = run_trial((index, base_seed + index, config))
        if problems:
            failures += 1
            print(f"  ✗ trial {index}: {problems[0]}")
            print(f"    {json.dumps(trial)}")
    return failures


def test_unconstrained_fuzz():
    print("Testing 500 unconstrained trials...")

    started = time.perf_counter()
    failures = run_fuzz(500, TrialConfig(max_seq_len=20, max_alphabet=4), base_seed=0)
    print(f"  {time.perf_counter() - started:.1f}s")
    assert failures == 0, f"{failures} trials disagree"

    print("✓ Miners and oracle agree")
    return True


def test_constrained_fuzz():
    """1000 trials, |S| <= 25, alphabet <= 5, half with random constraints."""
    print("Testing 1000 mixed trials...")

    config = TrialConfig(max_seq_len=25, max_alphabet=5, max_pattern_len=5, constraint_rate=0.5)
    started = time.perf_counter()
    failures = run_fuzz(1000, config, base_seed=10_000)
    elapsed = time.perf_counter() - started
    print(f"  {elapsed:.1f}s")
    assert failures == 0, f"{failures} trials disagree"
    assert elapsed < 300, f"fuzzing took {elapsed:.0f}s"

    print("✓ Miners and oracle agree under constraints")
    return True


def test_trials_are_reproducible():
    print("Testing trial reproducibility...")

    config = TrialConfig(constraint_rate=1.0)
    first = random_trial(3, 1234, config)
    again = random_trial(3, 1234, config)
    assert first.sequence == again.sequence and first.params == again.params

    restored = Trial.from_dict(json.loads(json.dumps(first.to_dict())))
    assert restored.sequence == first.sequence
    assert restored.params == first.params
    assert check_trial(restored) == []

    print("✓ Trials replay from their seed and from JSON")
    return True


def test_mismatches_are_reported():
    print("Testing mismatch reporting...")

    good = MinimalOccurrenceSet((1, 2), ((1, 2), (3, 4)))
    bad = MinimalOccurrenceSet((1, 2), ((1, 2),))
    extra = MinimalOccurrenceSet((2,), ((2,),))
    left = MiningResult((PatternRecord((1, 2), good), PatternRecord((2,), extra)))
    right = MiningResult((PatternRecord((1, 2), bad),))
    problems = _compare_results(left, right)
    assert len(problems) == 2, problems
    assert any("not by the naive miner" in p for p in problems)
    assert any("!= naive" in p for p in problems)

    print("✓ Disagreements are described")
    return True


def test_constraint_rate_extremes():
    print("Testing constraint rate...")

    never = [random_trial(i, i, TrialConfig(constraint_rate=0.0)) for i in range(50)]
    assert all(t.params.constraints == ConstraintSet() for t in never)
    always = [random_trial(i, i, TrialConfig(constraint_rate=1.0)) for i in range(50)]
    assert all(isinstance(t.params, MiningParams) for t in always)
    assert sum(t.params.constraints.bounds_time or bool(t.params.constraints.excluded_items) for t in always) > 25

    print("✓ Constraint rate respected")
    return True


def main():
    """Run all tests"""
    print("Running verification tests...\n")

    tests = [
        test_trials_are_reproducible,
        test_mismatches_are_reported,
        test_constraint_rate_extremes,
        test_unconstrained_fuzz,
        test_constrained_fuzz,
    ]

    passed = 0
    for test in tests:
        try:
            if test():
                passed += 1
            print()
        except Exception as e:
            print(f"✗ {test.__name__} failed: {e}")
            print()

    print(f"Test Results: {passed}/{len(tests)} tests passed")
    return 0 if passed == len(tests) else 1


if __name__ == "__main__":
    sys.exit(main())
