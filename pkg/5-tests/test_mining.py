#!/usr/bin/env python3
"""
Tests for the incremental and naive miners.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from serialminer.errors import ParameterError, SafetyBoundError
from serialminer.mining import (
    MiningParams,
    MiningResult,
    extend_occurrences,
    frequent_items,
    iter_levels,
    mine,
    mine_naive,
)
from serialminer.occurrences import ConstraintSet, MinimalOccurrenceSet, minimal_occurrences
from serialminer.sequence_model import generate_random_sequence, parse_sequence, read_sequence_file

SEQUENCES = Path(__file__).resolve().parent.parent / "sequences"
EXAMPLE3 = read_sequence_file(SEQUENCES / "example3.seq")
EXAMPLE2 = read_sequence_file(SEQUENCES / "example2.seq")
AAAA = read_sequence_file(SEQUENCES / "aaaa.seq")
ABAB = read_sequence_file(SEQUENCES / "abab.seq")

EXAMPLE3_FREQUENT = ["a", "b", "c", "ab", "ac", "bb", "bc", "cb", "cc", "acb", "acc", "bcc", "ccc"]


def as_strings(result: MiningResult, sequence) -> set:
    return {"".join(sequence.tokens(p)) for p in result.patterns}


def test_golden_frequent_set():
    """σ=2 on a (bc) (abc) c (bc) gives exactly 13 patterns with both miners."""
    print("Testing the golden frequent set...")

    params = MiningParams(threshold=2)
    started = time.perf_counter()
    incremental = mine(EXAMPLE3, params)
    naive = mine_naive(EXAMPLE3, params)
    elapsed = time.perf_counter() - started

    assert as_strings(incremental, EXAMPLE3) == set(EXAMPLE3_FREQUENT), as_strings(incremental, EXAMPLE3)
    assert as_strings(naive, EXAMPLE3) == set(EXAMPLE3_FREQUENT), as_strings(naive, EXAMPLE3)
    assert len(incremental) == 13
    assert [r.occurrences.occurrences for r in incremental] == [r.occurrences.occurrences for r in naive]
    assert elapsed < 1.0, f"both miners took {elapsed:.2f}s"
    print(f"  13 patterns, {elapsed * 1000:.1f} ms for both miners")

    print("✓ Golden frequent set reproduced")
    return True


def test_frequent_items():
    print("Testing frequent_items...")

    items = {EXAMPLE3.alphabet.token_of(r.pattern[0]): r.support for r in frequent_items(EXAMPLE3, MiningParams(2))}
    assert items == {"a": 2, "b": 3, "c": 4}, items
    assert frequent_items(EXAMPLE3, MiningParams(6)) == []
    excluded = ConstraintSet(excluded_items={EXAMPLE3.alphabet.id_of("b")})
    assert len(frequent_items(EXAMPLE3, MiningParams(2, constraints=excluded))) == 2

    print("✓ Frequent items counted")
    return True


def test_extend_occurrences_examples():
    print("Testing extend_occurrences...")

    a = AAAA.alphabet.id_of("a")
    single = MinimalOccurrenceSet((a,), ((1,), (2,), (3,), (4,)))
    assert extend_occurrences((a,), single, a, AAAA).occurrences == ((1, 2), (2, 3), (3, 4))

    ac = EXAMPLE2.encode("ac")
    d = EXAMPLE2.alphabet.id_of("d")
    given = MinimalOccurrenceSet(ac, ((1, 2), (3, 4)))
    assert extend_occurrences(ac, given, d, EXAMPLE2).occurrences == ((3, 4, 5),)

    b = EXAMPLE2.alphabet.id_of("b")
    assert extend_occurrences(ac, given, b, EXAMPLE2).occurrences == (), "no b after any occurrence"

    print("✓ Extension examples hold")
    return True


def test_extension_under_max_gap_uses_frontier():
    print("Testing extension under max_gap...")

    seq = read_sequence_file(SEQUENCES / "maxgap.seq")
    constraints = ConstraintSet(max_gap=2)
    result = mine(seq, MiningParams(1, constraints=constraints))
    abc = result.get(seq.encode("abc"))
    assert abc is not None, "abc has an admissible occurrence"
    assert abc.occurrences.occurrences == ((1, 3, 5),), abc.occurrences
    ab = result.get(seq.encode("ab"))
    assert ab.occurrences.occurrences == ((1, 2),)
    assert ab.occurrences.frontier == ((1, 2), (1, 3))

    print("✓ Extension is exact under max_gap")
    return True


def test_threshold_handling():
    print("Testing thresholds...")

    assert len(mine(EXAMPLE3, MiningParams(100))) == 0
    assert len(mine(EXAMPLE3, MiningParams(EXAMPLE3.size + 1))) == 0
    relative = mine(EXAMPLE3, MiningParams(0.4))
    assert relative.threshold == 2 and as_strings(relative, EXAMPLE3) == set(EXAMPLE3_FREQUENT)

    assert MiningParams(0.1).resolve_threshold(generate_random_sequence(30, 2, 0)) == 3
    assert MiningParams(0.1).resolve_threshold(generate_random_sequence(20, 2, 0)) == 2
    assert MiningParams(0.1).resolve_threshold(generate_random_sequence(5, 2, 0)) == 1

    for bad in (0, -3, 1.5, 0.0, True, "2"):
        try:
            MiningParams(bad)
        except ParameterError:
            continue
        raise AssertionError(f"threshold {bad!r} should be rejected")

    print("✓ Thresholds resolved")
    return True


def test_small_worked_results():
    print("Testing small sequences...")

    result = mine(AAAA, MiningParams(2, max_pattern_len=3))
    assert {"".join(AAAA.tokens(p)): s for p, s in result.supports.items()} == {"a": 4, "aa": 3, "aaa": 2}
    assert mine_naive(AAAA, MiningParams(2, max_pattern_len=3)).supports == result.supports

    ab = mine(ABAB, MiningParams(2)).get(ABAB.encode("ab"))
    assert ab is not None and ab.occurrences.occurrences == ((1, 2), (3, 4))

    single = parse_sequence("1 a")
    assert mine(single, MiningParams(1)).patterns == [(1,)]
    assert len(mine(parse_sequence(""), MiningParams(1))) == 0

    print("✓ Small sequences mined")
    return True


def test_exclusion_and_length_constraints():
    print("Testing item and length constraints...")

    a = EXAMPLE3.alphabet.id_of("a")
    result = mine(EXAMPLE3, MiningParams(2, constraints=ConstraintSet(excluded_items={a})))
    assert result.patterns and all(a not in p for p in result.patterns)
    assert as_strings(result, EXAMPLE3) == {p for p in EXAMPLE3_FREQUENT if "a" not in p}

    short = mine(EXAMPLE3, MiningParams(2, max_pattern_len=1))
    assert as_strings(short, EXAMPLE3) == {"a", "b", "c"}
    capped = mine(EXAMPLE3, MiningParams(2, constraints=ConstraintSet(max_pattern_len=2)))
    assert capped.levels == 2

    print("✓ Item and length constraints respected")
    return True


def test_anti_monotonicity_and_oracle_agreement():
    print("Testing anti-monotonicity on random sequences...")

    for seed in range(5):
        seq = generate_random_sequence(35, 3, seed)
        result = mine(seq, MiningParams(2, max_pattern_len=5))
        supports = result.supports
        for rec in result:
            if len(rec.pattern) > 1:
                prefix = rec.pattern[:-1]
                assert prefix in supports, f"{rec.pattern} frequent but {prefix} is not"
                assert supports[prefix] >= rec.support
            oracle = minimal_occurrences(rec.pattern, seq)
            assert rec.occurrences.occurrences == oracle.occurrences
            assert rec.occurrences.is_antichain()

    print("✓ Supports decrease along prefixes")
    return True


def test_jobs_do_not_change_output():
    print("Testing --jobs stability...")

    seq = generate_random_sequence(60, 4, 11)
    params = MiningParams(3, max_pattern_len=6)
    serial = mine(seq, params)
    parallel = mine(seq, params, jobs=4)
    assert serial.to_records(seq.alphabet) == parallel.to_records(seq.alphabet)

    levels = [n for n, _ in iter_levels(seq, params)]
    assert levels == list(range(1, serial.levels + 1))

    print("✓ Output identical for any worker count")
    return True


def test_result_helpers():
    print("Testing MiningResult helpers...")

    result = mine(EXAMPLE3, MiningParams(2))
    rows = result.to_records(EXAMPLE3.alphabet)
    assert rows[0] == {"pattern": ["a"], "support": 2, "occurrences": [[1], [3]]}
    assert "occurrences" not in result.to_records(EXAMPLE3.alphabet, with_occurrences=False)[0]
    assert [len(p) for p in result.patterns] == sorted(len(p) for p in result.patterns)
    assert {n: len(recs) for n, recs in result.by_length().items()} == {1: 3, 2: 6, 3: 4}
    assert result.get((3, 3, 3, 3)) is None

    print("✓ Helpers consistent")
    return True


def test_naive_safety_bound():
    print("Testing the naive safety bound...")

    seq = generate_random_sequence(20, 10, 3)
    try:
        mine_naive(seq, MiningParams(2, max_pattern_len=10))
    except SafetyBoundError:
        pass
    else:
        raise AssertionError("10^10 candidates should be refused")

    long_seq = generate_random_sequence(45, 2, 3)
    try:
        mine_naive(long_seq, MiningParams(2, max_pattern_len=3))
    except SafetyBoundError:
        pass
    else:
        raise AssertionError("45 entries exceed the oracle bound")
    forced = mine_naive(long_seq, MiningParams(5, max_pattern_len=3), force=True)
    assert forced.supports == mine(long_seq, MiningParams(5, max_pattern_len=3)).supports

    print("✓ Naive miner refuses oversized runs unless forced")
    return True


def test_incremental_faster_than_naive():
    """|S|=20, 10 items, σ=10%, patterns up to length 10; summed over two seeded sequences."""
    print("Testing incremental vs naive timing trend...")

    params = MiningParams(0.1, max_pattern_len=10)
    incremental_time = naive_time = 0.0
    for seed in range(2):
        seq = generate_random_sequence(20, 10, seed)
        started = time.perf_counter()
        fast = mine(seq, params)
        incremental_time += time.perf_counter() - started
        started = time.perf_counter()
        slow = mine_naive(seq, params, force=True)
        naive_time += time.perf_counter() - started
        assert fast.supports == slow.supports
    print(f"  incremental {incremental_time:.4f}s, naive {naive_time:.4f}s")
    assert incremental_time < naive_time

    print("✓ Incremental miner is faster")
    return True


def test_constraints_shrink_the_answer():
    """Gap and duration bounds give no more patterns and no more time, summed over five sequences."""
    print("Testing constrained vs unconstrained runs...")

    constrained = ConstraintSet(max_gap=7, min_gap=1, max_duration=20)
    free_total = bounded_total = 0
    free_time = bounded_time = 0.0
    for seed in range(5):
        seq = generate_random_sequence(70, 7, seed)
        started = time.perf_counter()
        free_total += len(mine(seq, MiningParams(0.1, max_pattern_len=10)))
        free_time += time.perf_counter() - started
        started = time.perf_counter()
        bounded_total += len(mine(seq, MiningParams(0.1, max_pattern_len=10, constraints=constrained)))
        bounded_time += time.perf_counter() - started
    print(f"  unconstrained {free_total} patterns in {free_time:.4f}s, constrained {bounded_total} in {bounded_time:.4f}s")
    assert bounded_total <= free_total
    assert bounded_time <= free_time

    print("✓ Constraints shrink the answer and the run time")
    return True


def main():
    """Run all tests"""
    print("Running miner tests...\n")

    tests = [
        test_golden_frequent_set,
        test_frequent_items,
        test_extend_occurrences_examples,
        test_extension_under_max_gap_uses_frontier,
        test_threshold_handling,
        test_small_worked_results,
        test_exclusion_and_length_constraints,
        test_anti_monotonicity_and_oracle_agreement,
        test_jobs_do_not_change_output,
        test_result_helpers,
        test_naive_safety_bound,
        test_incremental_faster_than_naive,
        test_constraints_shrink_the_answer,
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
