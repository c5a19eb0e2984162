"""
Randomized cross-checking of the two miners against the oracle.

A trial is a small random sequence (itemsets of size 1-2, timestamps that may
skip values) with random mining parameters and, optionally, random
gap/duration/exclusion constraints. check_trial() mines it both ways and
reports every disagreement or broken structural property as a string.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from serialminer.mining import MiningParams, MiningResult, mine, mine_naive
from serialminer.occurrences import ConstraintSet, minimal_occurrences
from serialminer.sequence_model import SymbolTable, TimedSequence, parse_sequence, serialize_sequence


@dataclass(frozen=True)
class TrialConfig:
    max_seq_len: int = 20
    max_alphabet: int = 4
    max_pattern_len: int = 4
    max_threshold: int = 4
    constraint_rate: float = 0.0


@dataclass(frozen=True)
class Trial:
    index: int
    seed: int
    sequence: TimedSequence
    params: MiningParams

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "sequence": serialize_sequence(self.sequence),
            "alphabet": list(self.sequence.alphabet.symbols),
            "entries": [[t, list(items)] for t, items in self.sequence.entries],
            "threshold": self.params.threshold,
            "max_pattern_len": self.params.max_pattern_len,
            "constraints": self.params.constraints.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Trial":
        if "entries" in data:
            alphabet = SymbolTable(tuple(data["alphabet"]))
            sequence = TimedSequence(tuple((t, tuple(items)) for t, items in data["entries"]), alphabet)
        else:
            sequence = parse_sequence(data["sequence"])
        params = MiningParams(
            threshold=data["threshold"],
            max_pattern_len=data["max_pattern_len"],
            constraints=ConstraintSet.from_dict(data.get("constraints", {})),
        )
        return cls(data.get("index", 0), data.get("seed", 0), sequence, params)


def _random_constraints(rng: np.random.Generator, alphabet_size: int) -> ConstraintSet:
    min_gap = int(rng.integers(1, 3))
    max_gap = None if rng.random() < 0.3 else min_gap + int(rng.integers(0, 4))
    max_duration = None if rng.random() < 0.4 else int(rng.integers(0, 10))
    excluded = frozenset()
    if alphabet_size > 1 and rng.random() < 0.3:
        excluded = frozenset({int(rng.integers(1, alphabet_size + 1))})
    return ConstraintSet(excluded_items=excluded, max_duration=max_duration, min_gap=min_gap, max_gap=max_gap)


def random_trial(index: int, seed: int, config: TrialConfig) -> Trial:
    rng = np.random.Generator(np.random.PCG64(seed))
    alphabet_size = int(rng.integers(1, config.max_alphabet + 1))
    length = int(rng.integers(0, config.max_seq_len + 1))

    entries = []
    t = 0
    for _ in range(length):
        t += int(rng.integers(1, 3))
        size = int(rng.integers(1, min(2, alphabet_size) + 1))
        items = rng.choice(alphabet_size, size=size, replace=False) + 1
        entries.append((t, tuple(sorted(int(i) for i in items))))
    sequence = TimedSequence(tuple(entries), SymbolTable.identity(alphabet_size))

    constrained = rng.random() < config.constraint_rate
    params = MiningParams(
        threshold=int(rng.integers(1, config.max_threshold + 1)),
        max_pattern_len=int(rng.integers(1, config.max_pattern_len + 1)),
        constraints=_random_constraints(rng, alphabet_size) if constrained else ConstraintSet(),
    )
    return Trial(index, seed, sequence, params)


def _compare_results(incremental: MiningResult, naive: MiningResult) -> List[str]:
    problems = []
    inc = {rec.pattern: rec.occurrences.occurrences for rec in incremental}
    nai = {rec.pattern: rec.occurrences.occurrences for rec in naive}
    for pattern in sorted(set(inc) | set(nai), key=lambda p: (len(p), p)):
        if pattern not in nai:
            problems.append(f"pattern {list(pattern)} mined incrementally but not by the naive miner")
        elif pattern not in inc:
            problems.append(f"pattern {list(pattern)} mined by the naive miner but not incrementally")
        elif inc[pattern] != nai[pattern]:
            problems.append(
                f"pattern {list(pattern)}: incremental occurrences {inc[pattern]} != naive {nai[pattern]}"
            )
    return problems


def check_trial(trial: Trial) -> List[str]:
    """Every mismatch between mine(), mine_naive() and the oracle, plus any
    broken antichain / anti-monotonicity / prefix property."""
    sequence, params = trial.sequence, trial.params
    constraints = params.constraints

    incremental = mine(sequence, params)
    naive = mine_naive(sequence, params, force=True)
    problems = _compare_results(incremental, naive)

    mined = {rec.pattern: rec.occurrences for rec in incremental}
    for rec in incremental:
        oracle = minimal_occurrences(rec.pattern, sequence, constraints, force=True)
        if rec.occurrences.occurrences != oracle.occurrences:
            problems.append(
                f"pattern {list(rec.pattern)}: mined {rec.occurrences.occurrences} != oracle {oracle.occurrences}"
            )
        if rec.occurrences.frontier != oracle.frontier:
            problems.append(
                f"pattern {list(rec.pattern)}: frontier {rec.occurrences.frontier} != oracle {oracle.frontier}"
            )
        if not rec.occurrences.is_antichain():
            problems.append(f"pattern {list(rec.pattern)}: occurrences are not a ◁-antichain")

        if len(rec.pattern) < 2:
            continue
        parent = mined.get(rec.pattern[:-1])
        if parent is None:
            problems.append(f"pattern {list(rec.pattern)} is frequent but its prefix is not")
            continue
        if constraints.is_unconstrained and parent.support < rec.support:
            problems.append(
                f"pattern {list(rec.pattern)}: support {rec.support} exceeds prefix support {parent.support}"
            )
        pool = parent.occurrences if constraints.max_gap is None else parent.frontier
        for occ in rec.occurrences:
            if occ[:-1] not in pool:
                problems.append(
                    f"pattern {list(rec.pattern)}: prefix of {occ} is not a stored occurrence of the prefix"
                )
    return problems


def run_trial(job: Tuple[int, int, TrialConfig]) -> Tuple[int, List[str], Optional[dict]]:
    """Process-pool entry point: (index, seed, config) -> (index, problems, trial)."""
    index, seed, config = job
    trial = random_trial(index, seed, config)
    problems = check_trial(trial)
    return index, problems, trial.to_dict() if problems else None
