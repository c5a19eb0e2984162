"""
Frequent string pattern miners.

mine()        level-wise: patterns of length n are right-extensions of the
              frequent patterns of length n-1, and their occurrences are
              built from the stored occurrences of the parent.
mine_naive()  generate-and-test: every level is generated from scratch and
              each candidate's support comes from the brute-force oracle.

Both return the same MiningResult, canonically ordered by (length, item ids).
"""

import logging
import math
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from serialminer.errors import ParameterError, SafetyBoundError
from serialminer.occurrences import (
    ORACLE_MAX_ENTRIES,
    UNCONSTRAINED,
    ConstraintSet,
    MinimalOccurrenceSet,
    Occurrence,
    minimal_occurrences,
)
from serialminer.sequence_model import ItemId, Pattern, SymbolTable, TimedSequence

logger = logging.getLogger(__name__)

NAIVE_MAX_CANDIDATES = 1_000_000


@dataclass(frozen=True)
class MiningParams:
    """threshold: an int is an absolute support count, a float in (0, 1] a
    fraction of |S| rounded up."""

    threshold: Union[int, float] = 1
    max_pattern_len: int = 10
    constraints: ConstraintSet = field(default_factory=ConstraintSet)

    def __post_init__(self):
        if isinstance(self.threshold, bool):
            raise ParameterError("threshold must be a number")
        if isinstance(self.threshold, int):
            if self.threshold < 1:
                raise ParameterError(f"threshold must be >= 1, got {self.threshold}")
        elif isinstance(self.threshold, float):
            if not 0 < self.threshold <= 1:
                raise ParameterError(f"relative threshold must be in (0, 1], got {self.threshold}")
        else:
            raise ParameterError(f"threshold must be int or float, got {type(self.threshold).__name__}")
        if self.max_pattern_len < 1:
            raise ParameterError(f"max_pattern_len must be >= 1, got {self.max_pattern_len}")

    def resolve_threshold(self, sequence: TimedSequence) -> int:
        if isinstance(self.threshold, int):
            return self.threshold
        # round() first so 0.1 * 30 counts as 3, not 3.0000000000000004
        return max(1, math.ceil(round(self.threshold * sequence.length, 9)))

    @property
    def effective_max_len(self) -> int:
        bound = self.constraints.max_pattern_len
        return self.max_pattern_len if bound is None else min(self.max_pattern_len, bound)


class PatternRecord(NamedTuple):
    pattern: Pattern
    occurrences: MinimalOccurrenceSet

    @property
    def support(self) -> int:
        return len(self.occurrences)


def _pattern_key(pattern: Pattern) -> Tuple[int, Pattern]:
    return len(pattern), pattern


@dataclass(frozen=True)
class MiningResult:
    records: Tuple[PatternRecord, ...] = ()
    threshold: int = 1

    def __post_init__(self):
        ordered = tuple(sorted(self.records, key=lambda rec: _pattern_key(rec.pattern)))
        object.__setattr__(self, "records", ordered)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[PatternRecord]:
        return iter(self.records)

    @property
    def patterns(self) -> List[Pattern]:
        return [rec.pattern for rec in self.records]

    @property
    def supports(self) -> Dict[Pattern, int]:
        return {rec.pattern: rec.support for rec in self.records}

    @property
    def levels(self) -> int:
        return max((len(rec.pattern) for rec in self.records), default=0)

    def get(self, pattern: Sequence[ItemId]) -> Optional[PatternRecord]:
        pattern = tuple(pattern)
        for rec in self.records:
            if rec.pattern == pattern:
                return rec
        return None

    def by_length(self) -> Dict[int, List[PatternRecord]]:
        levels: Dict[int, List[PatternRecord]] = {}
        for rec in self.records:
            levels.setdefault(len(rec.pattern), []).append(rec)
        return levels

    def to_records(self, alphabet: SymbolTable, with_occurrences: bool = True) -> List[dict]:
        out = []
        for rec in self.records:
            row = {
                "pattern": [alphabet.token_of(item) for item in rec.pattern],
                "support": rec.support,
            }
            if with_occurrences:
                row["occurrences"] = [list(o) for o in rec.occurrences]
            out.append(row)
        return out


def frequent_items(sequence: TimedSequence, params: MiningParams) -> List[PatternRecord]:
    """Length-1 patterns whose item appears at >= σ timestamps."""
    if params.effective_max_len < 1:
        return []
    sigma = params.resolve_threshold(sequence)
    excluded = params.constraints.excluded_items
    records = []
    for item, count in sequence.item_counts().items():
        if item in excluded or count < sigma:
            continue
        positions = tuple((t,) for t in sequence.positions(item))
        records.append(PatternRecord((item,), MinimalOccurrenceSet((item,), positions)))
    return records


def _antichain(candidates: List[Occurrence]) -> List[Occurrence]:
    """◁-minimal elements, sorted by start.

    Same end: the later start wins (ties go to the lexicographically smaller
    prefix under ◁). Across ends: a candidate is dropped when an earlier-ending
    one starts no earlier.
    """
    by_end: Dict[int, Occurrence] = {}
    for occ in candidates:
        best = by_end.get(occ[-1])
        if best is None or _beats(occ, best):
            by_end[occ[-1]] = occ
    kept = []
    latest_start = None
    for end in sorted(by_end):
        occ = by_end[end]
        if latest_start is None or occ[0] > latest_start:
            kept.append(occ)
            latest_start = occ[0]
    return sorted(kept)


def _beats(occ: Occurrence, best: Occurrence) -> bool:
    """occ ◁ best, for two occurrences ending at the same timestamp."""
    if occ[0] != best[0]:
        return occ[0] > best[0]
    # equal bounds: ◁ compares the inner timestamps from the right
    return tuple(reversed(occ[1:-1])) < tuple(reversed(best[1:-1]))


def extend_occurrences(
    pattern: Sequence[ItemId],
    occurrences: MinimalOccurrenceSet,
    item: ItemId,
    sequence: TimedSequence,
    constraints: ConstraintSet = UNCONSTRAINED,
) -> MinimalOccurrenceSet:
    """Minimal occurrences (and frontier) of pattern ⊕ item from those of pattern."""
    extended = tuple(pattern) + (item,)
    if not constraints.admits_items(extended):
        return MinimalOccurrenceSet(extended)

    hits = sequence.positions(item)
    anchors = sorted(occurrences.frontier, key=lambda o: o[-1])

    candidates = []
    for anchor in anchors:
        i = bisect_left(hits, anchor[-1] + constraints.min_gap)
        if i < len(hits) and constraints.admits_step(anchor[0], anchor[-1], hits[i]):
            candidates.append(anchor + (hits[i],))

    ends = [a[-1] for a in anchors]
    frontier = []
    for q in hits:
        hi = bisect_right(ends, q - constraints.min_gap)
        lo = 0 if constraints.max_gap is None else bisect_left(ends, q - constraints.max_gap)
        if lo >= hi:
            continue
        best = max(anchors[lo:hi], key=lambda a: (a[0], -a[-1]))
        if constraints.max_duration is None or q - best[0] <= constraints.max_duration:
            frontier.append(best + (q,))

    return MinimalOccurrenceSet(extended, tuple(_antichain(candidates)), tuple(frontier))


def _extend_record(
    record: PatternRecord,
    items: Sequence[ItemId],
    sequence: TimedSequence,
    constraints: ConstraintSet,
    sigma: int,
) -> List[PatternRecord]:
    children = []
    for item in items:
        occs = extend_occurrences(record.pattern, record.occurrences, item, sequence, constraints)
        if len(occs) >= sigma:
            children.append(PatternRecord(occs.pattern, occs))
    return children


def iter_levels(
    sequence: TimedSequence, params: MiningParams, jobs: int = 1
) -> Iterator[Tuple[int, List[PatternRecord]]]:
    """Yield (n, frequent patterns of length n) as each level completes."""
    sigma = params.resolve_threshold(sequence)
    max_len = params.effective_max_len
    constraints = params.constraints

    level = frequent_items(sequence, params)
    items = [rec.pattern[0] for rec in level]
    n = 1
    executor = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while level:
            logger.info("Level %d: %d frequent patterns", n, len(level))
            yield n, level
            if n >= max_len:
                break
            if executor is None:
                batches = [_extend_record(rec, items, sequence, constraints, sigma) for rec in level]
            else:
                batches = list(executor.map(
                    lambda rec: _extend_record(rec, items, sequence, constraints, sigma), level
                ))
            level = [child for batch in batches for child in batch]
            n += 1
    finally:
        if executor is not None:
            executor.shutdown(wait=True)


def mine(sequence: TimedSequence, params: MiningParams, jobs: int = 1) -> MiningResult:
    """Level-wise miner; infrequent patterns are never extended."""
    records = [rec for _, level in iter_levels(sequence, params, jobs) for rec in level]
    return MiningResult(tuple(records), params.resolve_threshold(sequence))


def _witnessed_patterns(
    sequence: TimedSequence, length: int, constraints: ConstraintSet, items: Set[ItemId]
) -> List[Pattern]:
    """All patterns of the given length having at least one admissible occurrence."""
    found: Set[Pattern] = set()
    seen: Set[Tuple[Pattern, int, int]] = set()
    entries = sequence.entries

    def walk(prefix: Pattern, first: int, index: int) -> None:
        last = entries[index][0]
        state = (prefix, first, last)
        if state in seen:
            return
        seen.add(state)
        if len(prefix) == length:
            found.add(prefix)
            return
        for j in range(index + 1, len(entries)):
            t, itemset = entries[j]
            if constraints.max_duration is not None and t - first > constraints.max_duration:
                break
            if constraints.max_gap is not None and t - last > constraints.max_gap:
                break
            if t - last < constraints.min_gap:
                continue
            for item in itemset:
                if item in items:
                    walk(prefix + (item,), first, j)

    for index, (t, itemset) in enumerate(entries):
        for item in itemset:
            if item in items:
                walk((item,), t, index)
    return sorted(found)


def mine_naive(
    sequence: TimedSequence,
    params: MiningParams,
    force: bool = False,
    max_candidates: int = NAIVE_MAX_CANDIDATES,
    oracle_max_entries: int = ORACLE_MAX_ENTRIES,
) -> MiningResult:
    """Generate-and-test miner: no level reuses another level's results."""
    constraints = params.constraints
    max_len = params.effective_max_len
    items = {i for i in sequence.alphabet.ids if i not in constraints.excluded_items}

    space = len(items) ** max_len
    if space > max_candidates:
        if not force:
            raise SafetyBoundError(
                f"naive candidate space {len(items)}^{max_len} exceeds {max_candidates}; use force"
            )
        logger.warning("Naive miner forced on candidate space %d^%d", len(items), max_len)
    if sequence.length > oracle_max_entries and not force:
        raise SafetyBoundError(
            f"oracle refuses a sequence of {sequence.length} entries (bound {oracle_max_entries}); use force"
        )

    if sequence.length > oracle_max_entries:
        logger.warning("Oracle forced on %d entries (bound %d)", sequence.length, oracle_max_entries)
        oracle_max_entries = sequence.length

    sigma = params.resolve_threshold(sequence)
    records = []
    for n in range(1, max_len + 1):
        candidates = _witnessed_patterns(sequence, n, constraints, items)
        kept = 0
        for pattern in candidates:
            occs = minimal_occurrences(pattern, sequence, constraints, oracle_max_entries)
            if len(occs) >= sigma:
                records.append(PatternRecord(pattern, occs))
                kept += 1
        logger.info("Naive level %d: %d candidates, %d frequent", n, len(candidates), kept)
    return MiningResult(tuple(records), sigma)
