"""
Occurrences, minimal occurrences and constraints.

This module is the brute-force reference every miner is checked against.
It enumerates occurrences exhaustively and keeps the minimal ones using the
dominance relation exactly as defined, so it refuses sequences longer than a
safety bound unless forced.
"""

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from serialminer.errors import ParameterError, SafetyBoundError
from serialminer.sequence_model import ItemId, Pattern, TimedSequence

logger = logging.getLogger(__name__)

Occurrence = Tuple[int, ...]

ORACLE_MAX_ENTRIES = 40

_CONSTRAINT_KEYS = {
    "max_gap": "max_gap",
    "maxgap": "max_gap",
    "min_gap": "min_gap",
    "mingap": "min_gap",
    "max_duration": "max_duration",
    "maxduration": "max_duration",
    "max_pattern_len": "max_pattern_len",
    "maxpatternlen": "max_pattern_len",
}


@dataclass(frozen=True)
class ConstraintSet:
    """Item, length, duration and gap constraints. None means unbounded.

    Gaps are inclusive: min_gap <= t[k+1] - t[k] <= max_gap. A min_gap of 0
    is read as 1 since occurrences are strictly increasing. Duration runs
    from the first matched timestamp: t[n] - t[1] <= max_duration.
    """

    excluded_items: FrozenSet[ItemId] = frozenset()
    max_pattern_len: Optional[int] = None
    max_duration: Optional[int] = None
    min_gap: int = 1
    max_gap: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "excluded_items", frozenset(self.excluded_items))
        if self.min_gap < 0:
            raise ParameterError(f"min_gap must be >= 0, got {self.min_gap}")
        if self.min_gap == 0:
            object.__setattr__(self, "min_gap", 1)
        if self.max_gap is not None and self.max_gap < self.min_gap:
            raise ParameterError(f"max_gap ({self.max_gap}) must be >= min_gap ({self.min_gap})")
        if self.max_duration is not None and self.max_duration < 0:
            raise ParameterError(f"max_duration must be >= 0, got {self.max_duration}")
        if self.max_pattern_len is not None and self.max_pattern_len < 1:
            raise ParameterError(f"max_pattern_len must be >= 1, got {self.max_pattern_len}")

    @classmethod
    def parse(cls, text: str, excluded_items: Iterable[ItemId] = ()) -> "ConstraintSet":
        """Read 'maxgap=7,mingap=0,maxduration=20' style settings."""
        values: Dict[str, int] = {}
        for part in (text or "").split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, raw = part.partition("=")
            key = key.strip().lower().replace("-", "_")
            if not sep or key not in _CONSTRAINT_KEYS:
                raise ParameterError(f"unknown constraint {part!r}")
            try:
                values[_CONSTRAINT_KEYS[key]] = int(raw)
            except ValueError:
                raise ParameterError(f"constraint {key} needs an integer, got {raw!r}")
        return cls(excluded_items=frozenset(excluded_items), **values)

    @property
    def is_unconstrained(self) -> bool:
        return self == ConstraintSet()

    @property
    def bounds_time(self) -> bool:
        return self.max_gap is not None or self.max_duration is not None or self.min_gap > 1

    def describe(self) -> str:
        parts = []
        if self.excluded_items:
            parts.append("exclude=" + "|".join(str(i) for i in sorted(self.excluded_items)))
        for name in ("max_pattern_len", "max_duration", "max_gap"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        if self.min_gap != 1:
            parts.append(f"min_gap={self.min_gap}")
        return ",".join(parts) or "none"

    def to_dict(self) -> dict:
        return {
            "excluded_items": sorted(self.excluded_items),
            "max_pattern_len": self.max_pattern_len,
            "max_duration": self.max_duration,
            "min_gap": self.min_gap,
            "max_gap": self.max_gap,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ConstraintSet":
        return cls(
            excluded_items=frozenset(data.get("excluded_items", ())),
            max_pattern_len=data.get("max_pattern_len"),
            max_duration=data.get("max_duration"),
            min_gap=data.get("min_gap", 1),
            max_gap=data.get("max_gap"),
        )

    def admits_items(self, pattern: Sequence[ItemId]) -> bool:
        if self.max_pattern_len is not None and len(pattern) > self.max_pattern_len:
            return False
        return not any(item in self.excluded_items for item in pattern)

    def admits_step(self, first: int, previous: int, t: int) -> bool:
        """Whether t may follow `previous` in an occurrence starting at `first`."""
        gap = t - previous
        if gap < self.min_gap:
            return False
        if self.max_gap is not None and gap > self.max_gap:
            return False
        return self.max_duration is None or t - first <= self.max_duration


UNCONSTRAINED = ConstraintSet()


@dataclass(frozen=True)
class MinimalOccurrenceSet:
    """The minimal occurrences of one pattern, ordered by start.

    `frontier` holds, for every timestamp at which some admissible occurrence
    of the pattern ends, the occurrence ending there with the latest start
    (ties broken by dominance). It is what pattern extension works from; when
    not given it defaults to the occurrences themselves.
    """

    pattern: Pattern
    occurrences: Tuple[Occurrence, ...] = ()
    frontier: Optional[Tuple[Occurrence, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        object.__setattr__(self, "occurrences", tuple(tuple(o) for o in self.occurrences))
        if self.frontier is None:
            object.__setattr__(self, "frontier", self.occurrences)
        else:
            object.__setattr__(self, "frontier", tuple(tuple(o) for o in self.frontier))

    def __len__(self) -> int:
        return len(self.occurrences)

    def __iter__(self):
        return iter(self.occurrences)

    @property
    def support(self) -> int:
        return len(self.occurrences)

    @property
    def starts(self) -> Tuple[int, ...]:
        return tuple(o[0] for o in self.occurrences)

    @property
    def ends(self) -> Tuple[int, ...]:
        return tuple(o[-1] for o in self.occurrences)

    @property
    def intervals(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((o[0], o[-1]) for o in self.occurrences)

    def is_antichain(self) -> bool:
        """No member dominates another; starts and ends pairwise distinct."""
        if len(set(self.starts)) != len(self.occurrences):
            return False
        if len(set(self.ends)) != len(self.occurrences):
            return False
        return not any(
            dominates(t, u) for t in self.occurrences for u in self.occurrences if t != u
        )


def is_occurrence(pattern: Sequence[ItemId], occurrence: Sequence[int], sequence: TimedSequence) -> bool:
    if len(pattern) != len(occurrence) or not pattern:
        return False
    if any(b <= a for a, b in zip(occurrence, occurrence[1:])):
        return False
    return all(sequence.contains(t, item) for item, t in zip(pattern, occurrence))


def dominates(t: Sequence[int], u: Sequence[int]) -> bool:
    """The T ◁ U relation: T sits in a strictly smaller interval, or shares
    U's bounds and its prefix dominates U's prefix."""
    if len(t) != len(u):
        raise ParameterError(f"cannot compare occurrences of lengths {len(t)} and {len(u)}")
    if not t:
        return False
    t1, tn, u1, un = t[0], t[-1], u[0], u[-1]
    if u1 <= t1 and tn <= un and (t1, tn) != (u1, un):
        return True
    if len(t) > 1 and t1 == u1 and tn == un:
        return dominates(t[:-1], u[:-1])
    return False


def satisfies_constraints(pattern: Sequence[ItemId], occurrence: Sequence[int], constraints: ConstraintSet) -> bool:
    if len(pattern) != len(occurrence):
        return False
    if not constraints.admits_items(pattern):
        return False
    first = occurrence[0] if occurrence else 0
    return all(
        constraints.admits_step(first, a, b) for a, b in zip(occurrence, occurrence[1:])
    )


def _check_bound(sequence: TimedSequence, max_entries: int, force: bool) -> None:
    if sequence.length > max_entries:
        if not force:
            raise SafetyBoundError(
                f"oracle refuses a sequence of {sequence.length} entries (bound {max_entries}); use force"
            )
        logger.warning("Oracle forced on %d entries (bound %d)", sequence.length, max_entries)


def enumerate_occurrences(
    pattern: Sequence[ItemId],
    sequence: TimedSequence,
    constraints: ConstraintSet = UNCONSTRAINED,
    max_entries: int = ORACLE_MAX_ENTRIES,
    force: bool = False,
) -> List[Occurrence]:
    """Every admissible occurrence of the pattern, in lexicographic order."""
    _check_bound(sequence, max_entries, force)
    pattern = tuple(pattern)
    if not pattern or not constraints.admits_items(pattern):
        return []

    found: List[Occurrence] = []

    def walk(k: int, prefix: List[int]) -> None:
        if k == len(pattern):
            found.append(tuple(prefix))
            return
        for t in sequence.positions(pattern[k]):
            if prefix and not constraints.admits_step(prefix[0], prefix[-1], t):
                continue
            prefix.append(t)
            walk(k + 1, prefix)
            prefix.pop()

    walk(0, [])
    return found


def _dominated(t: Occurrence, occurrences: List[Occurrence], starts: List[int]) -> bool:
    # any U ◁ T has t1 <= u1 and un <= tn
    lo = bisect_left(starts, t[0])
    hi = bisect_right(starts, t[-1])
    return any(u != t and dominates(u, t) for u in occurrences[lo:hi])


def _frontier(occurrences: List[Occurrence]) -> Tuple[Occurrence, ...]:
    by_end: Dict[int, List[Occurrence]] = {}
    for occ in occurrences:
        by_end.setdefault(occ[-1], []).append(occ)
    frontier = []
    for end in sorted(by_end):
        latest = max(o[0] for o in by_end[end])
        tied = [o for o in by_end[end] if o[0] == latest]
        frontier.extend(o for o in tied if not any(dominates(v, o) for v in tied if v != o))
    return tuple(frontier)


def minimal_occurrences(
    pattern: Sequence[ItemId],
    sequence: TimedSequence,
    constraints: ConstraintSet = UNCONSTRAINED,
    max_entries: int = ORACLE_MAX_ENTRIES,
    force: bool = False,
) -> MinimalOccurrenceSet:
    """The ◁-minimal elements of the admissible occurrences, sorted by start."""
    occurrences = enumerate_occurrences(pattern, sequence, constraints, max_entries, force)
    starts = [o[0] for o in occurrences]
    minimal = [t for t in occurrences if not _dominated(t, occurrences, starts)]
    return MinimalOccurrenceSet(tuple(pattern), tuple(minimal), _frontier(occurrences))


def support(
    pattern: Sequence[ItemId],
    sequence: TimedSequence,
    constraints: ConstraintSet = UNCONSTRAINED,
    max_entries: int = ORACLE_MAX_ENTRIES,
    force: bool = False,
) -> int:
    return len(minimal_occurrences(pattern, sequence, constraints, max_entries, force))
