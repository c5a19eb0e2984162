"""
Sequence model: the item alphabet, itemsets and the long timed sequence.

File format (UTF-8 text), one entry per line:

    <timestamp> <token> [<token> ...]

Lines are ordered by strictly increasing integer timestamp. Lines starting
with '#' are comments, blank lines are ignored. Tokens are interned into
dense 1-based item ids in order of first appearance.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from serialminer.errors import ParameterError, SequenceFormatError

ItemId = int
Itemset = Tuple[ItemId, ...]
Entry = Tuple[int, Itemset]
Pattern = Tuple[ItemId, ...]


@dataclass(frozen=True)
class SymbolTable:
    """Bijection between item tokens and ids 1..nbs (id order is the item order)."""

    symbols: Tuple[str, ...] = ()
    _ids: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = {token: i for i, token in enumerate(self.symbols, start=1)}
        if len(ids) != len(self.symbols):
            raise ParameterError("symbol table tokens must be unique")
        object.__setattr__(self, "_ids", ids)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "SymbolTable":
        """Intern tokens in first-appearance order, ignoring repeats."""
        return cls(tuple(dict.fromkeys(tokens)))

    @classmethod
    def identity(cls, size: int) -> "SymbolTable":
        """The table mapping "1".."size" onto ids 1..size."""
        return cls(tuple(str(i) for i in range(1, size + 1)))

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def id_of(self, token: str) -> ItemId:
        try:
            return self._ids[token]
        except KeyError:
            raise ParameterError(f"unknown item {token!r}")

    def token_of(self, item: ItemId) -> str:
        if not 1 <= item <= len(self.symbols):
            raise ParameterError(f"unknown item id {item}")
        return self.symbols[item - 1]

    @property
    def ids(self) -> range:
        return range(1, len(self.symbols) + 1)


@dataclass(frozen=True)
class TimedSequence:
    """The long sequence S: immutable, strictly increasing timestamps, nonempty itemsets."""

    entries: Tuple[Entry, ...] = ()
    alphabet: SymbolTable = field(default_factory=SymbolTable)
    _itemsets: Dict[int, frozenset] = field(init=False, repr=False, compare=False)
    _positions: Dict[ItemId, Tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple((int(t), tuple(items)) for t, items in self.entries)
        previous = None
        positions: Dict[ItemId, List[int]] = {}
        for t, items in entries:
            if previous is not None and t <= previous:
                raise SequenceFormatError(f"timestamp {t} does not follow {previous}")
            if not items:
                raise SequenceFormatError(f"empty itemset at timestamp {t}")
            if any(b <= a for a, b in zip(items, items[1:])):
                raise SequenceFormatError(f"itemset at timestamp {t} is not sorted and duplicate-free")
            for item in items:
                if not 1 <= item <= len(self.alphabet):
                    raise SequenceFormatError(f"item id {item} at timestamp {t} is outside the alphabet")
                positions.setdefault(item, []).append(t)
            previous = t

        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_itemsets", {t: frozenset(items) for t, items in entries})
        object.__setattr__(self, "_positions", {item: tuple(ts) for item, ts in positions.items()})

    @property
    def length(self) -> int:
        """|S|, the number of itemsets."""
        return len(self.entries)

    @property
    def size(self) -> int:
        """‖S‖, the total number of items."""
        return sum(len(items) for _, items in self.entries)

    @property
    def timestamps(self) -> Tuple[int, ...]:
        return tuple(t for t, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def itemset_at(self, t: int) -> frozenset:
        return self._itemsets.get(t, frozenset())

    def contains(self, t: int, item: ItemId) -> bool:
        return item in self._itemsets.get(t, ())

    def positions(self, item: ItemId) -> Tuple[int, ...]:
        """Sorted timestamps whose itemset contains item."""
        return self._positions.get(item, ())

    def item_counts(self) -> Dict[ItemId, int]:
        return {item: len(ts) for item, ts in sorted(self._positions.items())}

    def tokens(self, pattern: Sequence[ItemId]) -> List[str]:
        return [self.alphabet.token_of(item) for item in pattern]

    def encode(self, tokens: Iterable[str]) -> Pattern:
        return tuple(self.alphabet.id_of(token) for token in tokens)


def parse_sequence(text: Union[str, Iterable[str]]) -> TimedSequence:
    """Parse the line format into a TimedSequence.

    Accepts a whole string or any iterable of lines (an open file works).
    """
    lines = text.splitlines() if isinstance(text, str) else text

    raw: List[Tuple[int, List[str]]] = []
    previous = None
    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        try:
            t = int(fields[0])
        except ValueError:
            raise SequenceFormatError(f"timestamp {fields[0]!r} is not an integer", line_no)
        tokens = fields[1:]
        if not tokens:
            raise SequenceFormatError(f"empty itemset at timestamp {t}", line_no)
        if len(set(tokens)) != len(tokens):
            raise SequenceFormatError(f"duplicate item in itemset at timestamp {t}", line_no)
        if previous is not None and t == previous:
            raise SequenceFormatError(f"duplicate timestamp {t}", line_no)
        if previous is not None and t < previous:
            raise SequenceFormatError(f"timestamp {t} does not follow {previous}", line_no)
        raw.append((t, tokens))
        previous = t

    alphabet = SymbolTable.from_tokens(token for _, tokens in raw for token in tokens)
    entries = tuple(
        (t, tuple(sorted(alphabet.id_of(token) for token in tokens))) for t, tokens in raw
    )
    return TimedSequence(entries, alphabet)


def serialize_sequence(sequence: TimedSequence) -> str:
    """Write a sequence in the line format.

    Items within an itemset come out in id order, not in the order they were
    read: "1 a b\n2 b a" serializes as "1 a b\n2 a b". Parsing the output
    gives back an equal TimedSequence.
    """
    out = []
    for t, items in sequence.entries:
        out.append(" ".join([str(t)] + [sequence.alphabet.token_of(item) for item in items]))
    return "".join(line + "\n" for line in out)


def read_sequence_file(path: Union[str, Path]) -> TimedSequence:
    """Read and parse a sequence file; bytes that are not UTF-8 are a format error."""
    with open(path, "rb") as f:
        return parse_sequence(_decoded_lines(f))


def _decoded_lines(lines: Iterable[bytes]) -> Iterator[str]:
    for line_no, raw in enumerate(lines, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SequenceFormatError(f"invalid UTF-8 at byte {e.start}: {e.reason}", line_no)


def write_sequence_file(path: Union[str, Path], sequence: TimedSequence) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_sequence(sequence))


def generate_random_sequence(length: int, alphabet_size: int, seed: int) -> TimedSequence:
    """Equiprobable singleton itemsets at timestamps 1..length.

    Draws come from numpy's PCG64 bit generator seeded with `seed`, so the
    same (length, alphabet_size, seed) always yields the same sequence.
    """
    if length < 0:
        raise ParameterError(f"length must be >= 0, got {length}")
    if alphabet_size < 1:
        raise ParameterError(f"alphabet_size must be >= 1, got {alphabet_size}")

    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.integers(1, alphabet_size + 1, size=length)
    entries = tuple((t, (int(item),)) for t, item in enumerate(draws, start=1))
    return TimedSequence(entries, SymbolTable.identity(alphabet_size))


def is_prefix(prefix: Sequence[ItemId], pattern: Sequence[ItemId]) -> bool:
    """Strict prefix test for string patterns."""
    return len(prefix) < len(pattern) and tuple(pattern[: len(prefix)]) == tuple(prefix)
