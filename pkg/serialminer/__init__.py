"""
Serial pattern mining in a single long sequence of timestamped itemsets.

Modules:
  sequence_model  - alphabet, itemsets, the long sequence, parsing, generator
  occurrences     - occurrences, the dominance relation, constraints, oracle
  mining          - incremental (level-wise) and naive miners
  verification    - randomized cross-checking of the miners against the oracle
"""

from serialminer.errors import (
    ParameterError,
    SafetyBoundError,
    SequenceFormatError,
    SerialMinerError,
)
from serialminer.occurrences import (
    ConstraintSet,
    MinimalOccurrenceSet,
    dominates,
    enumerate_occurrences,
    is_occurrence,
    minimal_occurrences,
    satisfies_constraints,
    support,
)
from serialminer.sequence_model import (
    SymbolTable,
    TimedSequence,
    generate_random_sequence,
    is_prefix,
    parse_sequence,
    serialize_sequence,
)
from serialminer.mining import (
    MiningParams,
    MiningResult,
    PatternRecord,
    extend_occurrences,
    frequent_items,
    iter_levels,
    mine,
    mine_naive,
)

__all__ = [
    "ConstraintSet",
    "MinimalOccurrenceSet",
    "MiningParams",
    "MiningResult",
    "ParameterError",
    "PatternRecord",
    "SafetyBoundError",
    "SequenceFormatError",
    "SerialMinerError",
    "SymbolTable",
    "TimedSequence",
    "dominates",
    "enumerate_occurrences",
    "extend_occurrences",
    "frequent_items",
    "generate_random_sequence",
    "is_occurrence",
    "is_prefix",
    "iter_levels",
    "mine",
    "mine_naive",
    "minimal_occurrences",
    "parse_sequence",
    "satisfies_constraints",
    "serialize_sequence",
    "support",
]
