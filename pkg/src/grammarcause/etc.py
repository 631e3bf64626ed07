"""Effort-to-compress: pair-substitution grammar inference and replay.

The compressor repeatedly replaces the most frequent adjacent symbol pair
(greedy left-to-right non-overlapping counting, ties broken by earliest
first occurrence) with a fresh symbol until the sequence is constant or has
length 1. The step count is the ETC value; the recorded rules form the
sequence's grammar and can be replayed on another sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _nsrps
from .errors import InvalidInputError
from .sequences import SymbolicSequence


@dataclass(frozen=True, eq=False)
class Grammar:
    """Ordered pair-substitution rules; row k is (left, right, fresh id)."""

    rules: np.ndarray
    next_fresh_symbol: int

    def __post_init__(self):
        arr = np.asarray(self.rules, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise InvalidInputError("rules must be a (steps, 3) array")
        if arr.size and arr.min() < 0:
            raise InvalidInputError("rule symbols must be non-negative")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "rules", arr)

    def __len__(self) -> int:
        return self.rules.shape[0]

    def to_text(self) -> str:
        """One rule per line in inference order: 'left right -> new'."""
        return "\n".join(f"{a} {b} -> {c}" for a, b, c in self.rules.tolist())

    @classmethod
    def from_text(cls, text: str) -> "Grammar":
        rows = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.replace("->", " ").split()
            if len(parts) != 3:
                raise InvalidInputError(f"line {lineno}: expected 'left right -> new'")
            rows.append([int(p) for p in parts])
        arr = np.asarray(rows, dtype=np.int64).reshape(len(rows), 3)
        next_fresh = int(arr[:, 2].max()) + 1 if len(rows) else 0
        return cls(arr, next_fresh)


@dataclass(frozen=True, eq=False)
class EtcResult:
    steps: int
    grammar: Grammar
    normalized: float


@dataclass(frozen=True, eq=False)
class ConditionalResult:
    applied_steps: int
    residual: SymbolicSequence


def etc_compress(s: SymbolicSequence) -> EtcResult:
    """Compress to a constant sequence, returning steps, grammar, steps/(L-1).

    Fresh symbols are allocated from s.alphabet_size upward, one per step.
    """
    n = len(s)
    if n < 1:
        raise InvalidInputError("etc_compress requires a non-empty sequence")
    steps, rules, _ = _nsrps.compress(s.symbols, s.alphabet_size)
    normalized = 0.0 if n == 1 else steps / (n - 1)
    grammar = Grammar(rules, s.alphabet_size + steps)
    return EtcResult(int(steps), grammar, normalized)


def etc_conditional(target: SymbolicSequence, g: Grammar) -> ConditionalResult:
    """Replay g's rules on target in inference order, once each.

    A rule whose pair occurs performs the usual greedy substitution and
    counts toward applied_steps; absent pairs are skipped for free. The
    residual is the sequence left after the final rule.
    """
    if len(target) < 1:
        raise InvalidInputError("etc_conditional requires a non-empty target")
    applied, residual = _nsrps.apply_rules(target.symbols, g.rules)
    alphabet = max(target.alphabet_size, g.next_fresh_symbol)
    return ConditionalResult(
        int(applied), SymbolicSequence(residual, alphabet)
    )


def normalized_etc(s: SymbolicSequence) -> float:
    """ETC steps divided by (length - 1); 0.0 for a length-1 sequence."""
    return etc_compress(s).normalized
