"""Lempel-Ziv (1976) production complexity over arbitrary finite alphabets."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .sequences import SymbolicSequence

_ORDERS = ("x-then-y", "y-then-x")


def _lz76_codes(codes: str) -> int:
    # Exhaustive-history parse: grow the current phrase while it occurs
    # (as a substring) strictly before its own final symbol; the trailing
    # partial phrase counts as one.
    n = len(codes)
    phrases = 0
    ind = 0
    inc = 0
    while ind + inc < n:
        end = ind + inc
        if codes.find(codes[ind:end + 1], 0, end) != -1:
            inc += 1
        else:
            phrases += 1
            ind = end + 1
            inc = 0
    return phrases + 1 if inc != 0 else phrases


def lz76(s: SymbolicSequence) -> int:
    """Number of phrases in the exhaustive left-to-right production history."""
    if len(s) < 1:
        raise InvalidInputError("lz76 requires a non-empty sequence")
    return _lz76_codes("".join(map(chr, s.symbols.tolist())))


def lz_joint(x: SymbolicSequence, y: SymbolicSequence,
             order: str = "x-then-y") -> int:
    """lz76 of the two sequences concatenated in the requested order."""
    if order not in _ORDERS:
        raise InvalidInputError(f"order must be one of {_ORDERS}")
    first, second = (x, y) if order == "x-then-y" else (y, x)
    joined = np.concatenate([first.symbols, second.symbols])
    alphabet = max(x.alphabet_size, y.alphabet_size)
    return lz76(SymbolicSequence(joined, alphabet))
