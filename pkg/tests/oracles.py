"""Brute-force reference implementations used to validate the fast kernels.

Deliberately slow and literal: the production code must agree with these on
every input the tests throw at it.
"""

from __future__ import annotations


def oracle_lz76(symbols) -> int:
    """Exhaustive-history phrase count by direct substring search.

    Each phrase grows while its body occurs as a substring starting strictly
    before the phrase (overlap into the phrase allowed); the trailing partial
    phrase counts as one.
    """
    symbols = list(symbols)
    n = len(symbols)
    count = 0
    i = 0
    while i < n:
        count += 1
        length = 1
        while i + length <= n - 1:
            cand = symbols[i:i + length]
            reproducible = any(
                symbols[p:p + length] == cand for p in range(i)
            )
            if reproducible:
                length += 1
            else:
                break
        i += length
    return count


def oracle_etc(symbols, alphabet_size: int):
    """Pair-substitution compression with dict bookkeeping.

    Counts adjacent pairs greedily left to right without overlap, replaces
    the most frequent pair (ties: earliest first occurrence) with a fresh
    symbol, and repeats until the sequence is constant or a single symbol.
    Returns (steps, rules, final) with rules as (left, right, new) tuples.
    """
    seq = list(symbols)
    steps = 0
    rules = []
    fresh = alphabet_size
    while len(seq) > 1 and any(v != seq[0] for v in seq):
        counts = {}
        firsts = {}
        next_ok = {}
        for i in range(len(seq) - 1):
            pair = (seq[i], seq[i + 1])
            if i >= next_ok.get(pair, 0):
                counts[pair] = counts.get(pair, 0) + 1
                next_ok[pair] = i + 2
                if pair not in firsts:
                    firsts[pair] = i
        best = min(counts, key=lambda p: (-counts[p], firsts[p]))
        out = []
        i = 0
        while i < len(seq):
            if i < len(seq) - 1 and (seq[i], seq[i + 1]) == best:
                out.append(fresh)
                i += 2
            else:
                out.append(seq[i])
                i += 1
        rules.append((best[0], best[1], fresh))
        fresh += 1
        seq = out
        steps += 1
    return steps, rules, seq


def oracle_apply(target, rules):
    """Replay substitution rules once each, in order, greedily left to right.

    Returns (fired_count, residual) where fired_count tallies rules that
    made at least one substitution.
    """
    seq = list(target)
    fired_count = 0
    for left, right, new in rules:
        out = []
        i = 0
        fired = False
        while i < len(seq):
            if i < len(seq) - 1 and (seq[i], seq[i + 1]) == (left, right):
                out.append(new)
                i += 2
                fired = True
            else:
                out.append(seq[i])
                i += 1
        seq = out
        if fired:
            fired_count += 1
    return fired_count, seq


def all_sequences(max_len: int, alphabet: int):
    """Yield every sequence up to max_len over {0..alphabet-1}."""
    for length in range(1, max_len + 1):
        for code in range(alphabet ** length):
            seq = []
            c = code
            for _ in range(length):
                seq.append(c % alphabet)
                c //= alphabet
            yield seq
