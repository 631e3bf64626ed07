"""Pair-substitution kernels: grammar inference and grammar replay.

The hot loops are compiled with numba when it is available; the pure-Python
twins below implement identical semantics (greedy left-to-right
non-overlapping pair counting, most-frequent pair with earliest-first-
occurrence tie-break) and take over when it is not.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _compress_kernel(seq, fresh_start):
    n = seq.size
    work = seq.copy()
    m = n
    rules = np.empty((n, 3), dtype=np.int64)
    steps = 0
    fresh = fresh_start
    # key_base exceeds every symbol id that can ever appear: initial ids are
    # < fresh_start and at most n - 1 fresh ids get allocated
    key_base = fresh_start + n + 1
    size = 1
    while size < 2 * (n + 1):
        size <<= 1
    mask = size - 1
    keys = np.full(size, -1, dtype=np.int64)
    counts = np.zeros(size, dtype=np.int64)
    firsts = np.zeros(size, dtype=np.int64)
    next_ok = np.zeros(size, dtype=np.int64)
    used = np.empty(n + 1, dtype=np.int64)
    while m > 1:
        const = True
        for i in range(1, m):
            if work[i] != work[0]:
                const = False
                break
        if const:
            break
        n_used = 0
        best_slot = -1
        for i in range(m - 1):
            key = work[i] * key_base + work[i + 1]
            h = key & mask
            while keys[h] != -1 and keys[h] != key:
                h = (h + 1) & mask
            if keys[h] == -1:
                keys[h] = key
                counts[h] = 0
                next_ok[h] = 0
                firsts[h] = i
                used[n_used] = h
                n_used += 1
            if i >= next_ok[h]:
                counts[h] += 1
                next_ok[h] = i + 2
        best_count = 0
        best_first = n + 1
        for u in range(n_used):
            h = used[u]
            if counts[h] > best_count or (
                counts[h] == best_count and firsts[h] < best_first
            ):
                best_count = counts[h]
                best_first = firsts[h]
                best_slot = h
        key = keys[best_slot]
        a = key // key_base
        b = key % key_base
        j = 0
        i = 0
        while i < m:
            if i < m - 1 and work[i] == a and work[i + 1] == b:
                work[j] = fresh
                i += 2
            else:
                work[j] = work[i]
                i += 1
            j += 1
        rules[steps, 0] = a
        rules[steps, 1] = b
        rules[steps, 2] = fresh
        fresh += 1
        steps += 1
        m = j
        for u in range(n_used):
            keys[used[u]] = -1
    return steps, rules[:steps].copy(), work[:m].copy()


@njit(cache=True)
def _apply_kernel(target, rules):
    work = target.copy()
    m = work.size
    applied = 0
    for r in range(rules.shape[0]):
        a = rules[r, 0]
        b = rules[r, 1]
        c = rules[r, 2]
        j = 0
        i = 0
        fired = False
        while i < m:
            if i < m - 1 and work[i] == a and work[i + 1] == b:
                work[j] = c
                i += 2
                fired = True
            else:
                work[j] = work[i]
                i += 1
            j += 1
        m = j
        if fired:
            applied += 1
    return applied, work[:m].copy()


def _compress_py(seq, fresh_start):
    work = seq.tolist()
    rules = []
    fresh = fresh_start
    steps = 0
    while len(work) > 1 and any(v != work[0] for v in work):
        counts: dict = {}
        firsts: dict = {}
        next_ok: dict = {}
        for i in range(len(work) - 1):
            p = (work[i], work[i + 1])
            if i >= next_ok.get(p, 0):
                counts[p] = counts.get(p, 0) + 1
                next_ok[p] = i + 2
                if p not in firsts:
                    firsts[p] = i
        best = min(counts, key=lambda p: (-counts[p], firsts[p]))
        out = []
        i = 0
        while i < len(work):
            if i < len(work) - 1 and (work[i], work[i + 1]) == best:
                out.append(fresh)
                i += 2
            else:
                out.append(work[i])
                i += 1
        rules.append((best[0], best[1], fresh))
        fresh += 1
        work = out
        steps += 1
    return (
        steps,
        np.asarray(rules, dtype=np.int64).reshape(steps, 3),
        np.asarray(work, dtype=np.int64),
    )


def _apply_py(target, rules):
    work = target.tolist()
    applied = 0
    for a, b, c in rules.tolist():
        out = []
        i = 0
        fired = False
        while i < len(work):
            if i < len(work) - 1 and work[i] == a and work[i + 1] == b:
                out.append(c)
                i += 2
                fired = True
            else:
                out.append(work[i])
                i += 1
        work = out
        if fired:
            applied += 1
    return applied, np.asarray(work, dtype=np.int64)


if HAVE_NUMBA:
    compress = _compress_kernel
    apply_rules = _apply_kernel
else:  # pragma: no cover
    compress = _compress_py
    apply_rules = _apply_py


def warm_up():
    """Trigger kernel compilation once (cheap no-op without numba)."""
    tiny = np.array([0, 1, 0, 1], dtype=np.int64)
    steps, rules, _ = compress(tiny, 2)
    apply_rules(tiny, rules)
