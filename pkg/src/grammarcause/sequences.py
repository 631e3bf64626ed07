"""Symbolic sequences, discretization of real series, and sequence ingestion."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AmbiguousNucleotideError,
    FastaFormatError,
    InvalidInputError,
)

_NUCLEOTIDE_CODES = {"A": 1, "C": 2, "G": 3, "T": 4}
_CODE_NUCLEOTIDES = {v: k for k, v in _NUCLEOTIDE_CODES.items()}

NUCLEOTIDE_ALPHABET_SIZE = 5


def _frozen_int_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 1:
        raise InvalidInputError("symbols must be one-dimensional")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymbolicSequence:
    """An ordered run of non-negative integer symbol ids below a fixed bound."""

    symbols: np.ndarray
    alphabet_size: int

    def __post_init__(self):
        arr = _frozen_int_array(self.symbols)
        object.__setattr__(self, "symbols", arr)
        if len(arr) < 1:
            raise InvalidInputError("sequence must contain at least one symbol")
        if self.alphabet_size < 1:
            raise InvalidInputError("alphabet_size must be positive")
        if arr.min() < 0 or arr.max() >= self.alphabet_size:
            raise InvalidInputError(
                "symbol ids must lie in [0, alphabet_size)"
            )

    @classmethod
    def from_symbols(cls, symbols, alphabet_size: int | None = None) -> "SymbolicSequence":
        """Build a sequence, inferring alphabet_size as max id + 1 when omitted."""
        arr = _frozen_int_array(symbols)
        if len(arr) < 1:
            raise InvalidInputError("sequence must contain at least one symbol")
        if alphabet_size is None:
            alphabet_size = int(arr.max()) + 1
        return cls(arr, alphabet_size)

    def __len__(self) -> int:
        return len(self.symbols)

    def same_symbols(self, other: "SymbolicSequence") -> bool:
        """True when both sequences are elementwise identical."""
        return len(self) == len(other) and bool(
            np.array_equal(self.symbols, other.symbols)
        )

    def with_alphabet(self, alphabet_size: int) -> "SymbolicSequence":
        """Same symbols under a wider alphabet bound."""
        if alphabet_size < self.alphabet_size:
            raise InvalidInputError("alphabet_size may only widen")
        if alphabet_size == self.alphabet_size:
            return self
        return SymbolicSequence(self.symbols, alphabet_size)


@dataclass(frozen=True, eq=False)
class RealSeries:
    """An ordered run of finite real values."""

    values: np.ndarray = field()

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).copy()
        if arr.ndim != 1:
            raise InvalidInputError("values must be one-dimensional")
        if len(arr) < 1:
            raise InvalidInputError("series must contain at least one value")
        if not np.isfinite(arr).all():
            raise InvalidInputError("series values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)


def discretize_equiwidth(series: RealSeries, bins: int) -> SymbolicSequence:
    """Map values to equal-width bin indices over [min, max].

    Interior bin edges are half-open: a value exactly on an edge joins the
    upper bin; the final bin is closed at the maximum. A constant series
    maps to all zeros.
    """
    if bins < 2:
        raise InvalidInputError("bins must be at least 2")
    vals = series.values
    lo = vals.min()
    hi = vals.max()
    if lo == hi:
        return SymbolicSequence(np.zeros(len(vals), dtype=np.int64), bins)
    idx = np.floor((vals - lo) / (hi - lo) * bins).astype(np.int64)
    np.clip(idx, 0, bins - 1, out=idx)
    return SymbolicSequence(idx, bins)


def discretize_equifrequency(series: RealSeries, bins: int) -> SymbolicSequence:
    """Map values to near-equal-count bins by stable rank.

    Value ranks come from a stable sort, so ties resolve by position; a
    constant series maps to all zeros.
    """
    if bins < 2:
        raise InvalidInputError("bins must be at least 2")
    vals = series.values
    n = len(vals)
    if vals.min() == vals.max():
        return SymbolicSequence(np.zeros(n, dtype=np.int64), bins)
    order = np.argsort(vals, kind="stable")
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(n, dtype=np.int64)
    idx = ranks * bins // n
    return SymbolicSequence(idx, bins)


def encode_nucleotides(text: str) -> SymbolicSequence:
    """Encode an ACGT string as symbols A=1, C=2, G=3, T=4 (alphabet size 5).

    Input is uppercased first. Any other character raises
    AmbiguousNucleotideError; id 0 is reserved so the numeric labels stay
    literal.
    """
    upper = text.upper()
    out = np.empty(len(upper), dtype=np.int64)
    for i, ch in enumerate(upper):
        code = _NUCLEOTIDE_CODES.get(ch)
        if code is None:
            raise AmbiguousNucleotideError(
                f"ambiguous nucleotide {ch!r} at position {i}"
            )
        out[i] = code
    if len(out) < 1:
        raise InvalidInputError("empty nucleotide string")
    return SymbolicSequence(out, NUCLEOTIDE_ALPHABET_SIZE)


def decode_nucleotides(seq: SymbolicSequence) -> str:
    """Inverse of encode_nucleotides."""
    try:
        return "".join(_CODE_NUCLEOTIDES[int(s)] for s in seq.symbols)
    except KeyError as exc:
        raise InvalidInputError(f"symbol {exc} is not a nucleotide code") from exc


def parse_fasta(text: str) -> list[tuple[str, str]]:
    """Parse FASTA text into (identifier, raw sequence) records.

    The identifier is the first whitespace-delimited token after '>'.
    Sequence lines are concatenated with surrounding whitespace stripped;
    encoding is left to the caller so ambiguous records can be skipped
    rather than aborting a batch.
    """
    records: list[tuple[str, str]] = []
    header: str | None = None
    body: list[str] = []

    def flush():
        if header is None:
            return
        seq = "".join(body)
        if not seq:
            raise FastaFormatError(f"record {header!r} has an empty body")
        records.append((header, seq))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].split()[0] if line[1:].split() else ""
            if not header:
                raise FastaFormatError(f"line {lineno}: header has no identifier")
            body = []
        else:
            if header is None:
                raise FastaFormatError(
                    f"line {lineno}: sequence data before any '>' header"
                )
            body.append(line)
    flush()
    if not records:
        raise FastaFormatError("no FASTA records found")
    return records


def parse_pair_file(text: str, discretize_bins: int | None = None
                    ) -> tuple[SymbolicSequence, SymbolicSequence]:
    """Parse a two-line pair file into (x, y).

    Each line is a whitespace- or comma-separated list of numbers. Without
    discretize_bins the values must be non-negative integers; with it the
    lines are read as real values and equi-width binned. Both sequences are
    returned under their shared alphabet bound.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise InvalidInputError(
            f"pair file must contain exactly 2 non-empty lines, found {len(lines)}"
        )
    rows = []
    for lineno, line in enumerate(lines, start=1):
        tokens = line.replace(",", " ").split()
        try:
            row = [float(tok) for tok in tokens]
        except ValueError as exc:
            raise InvalidInputError(f"line {lineno}: {exc}") from exc
        if not row:
            raise InvalidInputError(f"line {lineno}: no values")
        rows.append(np.asarray(row, dtype=np.float64))
    if discretize_bins is not None:
        return (
            discretize_equiwidth(RealSeries(rows[0]), discretize_bins),
            discretize_equiwidth(RealSeries(rows[1]), discretize_bins),
        )
    seqs = []
    for lineno, row in enumerate(rows, start=1):
        ints = row.astype(np.int64)
        if not np.array_equal(ints.astype(np.float64), row) or ints.min() < 0:
            raise InvalidInputError(
                f"line {lineno}: values must be non-negative integers "
                "(use a discretize flag for real-valued input)"
            )
        seqs.append(ints)
    alphabet = int(max(s.max() for s in seqs)) + 1
    return (
        SymbolicSequence(seqs[0], alphabet),
        SymbolicSequence(seqs[1], alphabet),
    )
