import numpy as np
import pytest

from grammarcause import InvalidInputError, SymbolicSequence, lz76, lz_joint

from oracles import all_sequences, oracle_lz76


def seq(symbols, alphabet=None):
    return SymbolicSequence.from_symbols(symbols, alphabet)


def test_single_symbol():
    assert lz76(seq([0], 2)) == 1


def test_short_runs():
    assert lz76(seq([0, 0], 2)) == 2
    assert lz76(seq([0, 0, 0, 0], 2)) == 2


def test_classic_binary_example():
    s = seq([0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1], 2)
    assert lz76(s) == 6


def test_constant_sequences_cap_at_two():
    for length in (1, 2, 5, 100):
        assert lz76(seq([3] * length, 4)) <= 2


def test_alternation():
    assert lz76(seq([0, 1] * 50, 2)) == 3


def test_oracle_agreement_exhaustive():
    for symbols in all_sequences(10, 3):
        got = lz76(seq(symbols, 3))
        want = oracle_lz76(symbols)
        assert got == want, f"mismatch on {symbols}: {got} != {want}"


def test_oracle_agreement_random_longer():
    rng = np.random.default_rng(42)
    for _ in range(300):
        length = int(rng.integers(11, 80))
        alphabet = int(rng.integers(2, 6))
        symbols = rng.integers(0, alphabet, size=length).tolist()
        assert lz76(seq(symbols, alphabet)) == oracle_lz76(symbols)


def test_prefix_monotonicity_random():
    rng = np.random.default_rng(7)
    for _ in range(300):
        length = int(rng.integers(2, 120))
        alphabet = int(rng.integers(2, 5))
        symbols = rng.integers(0, alphabet, size=length)
        cut = int(rng.integers(1, length))
        full = lz76(seq(symbols, alphabet))
        prefix = lz76(seq(symbols[:cut], alphabet))
        assert prefix <= full


def test_joint_concatenation_order():
    x = seq([0, 1, 0, 1, 0, 1], 2)
    y = seq([1, 1, 0, 0, 1, 1], 2)
    xy = lz_joint(x, y)
    yx = lz_joint(x, y, order="y-then-x")
    both = np.concatenate([x.symbols, y.symbols]).tolist()
    assert xy == oracle_lz76(both)
    assert yx == oracle_lz76(both[6:] + both[:6])


def test_joint_lifts_alphabets():
    x = seq([0, 1], 2)
    y = seq([0, 3], 4)
    assert lz_joint(x, y) == oracle_lz76([0, 1, 0, 3])


def test_joint_bad_order():
    x = seq([0, 1], 2)
    with pytest.raises(InvalidInputError):
        lz_joint(x, x, order="sideways")


def test_joint_single_constant():
    assert lz_joint(seq([0], 1), seq([0], 1)) == 2
