import numpy as np
import pytest

from grammarcause import (
    ETC_EFFICACY,
    ETC_PENALTY,
    LZ_PENALTY,
    MODELS,
    UNDECIDED,
    X_TO_Y,
    Y_TO_X,
    IdenticalSequencesError,
    InvalidInputError,
    SymbolicSequence,
    etc_efficacy,
    etc_penalty,
    evaluate_pair,
    lz76,
    lz_penalty,
    signed_score,
)


def seq(symbols, alphabet=None):
    return SymbolicSequence.from_symbols(symbols, alphabet)


def random_pair(seed, length=100, alphabet=2):
    rng = np.random.default_rng(seed)
    x = seq(rng.integers(0, alphabet, size=length).tolist(), alphabet)
    y = seq(rng.integers(0, alphabet, size=length).tolist(), alphabet)
    return x, y


PERIODIC = seq([1, 2] * 50, 3)
RANDOM = seq(np.random.default_rng(0).integers(0, 2, size=100).tolist(), 3)


def test_strength_invariant_all_models():
    verdicts = evaluate_pair(PERIODIC, RANDOM)
    for model in MODELS:
        v = verdicts[model]
        assert v.strength == pytest.approx(abs(v.score_yx - v.score_xy))
        assert v.strength >= 0.0


def test_penalty_swap_mirrors():
    v = etc_penalty(PERIODIC, RANDOM)
    w = etc_penalty(RANDOM, PERIODIC)
    assert w.score_xy == pytest.approx(v.score_yx)
    assert w.score_yx == pytest.approx(v.score_xy)
    mirrored = {X_TO_Y: Y_TO_X, Y_TO_X: X_TO_Y, UNDECIDED: UNDECIDED}
    assert w.direction == mirrored[v.direction]
    assert w.strength == pytest.approx(v.strength)


def test_efficacy_swap_mirrors():
    v = etc_efficacy(PERIODIC, RANDOM)
    w = etc_efficacy(RANDOM, PERIODIC)
    assert w.score_xy == pytest.approx(v.score_yx)
    assert w.score_yx == pytest.approx(v.score_xy)
    mirrored = {X_TO_Y: Y_TO_X, Y_TO_X: X_TO_Y, UNDECIDED: UNDECIDED}
    assert w.direction == mirrored[v.direction]


def test_lz_matched_swap_exchanges_scores():
    for seed in range(6):
        x, y = random_pair(seed, length=60)
        v = lz_penalty(x, y, joint_mode="matched")
        w = lz_penalty(y, x, joint_mode="matched")
        assert w.score_xy == pytest.approx(v.score_yx)
        assert w.score_yx == pytest.approx(v.score_xy)


def test_lz_shared_swap_mirrors_direction():
    mirrored = {X_TO_Y: Y_TO_X, Y_TO_X: X_TO_Y, UNDECIDED: UNDECIDED}
    for seed in range(6):
        x, y = random_pair(seed, length=60)
        v = lz_penalty(x, y)
        w = lz_penalty(y, x)
        assert w.direction == mirrored[v.direction]
        assert w.strength == pytest.approx(v.strength)


def test_lz_shared_strength_is_complexity_gap():
    for seed in range(6):
        x, y = random_pair(seed + 50, length=80)
        v = lz_penalty(x, y)
        assert v.strength == pytest.approx(abs(lz76(x) - lz76(y)))


def test_identical_sequences_rejected():
    x = seq([0, 1, 0, 1], 2)
    y = seq([0, 1, 0, 1], 2)
    with pytest.raises(IdenticalSequencesError):
        evaluate_pair(x, y)


def test_alphabet_lift_keeps_models_runnable():
    x = seq([0, 1, 0, 1, 1, 0, 1, 0], 2)
    y = seq([0, 5, 2, 5, 0, 2, 5, 0], 6)
    verdicts = evaluate_pair(x, y)
    assert set(verdicts) == set(MODELS)


def test_threshold_blocks_small_margins():
    x, y = PERIODIC, RANDOM
    base = lz_penalty(x, y)
    assert base.direction != UNDECIDED
    wide = lz_penalty(x, y, threshold=base.strength + 1.0)
    assert wide.direction == UNDECIDED
    assert wide.score_xy == pytest.approx(base.score_xy)


def test_zero_threshold_unequal_scores_always_decide():
    for seed in range(8):
        x, y = random_pair(seed + 100)
        for v in evaluate_pair(x, y).values():
            if v.score_xy != v.score_yx:
                assert v.direction != UNDECIDED


def test_penalty_smaller_score_wins():
    x, y = random_pair(3)
    v = etc_penalty(x, y)
    if v.score_xy < v.score_yx:
        assert v.direction == X_TO_Y
    elif v.score_yx < v.score_xy:
        assert v.direction == Y_TO_X


def test_efficacy_greater_score_wins_by_default():
    x, y = random_pair(4)
    v = etc_efficacy(x, y)
    if v.score_xy > v.score_yx:
        assert v.direction == X_TO_Y
    elif v.score_yx > v.score_xy:
        assert v.direction == Y_TO_X


def test_efficacy_lesser_polarity_flips_direction():
    mirrored = {X_TO_Y: Y_TO_X, Y_TO_X: X_TO_Y, UNDECIDED: UNDECIDED}
    for seed in range(6):
        x, y = random_pair(seed + 200)
        v = etc_efficacy(x, y)
        w = etc_efficacy(x, y, polarity="lesser")
        assert w.score_xy == pytest.approx(v.score_xy)
        assert w.direction == mirrored[v.direction]


def test_conditional_mode_all_still_mirrors():
    mirrored = {X_TO_Y: Y_TO_X, Y_TO_X: X_TO_Y, UNDECIDED: UNDECIDED}
    x, y = random_pair(5)
    v = evaluate_pair(x, y, conditional_mode="all")[ETC_PENALTY]
    w = evaluate_pair(y, x, conditional_mode="all")[ETC_PENALTY]
    assert w.score_xy == pytest.approx(v.score_yx)
    assert w.direction == mirrored[v.direction]


def test_signed_score_sign_agrees_with_direction():
    for seed in range(8):
        x, y = random_pair(seed + 300)
        for v in evaluate_pair(x, y).values():
            s = signed_score(v)
            if v.direction == X_TO_Y:
                assert s > 0
            elif v.direction == Y_TO_X:
                assert s < 0


def test_rejects_bad_arguments():
    x, y = random_pair(6)
    with pytest.raises(InvalidInputError):
        evaluate_pair(x, y, models=("nope",))
    with pytest.raises(InvalidInputError):
        evaluate_pair(x, y, threshold=-0.5)
    with pytest.raises(InvalidInputError):
        evaluate_pair(x, y, joint_mode="bogus")
    with pytest.raises(InvalidInputError):
        evaluate_pair(x, y, efficacy_polarity="bogus")
    with pytest.raises(InvalidInputError):
        evaluate_pair(seq([0], 2), y)


def test_verdict_serialization():
    v = lz_penalty(*random_pair(7))
    d = v.to_dict()
    assert set(d) == {"model", "direction", "score_xy", "score_yx", "strength"}
    assert d["model"] == LZ_PENALTY


def test_selected_models_only():
    x, y = random_pair(8)
    verdicts = evaluate_pair(x, y, models=(ETC_EFFICACY,))
    assert list(verdicts) == [ETC_EFFICACY]
