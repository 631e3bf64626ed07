import math

import numpy as np
import pytest

from grammarcause import (
    UNDECIDED,
    X_TO_Y,
    Y_TO_X,
    CausalVerdict,
    InvalidInputError,
    auprc,
    auroc,
    build_report,
    decision_rate_accuracy,
    resolve_undecided,
    signed_score,
)


def verdict(direction, strength, model="lz-p"):
    if direction == X_TO_Y:
        score_xy, score_yx = 0.0, strength
    elif direction == Y_TO_X:
        score_xy, score_yx = strength, 0.0
    else:
        score_xy = score_yx = 0.0
    return CausalVerdict(model, direction, score_xy, score_yx, strength)


def test_decision_rate_prefers_confident_verdicts():
    # top five by strength are correct, bottom five wrong
    verdicts = [verdict(X_TO_Y, 10 - i) for i in range(5)]
    verdicts += [verdict(Y_TO_X, 1 - 0.1 * i) for i in range(5)]
    truths = [X_TO_Y] * 10
    curve = decision_rate_accuracy(verdicts, truths, [0.5, 1.0])
    assert curve[0] == (0.5, 1.0)
    assert curve[1] == (1.0, 0.5)


def test_decision_rate_rounds_partial_counts_up():
    verdicts = [verdict(X_TO_Y, 3.0), verdict(X_TO_Y, 2.0), verdict(Y_TO_X, 1.0)]
    truths = [X_TO_Y, X_TO_Y, X_TO_Y]
    curve = decision_rate_accuracy(verdicts, truths, [0.4, 1.0])
    # ceil(0.4 * 3) = 2 verdicts considered
    assert curve[0] == (0.4, 1.0)


def test_undecided_coin_is_fair_and_deterministic():
    verdicts = [verdict(UNDECIDED, 0.0) for _ in range(2000)]
    once = resolve_undecided(verdicts, coin_seed=5)
    again = resolve_undecided(verdicts, coin_seed=5)
    assert once == again
    share = sum(1 for d in once if d == X_TO_Y) / len(once)
    assert 0.45 < share < 0.55


def test_all_undecided_scores_near_half():
    verdicts = [verdict(UNDECIDED, 0.0) for _ in range(2000)]
    truths = [X_TO_Y] * 2000
    curve = decision_rate_accuracy(verdicts, truths, [1.0], coin_seed=1)
    assert curve[0][1] == pytest.approx(0.5, abs=0.05)


def test_auroc_perfect_separation():
    scores = [3.0, 2.0, 1.0, -1.0, -2.0]
    truths = [X_TO_Y, X_TO_Y, X_TO_Y, Y_TO_X, Y_TO_X]
    assert auroc(scores, truths) == 1.0


def test_auroc_reversed_separation():
    scores = [-1.0, -2.0, 1.0, 2.0]
    truths = [X_TO_Y, X_TO_Y, Y_TO_X, Y_TO_X]
    assert auroc(scores, truths) == 0.0


def test_auroc_ties_count_half():
    scores = [1.0, 1.0]
    truths = [X_TO_Y, Y_TO_X]
    assert auroc(scores, truths) == 0.5


def test_auroc_single_class_is_none():
    assert auroc([1.0, 2.0], [X_TO_Y, X_TO_Y]) is None


def test_auroc_monotone_transform_invariant():
    rng = np.random.default_rng(2)
    scores = rng.normal(size=60).tolist()
    truths = [X_TO_Y if rng.random() < 0.5 else Y_TO_X for _ in range(60)]
    if len(set(truths)) < 2:
        truths[0] = X_TO_Y
        truths[1] = Y_TO_X
    base = auroc(scores, truths)
    squashed = auroc([math.tanh(s) for s in scores], truths)
    assert squashed == pytest.approx(base)


def test_auroc_negation_flips():
    rng = np.random.default_rng(4)
    scores = rng.normal(size=50).tolist()
    truths = [X_TO_Y if rng.random() < 0.4 else Y_TO_X for _ in range(50)]
    truths[0], truths[1] = X_TO_Y, Y_TO_X
    base = auroc(scores, truths)
    flipped = auroc([-s for s in scores], truths)
    assert flipped == pytest.approx(1.0 - base)


def test_auprc_hand_value():
    scores = [0.9, 0.8, 0.7]
    truths = [X_TO_Y, Y_TO_X, X_TO_Y]
    assert auprc(scores, truths) == pytest.approx(0.5 + 1.0 / 3.0)


def test_auprc_no_positives_is_none():
    assert auprc([1.0, 2.0], [Y_TO_X, Y_TO_X]) is None


def test_auprc_random_scores_near_prevalence():
    rng = np.random.default_rng(8)
    n = 4000
    truths = [X_TO_Y if rng.random() < 0.3 else Y_TO_X for _ in range(n)]
    scores = rng.normal(size=n).tolist()
    prevalence = truths.count(X_TO_Y) / n
    assert auprc(scores, truths) == pytest.approx(prevalence, abs=0.05)


def test_signed_score_convention():
    p = CausalVerdict("lz-p", X_TO_Y, 1.0, 4.0, 3.0)
    e = CausalVerdict("etc-e", X_TO_Y, 0.9, 0.2, 0.7)
    assert signed_score(p) == pytest.approx(3.0)
    assert signed_score(e) == pytest.approx(0.7)


def test_report_full_rate_matches_overall():
    rng = np.random.default_rng(14)
    verdicts = []
    truths = []
    for _ in range(40):
        d = X_TO_Y if rng.random() < 0.5 else Y_TO_X
        verdicts.append(verdict(d, float(rng.random())))
        truths.append(X_TO_Y if rng.random() < 0.7 else Y_TO_X)
    report = build_report(verdicts, truths)
    assert report.decision_rate_curve[-1][0] == 1.0
    assert report.decision_rate_curve[-1][1] == pytest.approx(
        report.overall_accuracy
    )
    d = report.to_dict()
    assert set(d) == {"decision_rate_curve", "auroc", "auprc",
                      "overall_accuracy"}


def test_report_validates_rates():
    verdicts = [verdict(X_TO_Y, 1.0), verdict(Y_TO_X, 2.0)]
    truths = [X_TO_Y, Y_TO_X]
    with pytest.raises(InvalidInputError):
        build_report(verdicts, truths, rates=[0.5, 0.5, 1.0])
    with pytest.raises(InvalidInputError):
        build_report(verdicts, truths, rates=[0.5, 0.9])
    with pytest.raises(InvalidInputError):
        decision_rate_accuracy(verdicts, [X_TO_Y], [1.0])
