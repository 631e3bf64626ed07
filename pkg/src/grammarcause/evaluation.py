"""Decision-rate accuracy curves, AUROC, and AUPRC over verdict batches."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .causal import ETC_EFFICACY, UNDECIDED, X_TO_Y, Y_TO_X, CausalVerdict
from .errors import InvalidInputError

DEFAULT_RATES = tuple(round(k / 10, 1) for k in range(1, 11))


@dataclass(frozen=True, eq=False)
class EvalReport:
    """Decision-rate curve plus threshold-free ranking metrics."""

    decision_rate_curve: tuple[tuple[float, float], ...]
    auroc: float | None
    auprc: float | None
    overall_accuracy: float

    def __post_init__(self):
        rates = [r for r, _ in self.decision_rate_curve]
        if any(r2 <= r1 for r1, r2 in zip(rates, rates[1:])):
            raise InvalidInputError("curve rates must be strictly increasing")
        if not rates or rates[-1] != 1.0:
            raise InvalidInputError("curve must end at rate 1.0")

    def to_dict(self) -> dict:
        return {
            "decision_rate_curve": [
                {"rate": r, "accuracy": a} for r, a in self.decision_rate_curve
            ],
            "auroc": self.auroc,
            "auprc": self.auprc,
            "overall_accuracy": self.overall_accuracy,
        }


def _check_directions(truths) -> None:
    bad = {t for t in truths} - {X_TO_Y, Y_TO_X}
    if bad:
        raise InvalidInputError(f"truth labels must be directions, got {sorted(bad)}")


def resolve_undecided(verdicts, coin_seed: int = 0) -> list[str]:
    """Resolve every undecided verdict once with a fair coin.

    Coins are drawn in original index order from a generator seeded with
    coin_seed, so the resolution is independent of any later sorting.
    """
    rng = np.random.default_rng(coin_seed)
    out = []
    for v in verdicts:
        if v.direction == UNDECIDED:
            out.append(X_TO_Y if rng.integers(2) == 0 else Y_TO_X)
        else:
            out.append(v.direction)
    return out


def decision_rate_accuracy(verdicts, truths, rates, coin_seed: int = 0
                           ) -> list[tuple[float, float]]:
    """Accuracy over the top k% of verdicts ranked by causal strength.

    Verdicts sort by strength descending with the original index breaking
    ties; for each rate k the accuracy covers the ceil(k*N) strongest.
    """
    if len(verdicts) != len(truths):
        raise InvalidInputError("verdicts and truths must have equal length")
    if len(verdicts) < 1:
        raise InvalidInputError("at least one verdict required")
    _check_directions(truths)
    for r in rates:
        if not (0 < r <= 1):
            raise InvalidInputError(f"rate {r} outside (0, 1]")
    n = len(verdicts)
    resolved = resolve_undecided(verdicts, coin_seed)
    order = sorted(range(n), key=lambda i: (-verdicts[i].strength, i))
    curve = []
    for rate in rates:
        k = math.ceil(rate * n)
        top = order[:k]
        hits = sum(1 for i in top if resolved[i] == truths[i])
        curve.append((float(rate), hits / k))
    return curve


def _average_ranks(scores: np.ndarray) -> np.ndarray:
    # 1-based ranks with ties sharing their group's average rank
    order = np.argsort(scores, kind="stable")
    ranks = np.empty(len(scores), dtype=np.float64)
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def auroc(signed_scores, truths) -> float | None:
    """Rank-based AUROC with X->Y as the positive class; ties count half.

    Signed scores follow the convention that positive favors X->Y
    (see signed_score). None when only one class is present.
    """
    if len(signed_scores) != len(truths):
        raise InvalidInputError("scores and truths must have equal length")
    _check_directions(truths)
    scores = np.asarray(signed_scores, dtype=np.float64)
    positive = np.asarray([t == X_TO_Y for t in truths])
    n_pos = int(positive.sum())
    n_neg = len(scores) - n_pos
    if n_pos == 0 or n_neg == 0:
        return None
    ranks = _average_ranks(scores)
    u = ranks[positive].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def auprc(signed_scores, truths) -> float | None:
    """Average precision over a descending-score threshold sweep.

    Tied scores enter together; the area uses the step rule. None when no
    positives exist.
    """
    if len(signed_scores) != len(truths):
        raise InvalidInputError("scores and truths must have equal length")
    _check_directions(truths)
    scores = np.asarray(signed_scores, dtype=np.float64)
    positive = np.asarray([t == X_TO_Y for t in truths])
    n_pos = int(positive.sum())
    if n_pos == 0:
        return None
    order = np.argsort(-scores, kind="stable")
    ap = 0.0
    tp = 0
    seen = 0
    i = 0
    n = len(scores)
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        group = order[i:j + 1]
        new_tp = int(positive[group].sum())
        tp += new_tp
        seen += len(group)
        if new_tp:
            ap += (new_tp / n_pos) * (tp / seen)
        i = j + 1
    return float(ap)


def signed_score(verdict: CausalVerdict) -> float:
    """Signed ranking score; positive means the model favors X->Y.

    Penalty models favor the direction with the smaller score, so the sign
    is score_yx - score_xy; the efficacy model's greater-wins rule flips it.
    """
    if verdict.model == ETC_EFFICACY:
        return verdict.score_xy - verdict.score_yx
    return verdict.score_yx - verdict.score_xy


def build_report(verdicts, truths, rates=DEFAULT_RATES, coin_seed: int = 0
                 ) -> EvalReport:
    """Assemble curve, AUROC, and AUPRC for one verdict collection."""
    rates = [float(r) for r in rates]
    if not rates or rates[-1] != 1.0:
        raise InvalidInputError("rates must end at 1.0")
    curve = decision_rate_accuracy(verdicts, truths, rates, coin_seed)
    scores = [signed_score(v) for v in verdicts]
    return EvalReport(
        decision_rate_curve=tuple(curve),
        auroc=auroc(scores, truths),
        auprc=auprc(scores, truths),
        overall_accuracy=curve[-1][1],
    )
