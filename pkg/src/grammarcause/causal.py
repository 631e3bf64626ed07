"""Causal direction models over symbolic sequence pairs.

Three models compare how well one sequence's structure accounts for the
other. The two penalty models (grammar-based and LZ-based) infer the
direction with the smaller cross-compression penalty; the efficacy model
compares normalized residual complexities after cross-grammar replay.
The absolute difference between the two directional scores is the causal
strength.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IdenticalSequencesError, InvalidInputError
from .etc import EtcResult, etc_compress, etc_conditional
from .lz import lz76, lz_joint
from .sequences import SymbolicSequence

X_TO_Y = "x->y"
Y_TO_X = "y->x"
UNDECIDED = "undecided"

ETC_PENALTY = "etc-p"
ETC_EFFICACY = "etc-e"
LZ_PENALTY = "lz-p"
MODELS = (ETC_PENALTY, ETC_EFFICACY, LZ_PENALTY)

JOINT_MODES = ("shared", "matched")
CONDITIONAL_MODES = ("fired", "all")
EFFICACY_POLARITIES = ("greater", "lesser")


@dataclass(frozen=True, eq=False)
class CausalVerdict:
    """One model's inference for a pair: direction, scores, strength."""

    model: str
    direction: str
    score_xy: float
    score_yx: float
    strength: float

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "direction": self.direction,
            "score_xy": self.score_xy,
            "score_yx": self.score_yx,
            "strength": self.strength,
        }


@dataclass(eq=False)
class SequenceProfile:
    """Reusable per-sequence compression artifacts for pair evaluation.

    Build one for a sequence that takes part in many pairs (a reference or
    candidate) so its grammar and LZ count are computed once. The sequence
    must already carry the shared alphabet bound of the pairs it joins.
    """

    seq: SymbolicSequence
    etc: EtcResult | None = None
    lz: int | None = None

    def ensure_etc(self) -> EtcResult:
        if self.etc is None:
            self.etc = etc_compress(self.seq)
        return self.etc

    def ensure_lz(self) -> int:
        if self.lz is None:
            self.lz = lz76(self.seq)
        return self.lz


def _normalize_models(models) -> tuple[str, ...]:
    requested = set(models)
    unknown = requested - set(MODELS)
    if unknown:
        raise InvalidInputError(f"unknown models: {sorted(unknown)}")
    if not requested:
        raise InvalidInputError("at least one model required")
    return tuple(m for m in MODELS if m in requested)


def _decide_smaller_wins(score_xy: float, score_yx: float, threshold: float) -> str:
    if score_xy < score_yx - threshold:
        return X_TO_Y
    if score_yx < score_xy - threshold:
        return Y_TO_X
    return UNDECIDED


def _decide_greater_wins(score_xy: float, score_yx: float, threshold: float) -> str:
    if score_xy > score_yx + threshold:
        return X_TO_Y
    if score_yx > score_xy + threshold:
        return Y_TO_X
    return UNDECIDED


def _verdict(model: str, score_xy: float, score_yx: float, direction: str
             ) -> CausalVerdict:
    return CausalVerdict(
        model=model,
        direction=direction,
        score_xy=float(score_xy),
        score_yx=float(score_yx),
        strength=abs(float(score_yx) - float(score_xy)),
    )


def _check_profile(profile: SequenceProfile | None, seq: SymbolicSequence
                   ) -> SequenceProfile:
    if profile is None:
        return SequenceProfile(seq)
    if profile.seq.alphabet_size != seq.alphabet_size or not profile.seq.same_symbols(seq):
        raise InvalidInputError("profile does not match its sequence")
    return profile


def evaluate_pair(
    x: SymbolicSequence,
    y: SymbolicSequence,
    models=MODELS,
    threshold: float = 0.0,
    *,
    joint_mode: str = "shared",
    conditional_mode: str = "fired",
    efficacy_polarity: str = "greater",
    x_profile: SequenceProfile | None = None,
    y_profile: SequenceProfile | None = None,
) -> dict[str, CausalVerdict]:
    """Evaluate the requested models on one pair, sharing common work.

    Both sequences are lifted to their shared alphabet bound before any
    compression so grammar fresh symbols can never collide with the other
    sequence's ids. Supplied profiles must already be at that bound.
    """
    wanted = _normalize_models(models)
    if threshold < 0:
        raise InvalidInputError("threshold must be non-negative")
    if joint_mode not in JOINT_MODES:
        raise InvalidInputError(f"joint_mode must be one of {JOINT_MODES}")
    if conditional_mode not in CONDITIONAL_MODES:
        raise InvalidInputError(
            f"conditional_mode must be one of {CONDITIONAL_MODES}"
        )
    if efficacy_polarity not in EFFICACY_POLARITIES:
        raise InvalidInputError(
            f"efficacy_polarity must be one of {EFFICACY_POLARITIES}"
        )
    if len(x) < 2 or len(y) < 2:
        raise InvalidInputError("sequences must have length at least 2")
    if x.same_symbols(y):
        raise IdenticalSequencesError("identical sequences")

    alphabet = max(x.alphabet_size, y.alphabet_size)
    if x.alphabet_size != alphabet:
        x = x.with_alphabet(alphabet)
        x_profile = None
    if y.alphabet_size != alphabet:
        y = y.with_alphabet(alphabet)
        y_profile = None
    xp = _check_profile(x_profile, x)
    yp = _check_profile(y_profile, y)

    verdicts: dict[str, CausalVerdict] = {}

    if ETC_PENALTY in wanted or ETC_EFFICACY in wanted:
        etc_x = xp.ensure_etc()
        etc_y = yp.ensure_etc()
        cond_xy = etc_conditional(y, etc_x.grammar)
        cond_yx = etc_conditional(x, etc_y.grammar)
        resid_y = etc_compress(cond_xy.residual)
        resid_x = etc_compress(cond_yx.residual)

        if ETC_PENALTY in wanted:
            if conditional_mode == "fired":
                cost_xy = cond_xy.applied_steps
                cost_yx = cond_yx.applied_steps
            else:
                cost_xy = len(etc_x.grammar)
                cost_yx = len(etc_y.grammar)
            p_xy = cost_xy + resid_y.steps - etc_y.steps
            p_yx = cost_yx + resid_x.steps - etc_x.steps
            verdicts[ETC_PENALTY] = _verdict(
                ETC_PENALTY, p_xy, p_yx,
                _decide_smaller_wins(p_xy, p_yx, threshold),
            )
        if ETC_EFFICACY in wanted:
            e_xy = resid_y.normalized
            e_yx = resid_x.normalized
            decide = (
                _decide_greater_wins
                if efficacy_polarity == "greater"
                else _decide_smaller_wins
            )
            verdicts[ETC_EFFICACY] = _verdict(
                ETC_EFFICACY, e_xy, e_yx, decide(e_xy, e_yx, threshold)
            )

    if LZ_PENALTY in wanted:
        lz_x = xp.ensure_lz()
        lz_y = yp.ensure_lz()
        if joint_mode == "shared":
            joint = lz_joint(x, y, "x-then-y")
            p_xy = joint - lz_x
            p_yx = joint - lz_y
        else:
            p_xy = lz_joint(x, y, "x-then-y") - lz_x
            p_yx = lz_joint(x, y, "y-then-x") - lz_y
        verdicts[LZ_PENALTY] = _verdict(
            LZ_PENALTY, p_xy, p_yx,
            _decide_smaller_wins(p_xy, p_yx, threshold),
        )

    return {m: verdicts[m] for m in wanted}


def etc_penalty(x: SymbolicSequence, y: SymbolicSequence,
                threshold: float = 0.0, *,
                conditional_mode: str = "fired") -> CausalVerdict:
    """Grammar-penalty model: cross-replay cost plus residual minus own ETC."""
    return evaluate_pair(
        x, y, (ETC_PENALTY,), threshold, conditional_mode=conditional_mode
    )[ETC_PENALTY]


def etc_efficacy(x: SymbolicSequence, y: SymbolicSequence,
                 threshold: float = 0.0, *,
                 polarity: str = "greater") -> CausalVerdict:
    """Efficacy model: normalized residual ETC after cross-grammar replay.

    The default direction rule is greater-score-wins; the lesser-wins
    polarity is exposed because the two readings of the source material
    disagree (see README notes).
    """
    return evaluate_pair(
        x, y, (ETC_EFFICACY,), threshold, efficacy_polarity=polarity
    )[ETC_EFFICACY]


def lz_penalty(x: SymbolicSequence, y: SymbolicSequence,
               threshold: float = 0.0, *,
               joint_mode: str = "shared") -> CausalVerdict:
    """LZ-penalty model: joint complexity minus each margin, smaller wins."""
    return evaluate_pair(
        x, y, (LZ_PENALTY,), threshold, joint_mode=joint_mode
    )[LZ_PENALTY]
