"""Batch orchestration for cohort experiments against fixed sequences."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _nsrps
from .causal import (
    ETC_EFFICACY,
    ETC_PENALTY,
    LZ_PENALTY,
    MODELS,
    X_TO_Y,
    CausalVerdict,
    SequenceProfile,
    evaluate_pair,
)
from .errors import AmbiguousNucleotideError, InvalidInputError
from .sequences import SymbolicSequence, encode_nucleotides

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PairRunRecord:
    """One cohort member evaluated against the reference."""

    reference_id: str
    sequence_id: str
    group: str
    verdicts: dict[str, CausalVerdict]


@dataclass(frozen=True)
class ProportionReport:
    """Per (group, model): fraction of verdicts in the expected direction."""

    group: str
    model: str
    n: int
    proportion_expected_direction: float


@dataclass(frozen=True, eq=False)
class CandidateStrengthRecord:
    """One cohort member's causal strength against each candidate."""

    sequence_id: str
    group: str
    model: str
    strength_a: float
    strength_b: float


_POOL_CONTEXT: dict = {}


def _init_pool(context: dict) -> None:
    global _POOL_CONTEXT
    _POOL_CONTEXT = context


def _reference_worker(item):
    idx, seq = item
    ctx = _POOL_CONTEXT
    return idx, evaluate_pair(
        ctx["profile"].seq,
        seq,
        ctx["models"],
        ctx["threshold"],
        joint_mode=ctx["joint_mode"],
        conditional_mode=ctx["conditional_mode"],
        efficacy_polarity=ctx["efficacy_polarity"],
        x_profile=ctx["profile"],
    )


def _candidate_worker(item):
    idx, seq = item
    ctx = _POOL_CONTEXT
    out = []
    for profile in (ctx["profile_a"], ctx["profile_b"]):
        out.append(evaluate_pair(
            profile.seq,
            seq,
            ctx["models"],
            ctx["threshold"],
            joint_mode=ctx["joint_mode"],
            conditional_mode=ctx["conditional_mode"],
            efficacy_polarity=ctx["efficacy_polarity"],
            x_profile=profile,
        ))
    return idx, out[0], out[1]


def _map_jobs(worker, items, context: dict, jobs: int):
    if jobs > 1 and len(items) > 1:
        _nsrps.warm_up()
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_pool, initargs=(context,)
        ) as pool:
            results = list(pool.map(worker, items))
    else:
        _init_pool(context)
        results = [worker(item) for item in items]
    return sorted(results, key=lambda r: r[0])


def _shared_alphabet(fixed: list[SymbolicSequence], cohort) -> int:
    alphabet = max(seq.alphabet_size for seq in fixed)
    for _, _, seq in cohort:
        alphabet = max(alphabet, seq.alphabet_size)
    return alphabet


def _prepared_profile(seq: SymbolicSequence, alphabet: int,
                      need_etc: bool, need_lz: bool) -> SequenceProfile:
    profile = SequenceProfile(seq.with_alphabet(alphabet))
    if need_etc:
        profile.ensure_etc()
    if need_lz:
        profile.ensure_lz()
    return profile


def run_reference_experiment(
    reference: SymbolicSequence,
    cohort,
    models=MODELS,
    threshold: float = 0.0,
    *,
    reference_id: str = "reference",
    joint_mode: str = "shared",
    conditional_mode: str = "fired",
    efficacy_polarity: str = "greater",
    jobs: int = 1,
) -> list[PairRunRecord]:
    """Evaluate reference vs every cohort member.

    Cohort items are (sequence_id, group, sequence). Members identical to
    the reference are skipped with a logged notice since the models reject
    identical inputs; the expected direction for every record is
    reference -> member.
    """
    cohort = list(cohort)
    if not cohort:
        raise InvalidInputError("cohort must be non-empty")
    retained = []
    for seq_id, group, seq in cohort:
        if reference.same_symbols(seq):
            log.warning("skipping %s: identical to the reference", seq_id)
            continue
        retained.append((seq_id, group, seq))
    if not retained:
        raise InvalidInputError("no cohort members retained")
    models = tuple(models)
    alphabet = _shared_alphabet([reference], retained)
    need_etc = ETC_PENALTY in models or ETC_EFFICACY in models
    profile = _prepared_profile(
        reference, alphabet, need_etc, LZ_PENALTY in models
    )
    context = {
        "profile": profile,
        "models": models,
        "threshold": threshold,
        "joint_mode": joint_mode,
        "conditional_mode": conditional_mode,
        "efficacy_polarity": efficacy_polarity,
    }
    items = [
        (idx, seq.with_alphabet(alphabet))
        for idx, (_, _, seq) in enumerate(retained)
    ]
    results = _map_jobs(_reference_worker, items, context, jobs)
    records = []
    for (idx, verdicts), (seq_id, group, _) in zip(results, retained):
        records.append(PairRunRecord(
            reference_id=reference_id,
            sequence_id=seq_id,
            group=group,
            verdicts=verdicts,
        ))
    return records


def proportions(records) -> list[ProportionReport]:
    """Fraction of records per (group, model) inferred reference -> member.

    Undecided counts as not-expected; no coin is flipped here.
    """
    records = list(records)
    if not records:
        raise InvalidInputError("records must be non-empty")
    groups: list[str] = []
    tallies: dict[tuple[str, str], list[int]] = {}
    model_order: list[str] = []
    for record in records:
        if record.group not in groups:
            groups.append(record.group)
        for model, verdict in record.verdicts.items():
            if model not in model_order:
                model_order.append(model)
            key = (record.group, model)
            tally = tallies.setdefault(key, [0, 0])
            tally[0] += 1
            if verdict.direction == X_TO_Y:
                tally[1] += 1
    out = []
    for group in groups:
        for model in model_order:
            key = (group, model)
            if key not in tallies:
                continue
            n, expected = tallies[key]
            out.append(ProportionReport(
                group=group,
                model=model,
                n=n,
                proportion_expected_direction=expected / n,
            ))
    return out


def run_candidate_experiment(
    candidate_a: SymbolicSequence,
    candidate_b: SymbolicSequence,
    cohort,
    models=MODELS,
    threshold: float = 0.0,
    *,
    joint_mode: str = "shared",
    conditional_mode: str = "fired",
    efficacy_polarity: str = "greater",
    jobs: int = 1,
) -> list[CandidateStrengthRecord]:
    """Causal strength of each cohort member against two fixed candidates.

    Directions are ignored downstream; only strengths matter. Members
    identical to either candidate are skipped with a logged notice.
    """
    if candidate_a.same_symbols(candidate_b):
        raise InvalidInputError("candidates must be distinct")
    cohort = list(cohort)
    if not cohort:
        raise InvalidInputError("cohort must be non-empty")
    retained = []
    for seq_id, group, seq in cohort:
        if candidate_a.same_symbols(seq) or candidate_b.same_symbols(seq):
            log.warning("skipping %s: identical to a candidate", seq_id)
            continue
        retained.append((seq_id, group, seq))
    if not retained:
        raise InvalidInputError("no cohort members retained")
    models = tuple(models)
    alphabet = _shared_alphabet([candidate_a, candidate_b], retained)
    need_etc = ETC_PENALTY in models or ETC_EFFICACY in models
    need_lz = LZ_PENALTY in models
    context = {
        "profile_a": _prepared_profile(candidate_a, alphabet, need_etc, need_lz),
        "profile_b": _prepared_profile(candidate_b, alphabet, need_etc, need_lz),
        "models": models,
        "threshold": threshold,
        "joint_mode": joint_mode,
        "conditional_mode": conditional_mode,
        "efficacy_polarity": efficacy_polarity,
    }
    items = [
        (idx, seq.with_alphabet(alphabet))
        for idx, (_, _, seq) in enumerate(retained)
    ]
    results = _map_jobs(_candidate_worker, items, context, jobs)
    records = []
    for (idx, verdicts_a, verdicts_b), (seq_id, group, _) in zip(results, retained):
        for model in models:
            records.append(CandidateStrengthRecord(
                sequence_id=seq_id,
                group=group,
                model=model,
                strength_a=verdicts_a[model].strength,
                strength_b=verdicts_b[model].strength,
            ))
    return records


def load_manifest(text: str) -> dict[str, str]:
    """Parse a two-column CSV of sequence_id, group; header row optional."""
    manifest: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise InvalidInputError(
                f"manifest line {lineno}: expected 'sequence_id,group'"
            )
        if lineno == 1 and parts == ["sequence_id", "group"]:
            continue
        if parts[0] in manifest:
            raise InvalidInputError(
                f"manifest line {lineno}: duplicate id {parts[0]!r}"
            )
        manifest[parts[0]] = parts[1]
    return manifest


def encode_cohort(records, manifest: dict[str, str] | None = None
                  ) -> tuple[list[tuple[str, str, SymbolicSequence]],
                             list[tuple[str, str]]]:
    """Encode raw FASTA records, collecting ambiguous ones as rejects.

    Records are (identifier, raw text); the result cohort entries are
    (identifier, group, sequence). Members missing from the manifest get
    group "ungrouped"; with no manifest at all every member gets "all".
    """
    cohort = []
    rejects = []
    for seq_id, text in records:
        try:
            seq = encode_nucleotides(text)
        except AmbiguousNucleotideError as exc:
            rejects.append((seq_id, str(exc)))
            continue
        if manifest is None:
            group = "all"
        else:
            group = manifest.get(seq_id, "ungrouped")
        cohort.append((seq_id, group, seq))
    return cohort, rejects
