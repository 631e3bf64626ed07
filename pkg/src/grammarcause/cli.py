"""Command-line front end: reproducible runs with machine-readable outputs.

Every output file starts with a single '#' header carrying the tool version,
a hash of the semantic configuration, and the echoed flags, so any run can
be reproduced from its own artifacts. Exit codes: 0 success, 1 usage error,
2 data error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys

from . import __version__
from .causal import MODELS, evaluate_pair
from .errors import GrammarCauseError, InvalidInputError
from .evaluation import (
    DEFAULT_RATES,
    auprc,
    auroc,
    build_report,
    decision_rate_accuracy,
    signed_score,
)
from .pipeline import (
    encode_cohort,
    load_manifest,
    proportions,
    run_candidate_experiment,
    run_reference_experiment,
)
from .causal import CausalVerdict, UNDECIDED, X_TO_Y, Y_TO_X
from .sequences import encode_nucleotides, parse_fasta, parse_pair_file
from .simulate import run_benchmark
from .stats import yuen_bootstrap_t

_MODEL_CHOICES = ",".join(MODELS)
_DEFAULT_PHIS = ",".join(str(round(0.05 * k, 2)) for k in range(20))
_POOLED_KEY = 0xFFFFFFFF


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_models(text: str) -> tuple[str, ...]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in MODELS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"models must be a comma list from {{{_MODEL_CHOICES}}}"
        )
    return tuple(m for m in MODELS if m in set(names))


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _config_header(command: str, params: dict) -> str:
    blob = json.dumps(
        {"command": command, **params}, sort_keys=True, separators=(",", ":")
    )
    digest = hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]
    flags = " ".join(f"{key}={params[key]}" for key in sorted(params))
    return f"# grammarcause {__version__} config={digest} command={command} {flags}"


def _write_csv(path: str, header: str, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--models", "--model", type=_parse_models, default=MODELS,
        help=f"comma list from {{{_MODEL_CHOICES}}} (default: all)",
    )
    parser.add_argument("--threshold", type=float, default=0.0,
                        help="undecided margin on score differences (default 0)")
    parser.add_argument("--joint-mode", choices=("shared", "matched"),
                        default="shared",
                        help="joint complexity: one shared concatenation or "
                             "direction-matched concatenations")
    parser.add_argument("--conditional-mode", choices=("fired", "all"),
                        default="fired",
                        help="replay cost: count only rules that fire, or "
                             "every rule in the grammar")
    parser.add_argument("--efficacy-polarity", choices=("greater", "lesser"),
                        default="greater",
                        help="efficacy direction rule (see README on the "
                             "polarity ambiguity)")


def _model_kwargs(args) -> dict:
    return {
        "joint_mode": args.joint_mode,
        "conditional_mode": args.conditional_mode,
        "efficacy_polarity": args.efficacy_polarity,
    }


def _mode_params(args) -> dict:
    return {
        "models": ",".join(args.models),
        "threshold": args.threshold,
        "joint_mode": args.joint_mode,
        "conditional_mode": args.conditional_mode,
        "efficacy_polarity": args.efficacy_polarity,
    }


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _single_fasta_record(path: str, role: str):
    records = parse_fasta(_read_text(path))
    if len(records) != 1:
        raise InvalidInputError(
            f"{role} FASTA must hold exactly one record, found {len(records)}"
        )
    seq_id, body = records[0]
    return seq_id, encode_nucleotides(body)


def _verdict_rows(prefix: tuple, verdicts: dict) -> list[tuple]:
    rows = []
    for model, verdict in verdicts.items():
        rows.append(prefix + (
            model, verdict.direction,
            verdict.score_xy, verdict.score_yx, verdict.strength,
        ))
    return rows


def cmd_infer(args) -> int:
    x, y = parse_pair_file(_read_text(args.pair_file), args.discretize)
    verdicts = evaluate_pair(
        x, y, args.models, args.threshold, **_model_kwargs(args)
    )
    for model in args.models:
        print(json.dumps(verdicts[model].to_dict(), sort_keys=True))
    return 0


def cmd_simulate(args) -> int:
    params = {
        "phis": ",".join(str(p) for p in args.phis),
        "trials": args.trials,
        "bins": args.bins,
        "seed": args.seed,
        **_mode_params(args),
    }
    header = _config_header("simulate", params)
    records = run_benchmark(
        args.phis, args.trials, args.bins, args.models, args.seed,
        threshold=args.threshold, jobs=args.jobs, **_model_kwargs(args),
    )
    rows = []
    for record in records:
        rows.extend(_verdict_rows(
            (record.phi, record.trial, record.truth), record.verdicts
        ))
    _write_csv(
        args.out, header,
        ("phi", "trial", "truth", "model", "direction",
         "score_xy", "score_yx", "strength"),
        rows,
    )
    report = _benchmark_report(records, args.models, list(DEFAULT_RATES),
                               args.seed)
    report["config"] = params
    report["config_line"] = header
    _write_json(args.report, report)
    print(header)
    print(f"wrote {args.out} and {args.report}")
    return 0


def _benchmark_report(records, models, rates, coin_seed: int) -> dict:
    phis_seen: list[float] = []
    for record in records:
        if record.phi not in phis_seen:
            phis_seen.append(record.phi)
    out: dict = {"models": {}}
    for model in models:
        verdicts = [r.verdicts[model] for r in records]
        truths = [r.truth for r in records]
        pooled = build_report(
            verdicts, truths, rates, coin_seed=(coin_seed << 32) | _POOLED_KEY
        )
        per_phi = []
        for phi_idx, phi in enumerate(phis_seen):
            sub = [r for r in records if r.phi == phi]
            sub_verdicts = [r.verdicts[model] for r in sub]
            sub_truths = [r.truth for r in sub]
            accuracy = decision_rate_accuracy(
                sub_verdicts, sub_truths, [1.0],
                coin_seed=(coin_seed << 32) | phi_idx,
            )[0][1]
            scores = [signed_score(v) for v in sub_verdicts]
            per_phi.append({
                "phi": phi,
                "n": len(sub),
                "overall_accuracy": accuracy,
                "auroc": auroc(scores, sub_truths),
                "auprc": auprc(scores, sub_truths),
            })
        out["models"][model] = {
            "overall": pooled.to_dict(),
            "per_phi": per_phi,
        }
    return out


def cmd_genome(args) -> int:
    reference_id, reference = _single_fasta_record(args.reference, "reference")
    raw_cohort = parse_fasta(_read_text(args.cohort))
    manifest = None
    if args.manifest:
        manifest = load_manifest(_read_text(args.manifest))
    cohort, rejects = encode_cohort(raw_cohort, manifest)
    if not cohort:
        raise InvalidInputError("no encodable cohort records")
    records = run_reference_experiment(
        reference, cohort, args.models, args.threshold,
        reference_id=reference_id, jobs=args.jobs, **_model_kwargs(args),
    )
    reports = proportions(records)
    params = {"reference_id": reference_id, **_mode_params(args)}
    header = _config_header("genome", params)
    os.makedirs(args.out_dir, exist_ok=True)
    records_path = os.path.join(args.out_dir, "records.csv")
    proportions_path = os.path.join(args.out_dir, "proportions.csv")
    rejects_path = os.path.join(args.out_dir, "rejects.csv")
    rows = []
    for record in records:
        rows.extend(_verdict_rows(
            (record.reference_id, record.sequence_id, record.group),
            record.verdicts,
        ))
    _write_csv(
        records_path, header,
        ("reference_id", "sequence_id", "group", "model",
         "direction", "score_xy", "score_yx", "strength"),
        rows,
    )
    _write_csv(
        proportions_path, header,
        ("group", "model", "n", "proportion_expected_direction"),
        [(r.group, r.model, r.n, r.proportion_expected_direction)
         for r in reports],
    )
    _write_csv(rejects_path, header, ("sequence_id", "reason"), rejects)
    print(header)
    print(f"wrote {records_path}, {proportions_path}, {rejects_path} "
          f"({len(records)} records, {len(rejects)} rejects)")
    return 0


def cmd_candidates(args) -> int:
    id_a, candidate_a = _single_fasta_record(args.candidate_a, "candidate_a")
    id_b, candidate_b = _single_fasta_record(args.candidate_b, "candidate_b")
    raw_cohort = parse_fasta(_read_text(args.cohort))
    manifest = None
    if args.manifest:
        manifest = load_manifest(_read_text(args.manifest))
    cohort, rejects = encode_cohort(raw_cohort, manifest)
    if not cohort:
        raise InvalidInputError("no encodable cohort records")
    records = run_candidate_experiment(
        candidate_a, candidate_b, cohort, args.models, args.threshold,
        jobs=args.jobs, **_model_kwargs(args),
    )
    params = {
        "candidate_a": id_a,
        "candidate_b": id_b,
        "trim": args.trim,
        "iterations": args.iterations,
        "confidence": args.confidence,
        "seed": args.seed,
        **_mode_params(args),
    }
    header = _config_header("candidates", params)
    os.makedirs(args.out_dir, exist_ok=True)
    strengths_path = os.path.join(args.out_dir, "strengths.csv")
    comparison_path = os.path.join(args.out_dir, "comparison.json")
    rejects_path = os.path.join(args.out_dir, "rejects.csv")
    _write_csv(
        strengths_path, header,
        ("sequence_id", "group", "model", "strength_a", "strength_b"),
        [(r.sequence_id, r.group, r.model, r.strength_a, r.strength_b)
         for r in records],
    )
    comparisons = {}
    for model in args.models:
        group_a = [r.strength_a for r in records if r.model == model]
        group_b = [r.strength_b for r in records if r.model == model]
        result = yuen_bootstrap_t(
            group_a, group_b, args.trim, args.iterations, args.confidence,
            seed=args.seed,
        )
        comparisons[model] = result.to_dict()
    _write_json(comparison_path, {
        "candidate_a": id_a,
        "candidate_b": id_b,
        "config": params,
        "config_line": header,
        "models": comparisons,
    })
    _write_csv(rejects_path, header, ("sequence_id", "reason"), rejects)
    print(header)
    print(f"wrote {strengths_path}, {comparison_path}, {rejects_path} "
          f"({len(records)} strength pairs, {len(rejects)} rejects)")
    return 0


def _read_benchmark_csv(path: str, models_filter) -> dict:
    by_model: dict = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    required = {"phi", "truth", "model", "direction",
                "score_xy", "score_yx", "strength"}
    if reader.fieldnames is None or not required <= set(reader.fieldnames):
        raise InvalidInputError(
            f"benchmark CSV must carry columns {sorted(required)}"
        )
    for row in reader:
        model = row["model"]
        if models_filter and model not in models_filter:
            continue
        direction = row["direction"]
        if direction not in (X_TO_Y, Y_TO_X, UNDECIDED):
            raise InvalidInputError(f"bad direction {direction!r}")
        verdict = CausalVerdict(
            model=model,
            direction=direction,
            score_xy=float(row["score_xy"]),
            score_yx=float(row["score_yx"]),
            strength=float(row["strength"]),
        )
        entry = by_model.setdefault(model, {"verdicts": [], "truths": [],
                                            "phis": []})
        entry["verdicts"].append(verdict)
        entry["truths"].append(row["truth"])
        entry["phis"].append(float(row["phi"]))
    if not by_model:
        raise InvalidInputError("no benchmark rows matched")
    return by_model


def cmd_eval_report(args) -> int:
    by_model = _read_benchmark_csv(args.benchmark_csv, args.models)
    rates = list(args.rates)
    params = {
        "rates": ",".join(str(r) for r in rates),
        "coin_seed": args.coin_seed,
        "models": ",".join(sorted(by_model)),
    }
    header = _config_header("eval-report", params)
    payload: dict = {"config": params, "config_line": header, "models": {}}
    csv_rows = []
    for model in sorted(by_model):
        entry = by_model[model]
        verdicts = entry["verdicts"]
        truths = entry["truths"]
        pooled = build_report(
            verdicts, truths, rates,
            coin_seed=(args.coin_seed << 32) | _POOLED_KEY,
        )
        phis_seen: list[float] = []
        for phi in entry["phis"]:
            if phi not in phis_seen:
                phis_seen.append(phi)
        per_phi = []
        for phi_idx, phi in enumerate(phis_seen):
            idx = [i for i, p in enumerate(entry["phis"]) if p == phi]
            sub_verdicts = [verdicts[i] for i in idx]
            sub_truths = [truths[i] for i in idx]
            accuracy = decision_rate_accuracy(
                sub_verdicts, sub_truths, [1.0],
                coin_seed=(args.coin_seed << 32) | phi_idx,
            )[0][1]
            scores = [signed_score(v) for v in sub_verdicts]
            per_phi.append({
                "phi": phi,
                "n": len(idx),
                "overall_accuracy": accuracy,
                "auroc": auroc(scores, sub_truths),
                "auprc": auprc(scores, sub_truths),
            })
        payload["models"][model] = {
            "overall": pooled.to_dict(),
            "per_phi": per_phi,
        }
        none_blank = lambda v: "" if v is None else v
        csv_rows.append(("overall", model, "", "", pooled.overall_accuracy,
                         none_blank(pooled.auroc), none_blank(pooled.auprc)))
        for rate, accuracy in pooled.decision_rate_curve:
            csv_rows.append(("curve", model, "", rate, accuracy, "", ""))
        for item in per_phi:
            csv_rows.append((
                "phi", model, item["phi"], "", item["overall_accuracy"],
                none_blank(item["auroc"]), none_blank(item["auprc"]),
            ))
    _write_json(args.out_json, payload)
    _write_csv(
        args.out_csv, header,
        ("scope", "model", "phi", "rate", "accuracy",
         "auroc", "auprc"),
        csv_rows,
    )
    print(header)
    print(f"wrote {args.out_json} and {args.out_csv}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="grammarcause",
        description="Causal direction between symbolic sequences via "
                    "grammar-based compression",
    )
    parser.add_argument("--version", action="version",
                        version=f"grammarcause {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", parents=[], help="one pair from a 2-line file")
    p.add_argument("pair_file")
    p.add_argument("--discretize", type=int, default=None, metavar="BINS",
                   help="treat lines as real values and bin them equi-width")
    _add_model_flags(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("simulate", help="coupled AR benchmark to CSV + report")
    p.add_argument("--phis", type=_parse_floats, default=_parse_floats(_DEFAULT_PHIS),
                   help=f"comma list of coupling values (default {_DEFAULT_PHIS})")
    p.add_argument("--trials", type=int, default=1000,
                   help="trials per coupling value (default 1000)")
    p.add_argument("--bins", type=int, default=2,
                   help="equi-width bins for discretization (default 2)")
    p.add_argument("--seed", type=int, default=0,
                   help="master seed; every trial derives its own (default 0)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker processes (default: logical cores)")
    p.add_argument("--out", default="benchmark.csv",
                   help="benchmark CSV path (default benchmark.csv)")
    p.add_argument("--report", default=None,
                   help="evaluation JSON path (default: CSV path with "
                        ".eval.json)")
    _add_model_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("genome", help="reference vs cohort FASTA experiment")
    p.add_argument("reference", help="single-record reference FASTA")
    p.add_argument("cohort", help="cohort FASTA")
    p.add_argument("--manifest", default=None,
                   help="CSV of sequence_id,group (default: one group 'all')")
    p.add_argument("--out-dir", default=".",
                   help="directory for records/proportions/rejects CSVs")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    _add_model_flags(p)
    p.set_defaults(func=cmd_genome)

    p = sub.add_parser("candidates",
                       help="strength comparison against two candidates")
    p.add_argument("candidate_a", help="single-record FASTA")
    p.add_argument("candidate_b", help="single-record FASTA")
    p.add_argument("cohort", help="cohort FASTA")
    p.add_argument("--manifest", default=None)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--trim", type=float, default=0.2)
    p.add_argument("--iterations", type=int, default=5000)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    _add_model_flags(p)
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("eval-report",
                       help="accuracy/AUROC/AUPRC report from a benchmark CSV")
    p.add_argument("benchmark_csv")
    p.add_argument("--out-json", default="report.json")
    p.add_argument("--out-csv", default="report.csv")
    p.add_argument("--rates", type=_parse_floats,
                   default=tuple(DEFAULT_RATES),
                   help="decision rates, increasing, ending at 1.0")
    p.add_argument("--coin-seed", type=int, default=0,
                   help="seed for resolving undecided verdicts (default 0)")
    p.add_argument("--models", "--model", type=_parse_models, default=None,
                   help="restrict to these models (default: all present)")
    p.set_defaults(func=cmd_eval_report)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "report", "") is None:
        root, _ = os.path.splitext(args.out)
        args.report = root + ".eval.json"
    try:
        return args.func(args)
    except (GrammarCauseError, OSError, ValueError, csv.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
