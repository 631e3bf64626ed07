"""Causal direction between symbolic sequences via grammar-based compression.

The package infers which of two sequences better explains the other by
building a grammar for each side (pair substitution) or an incremental
parse (exhaustive-history complexity) and measuring how much that
structure helps compress the opposite sequence.
"""

__version__ = "0.1.0"

from .causal import (
    ETC_EFFICACY,
    ETC_PENALTY,
    LZ_PENALTY,
    MODELS,
    UNDECIDED,
    X_TO_Y,
    Y_TO_X,
    CausalVerdict,
    SequenceProfile,
    etc_efficacy,
    etc_penalty,
    evaluate_pair,
    lz_penalty,
)
from .errors import (
    AmbiguousNucleotideError,
    DegenerateVarianceError,
    FastaFormatError,
    GrammarCauseError,
    IdenticalSequencesError,
    InvalidInputError,
)
from .etc import (
    ConditionalResult,
    EtcResult,
    Grammar,
    etc_compress,
    etc_conditional,
    normalized_etc,
)
from .evaluation import (
    EvalReport,
    auprc,
    auroc,
    build_report,
    decision_rate_accuracy,
    resolve_undecided,
    signed_score,
)
from .lz import lz76, lz_joint
from .pipeline import (
    CandidateStrengthRecord,
    PairRunRecord,
    ProportionReport,
    encode_cohort,
    load_manifest,
    proportions,
    run_candidate_experiment,
    run_reference_experiment,
)
from .sequences import (
    RealSeries,
    SymbolicSequence,
    decode_nucleotides,
    discretize_equifrequency,
    discretize_equiwidth,
    encode_nucleotides,
    parse_fasta,
    parse_pair_file,
)
from .simulate import ArConfig, BenchmarkRecord, ar1_coupled, child_seed, run_benchmark
from .stats import TrimmedComparison, trimmed_mean, yuen_bootstrap_t

__all__ = [
    "__version__",
    "AmbiguousNucleotideError",
    "ArConfig",
    "BenchmarkRecord",
    "CandidateStrengthRecord",
    "CausalVerdict",
    "ConditionalResult",
    "DegenerateVarianceError",
    "ETC_EFFICACY",
    "ETC_PENALTY",
    "EtcResult",
    "EvalReport",
    "FastaFormatError",
    "Grammar",
    "GrammarCauseError",
    "IdenticalSequencesError",
    "InvalidInputError",
    "LZ_PENALTY",
    "MODELS",
    "PairRunRecord",
    "ProportionReport",
    "RealSeries",
    "SequenceProfile",
    "SymbolicSequence",
    "UNDECIDED",
    "X_TO_Y",
    "Y_TO_X",
    "ar1_coupled",
    "auprc",
    "auroc",
    "build_report",
    "child_seed",
    "decision_rate_accuracy",
    "decode_nucleotides",
    "discretize_equifrequency",
    "discretize_equiwidth",
    "encode_cohort",
    "encode_nucleotides",
    "etc_compress",
    "etc_conditional",
    "etc_efficacy",
    "etc_penalty",
    "evaluate_pair",
    "load_manifest",
    "lz76",
    "lz_joint",
    "lz_penalty",
    "normalized_etc",
    "parse_fasta",
    "parse_pair_file",
    "proportions",
    "resolve_undecided",
    "run_benchmark",
    "run_candidate_experiment",
    "run_reference_experiment",
    "signed_score",
    "trimmed_mean",
    "yuen_bootstrap_t",
]
