"""Unidirectionally coupled AR(1) benchmark with reproducible randomness."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _nsrps
from .causal import MODELS, Y_TO_X, CausalVerdict, evaluate_pair
from .errors import InvalidInputError
from .sequences import RealSeries, discretize_equiwidth


@dataclass(frozen=True)
class ArConfig:
    """Coupled AR(1) parameters; the coupling phi drives Y into X."""

    phi: float
    seed: int
    a: float = 0.8
    b: float = 0.8
    n: int = 1000
    noise_intensity: float = 0.01

    def __post_init__(self):
        if not (abs(self.a) < 1 and abs(self.b) < 1):
            raise InvalidInputError("|a| and |b| must be below 1")
        if self.phi < 0:
            raise InvalidInputError("phi must be non-negative")
        if self.n < 2:
            raise InvalidInputError("n must be at least 2")
        if self.noise_intensity <= 0:
            raise InvalidInputError("noise_intensity must be positive")
        if self.seed < 0:
            raise InvalidInputError("seed must be non-negative")


def ar1_coupled(config: ArConfig) -> tuple[RealSeries, RealSeries]:
    """Simulate the pair; ground truth is Y causes X.

    X(0) = Y(0) = 0; for t >= 1, Y(t) = b*Y(t-1) + v*N_Y(t) and
    X(t) = a*X(t-1) + phi*Y(t-1) + v*N_X(t). Noise is standard normal from
    numpy's PCG64 generator seeded with config.seed; the Y noise vector is
    drawn before the X noise vector.
    """
    rng = np.random.default_rng(config.seed)
    n = config.n
    noise_y = rng.standard_normal(n - 1)
    noise_x = rng.standard_normal(n - 1)
    x = np.zeros(n)
    y = np.zeros(n)
    v = config.noise_intensity
    for t in range(1, n):
        y[t] = config.b * y[t - 1] + v * noise_y[t - 1]
        x[t] = config.a * x[t - 1] + config.phi * y[t - 1] + v * noise_x[t - 1]
    return RealSeries(x), RealSeries(y)


@dataclass(frozen=True, eq=False)
class BenchmarkRecord:
    """One simulated trial: coupling, trial index, truth, model verdicts."""

    phi: float
    trial: int
    truth: str
    verdicts: dict[str, CausalVerdict]


def child_seed(master_seed: int, phi_index: int, trial: int) -> int:
    """Injective per-trial seed: no two trials share a noise stream."""
    if not (0 <= phi_index < 2**32 and 0 <= trial < 2**32):
        raise InvalidInputError("phi_index and trial must fit in 32 bits")
    return (master_seed << 64) | (phi_index << 32) | trial


def _trial_verdicts(payload) -> dict[str, CausalVerdict]:
    (phi, seed, bins, models, threshold, a, b, n, v,
     joint_mode, conditional_mode, efficacy_polarity) = payload
    series_x, series_y = ar1_coupled(
        ArConfig(phi=phi, seed=seed, a=a, b=b, n=n, noise_intensity=v)
    )
    x = discretize_equiwidth(series_x, bins)
    y = discretize_equiwidth(series_y, bins)
    return evaluate_pair(
        x, y, models, threshold,
        joint_mode=joint_mode,
        conditional_mode=conditional_mode,
        efficacy_polarity=efficacy_polarity,
    )


def run_benchmark(
    phis,
    trials_per_phi: int,
    bins: int,
    models=MODELS,
    master_seed: int = 0,
    *,
    a: float = 0.8,
    b: float = 0.8,
    n: int = 1000,
    noise_intensity: float = 0.01,
    threshold: float = 0.0,
    joint_mode: str = "shared",
    conditional_mode: str = "fired",
    efficacy_polarity: str = "greater",
    jobs: int = 1,
) -> list[BenchmarkRecord]:
    """Simulate and evaluate every (phi, trial) cell.

    Each cell derives its own seed from master_seed, simulates the pair,
    bins both series equi-width, and records one verdict per model. The
    record list is ordered by (phi position, trial) regardless of jobs.
    """
    phis = [float(p) for p in phis]
    if not phis:
        raise InvalidInputError("phis must be non-empty")
    if trials_per_phi < 1:
        raise InvalidInputError("trials_per_phi must be at least 1")
    if bins < 2:
        raise InvalidInputError("bins must be at least 2")
    if master_seed < 0:
        raise InvalidInputError("master_seed must be non-negative")
    payloads = [
        (
            phi,
            child_seed(master_seed, phi_idx, trial),
            bins, tuple(models), threshold, a, b, n, noise_intensity,
            joint_mode, conditional_mode, efficacy_polarity,
        )
        for phi_idx, phi in enumerate(phis)
        for trial in range(trials_per_phi)
    ]
    if jobs > 1:
        _nsrps.warm_up()
        chunk = max(1, len(payloads) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            all_verdicts = list(
                pool.map(_trial_verdicts, payloads, chunksize=chunk)
            )
    else:
        all_verdicts = [_trial_verdicts(p) for p in payloads]
    records = []
    for payload, verdicts in zip(payloads, all_verdicts):
        phi = payload[0]
        trial = payload[1] & 0xFFFFFFFF
        records.append(
            BenchmarkRecord(phi=phi, trial=trial, truth=Y_TO_X, verdicts=verdicts)
        )
    return records
