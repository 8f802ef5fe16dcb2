"""Channel-inversion power control over a reciprocal uplink, Monte Carlo.

The transmitter learns the downlink channel h_d from pilots and relies on
reciprocity for the uplink: it beamforms along conj(h_d)/||h_d|| and
inverts its transmit power, P_t = Q / ||h_d||^2, so the power arriving at
the receiver is the constant Q. Inversion is truncated: a trial whose
required power exceeds p_max is suspended rather than clamped, which
keeps the constant-received-power property exact on every transmitted
trial. The eavesdropper observes through an independent Rayleigh channel
and sees a randomly varying transmit power.

Per trial the secrecy outcome is the rate-interval assessment of the
realized (SNR_bob, SNR_eve) pair. Trials use disjoint keyed substreams,
so any single trial is reproducible in isolation and results do not
depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .channels import ReciprocityError, _check_antennas, apply_reciprocity_error, sample_rayleigh
from .fb_coding import ApproximationConfig, DEFAULT_APPROXIMATION, _check_blocklength
from .numerics import RngSeed, SubstreamSource, _as_count
from .secrecy import ConstraintPair, SecrecyAssessment, rate_interval

# Keyed substream roles within one trial; trial t uses stream ids
# base + STREAMS_PER_TRIAL*t + role.
_ROLE_CHANNEL = 0
_ROLE_RECIPROCITY = 1
_ROLE_EVE = 2
STREAMS_PER_TRIAL = 4


@dataclass(frozen=True, slots=True)
class CipcConfig:
    """Inputs of one channel-inversion Monte Carlo run."""

    q_target: float
    p_max: float
    n_antennas_tx: int
    noise_power_bob: float
    noise_power_eve: float
    blocklength: int
    constraints: ConstraintPair
    reciprocity: ReciprocityError
    trials: int
    seed: RngSeed
    approx: ApproximationConfig = DEFAULT_APPROXIMATION
    #: Clamp the transmit power at p_max instead of suspending. Breaks the
    #: constant-received-power property; off by default.
    clamp_power: bool = False

    def __post_init__(self):
        for name in ("q_target", "noise_power_bob", "noise_power_eve"):
            v = float(getattr(self, name))
            if math.isnan(v) or v <= 0.0:
                raise ValueError(f"{name} must be positive, got {v!r}")
        if math.isnan(self.p_max) or self.p_max <= 0.0:
            raise ValueError(f"p_max must be positive, got {self.p_max!r}")
        _check_antennas(self.n_antennas_tx)
        _check_blocklength(self.blocklength)
        if _as_count(self.trials, "trials") < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True, slots=True)
class SimRecord:
    """Outcome of one trial; p_t is None when the trial was suspended."""

    trial_id: int
    p_t: float | None
    rx_power_bob: float | None
    gamma_b: float | None
    gamma_e: float | None
    assessment: SecrecyAssessment | None

    @property
    def suspended(self) -> bool:
        return self.p_t is None


@dataclass(frozen=True, slots=True)
class CipcSummary:
    trials: int
    suspension_prob: float
    #: Fraction of transmitted (non-suspended) trials that were feasible.
    feasibility_prob: float
    mean_delta_r: float
    mean_gamma_e: float
    skipped_trials: int = 0


@dataclass(frozen=True, slots=True)
class CipcResult:
    records: list[SimRecord]
    summary: CipcSummary


def cipc_beamformer(h_d: np.ndarray) -> np.ndarray:
    """Transmit beamformer conj(h_d)/||h_d||; unit norm by construction."""
    h_d = np.asarray(h_d)
    norm = np.linalg.norm(h_d)
    if norm == 0.0:
        raise ValueError("degenerate channel: cannot beamform on a zero vector")
    return h_d.conj() / norm


def cipc_power(h_known: np.ndarray, cfg: CipcConfig) -> float | None:
    """Inverted transmit power Q/||h||^2 for the channel the transmitter knows.

    Returns None when the required power exceeds p_max (truncated
    inversion, trial suspended), unless cfg.clamp_power caps it at p_max.
    """
    h_known = np.asarray(h_known)
    gain = float(np.linalg.norm(h_known) ** 2)
    if gain == 0.0:
        raise ValueError("degenerate channel: zero gain cannot be inverted")
    p_t = cfg.q_target / gain
    if p_t > cfg.p_max:
        return cfg.p_max if cfg.clamp_power else None
    return p_t


def run_cipc(cfg: CipcConfig) -> CipcResult:
    """Monte Carlo over fading: returns per-trial records plus a summary.

    Per trial: draw the downlink channel h_d (Rayleigh), perturb into the
    true uplink h_u per the reciprocity error, invert power on h_d, then
    score the realized Bob/Eve SNR pair through the rate interval. With
    zero reciprocity error every transmitted trial delivers exactly
    q_target to Bob.
    """
    source = SubstreamSource(cfg.seed.master_seed)
    base = cfg.seed.stream_id
    records: list[SimRecord] = []
    suspended = 0
    skipped = 0
    feasible = 0
    sum_delta_r = 0.0
    sum_gamma_e = 0.0

    for t in range(cfg.trials):
        stream = base + STREAMS_PER_TRIAL * t
        h_d = sample_rayleigh(cfg.n_antennas_tx, source.stream(stream + _ROLE_CHANNEL))
        try:
            w = cipc_beamformer(h_d)
            p_t = cipc_power(h_d, cfg)
        except ValueError:
            skipped += 1
            continue
        if p_t is None:
            suspended += 1
            records.append(SimRecord(t, None, None, None, None, None))
            continue
        h_u = apply_reciprocity_error(
            h_d, cfg.reciprocity, source.stream(stream + _ROLE_RECIPROCITY)
        )
        rx_bob = p_t * abs(np.dot(h_u, w)) ** 2
        gamma_b = rx_bob / cfg.noise_power_bob
        g = sample_rayleigh(cfg.n_antennas_tx, source.stream(stream + _ROLE_EVE))
        gamma_e = p_t * abs(np.vdot(g, w)) ** 2 / cfg.noise_power_eve
        assessment = rate_interval(
            cfg.blocklength, gamma_b, gamma_e, cfg.constraints, cfg.approx
        )
        records.append(SimRecord(t, p_t, rx_bob, gamma_b, gamma_e, assessment))
        feasible += assessment.feasible
        sum_delta_r += assessment.delta_r
        sum_gamma_e += gamma_e

    active = len(records) - suspended
    counted = cfg.trials - skipped
    summary = CipcSummary(
        trials=cfg.trials,
        suspension_prob=suspended / counted if counted else math.nan,
        feasibility_prob=feasible / active if active else 0.0,
        mean_delta_r=sum_delta_r / active if active else math.nan,
        mean_gamma_e=sum_gamma_e / active if active else math.nan,
        skipped_trials=skipped,
    )
    return CipcResult(records=records, summary=summary)


def default_q_objective(summary: CipcSummary) -> float:
    """Probability of a transmitted and feasible trial."""
    return summary.feasibility_prob * (1.0 - summary.suspension_prob)


@dataclass(frozen=True, slots=True)
class QOptimum:
    q_star: float
    #: (q, objective) pairs in the order the grid was given.
    objective_curve: list[tuple[float, float]]


def optimize_q(
    cfg: CipcConfig,
    q_grid,
    objective: Callable[[CipcSummary], float] = default_q_objective,
) -> QOptimum:
    """Grid search of the received-power constant under common random numbers.

    Every grid point reruns the simulation from the same seed, so the
    channel realizations are shared and the objective differences come
    from Q alone. Ties go to the smaller Q.
    """
    q_values = [float(q) for q in q_grid]
    if not q_values:
        raise ValueError("q_grid must be nonempty")
    curve: list[tuple[float, float]] = []
    for q in q_values:
        result = run_cipc(replace(cfg, q_target=q))
        curve.append((q, objective(result.summary)))
    q_star = max(curve, key=lambda pair: (pair[1], -pair[0]))[0]
    return QOptimum(q_star=q_star, objective_curve=curve)
