"""Location-based beamforming with null-space artificial noise, Monte Carlo.

Instead of estimated channel state, the transmitter points a beam along
the steering vector of the receiver's (possibly misestimated) bearing and
spends a fraction phi of its power on artificial noise spread evenly over
the beam's null space. A receiver whose channel is pure LOS at exactly
the steered angle sees no artificial noise at all; scatter (finite Rician
K) or bearing error leaks some of it. Per trial the realized Bob/Eve
SINRs are scored through the rate-interval assessment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.linalg import null_space

from . import fb_coding
from .channels import RicianSpec, sample_rician, steering_vector
from .fb_coding import ApproximationConfig, DEFAULT_APPROXIMATION, _check_blocklength
from .numerics import RngSeed, SubstreamSource, _as_count
from .secrecy import ConstraintPair, SecrecyAssessment, r_inf, rate_interval

_ROLE_BEARING = 0
_ROLE_BOB = 1
_ROLE_EVE = 2
STREAMS_PER_TRIAL = 4

# Steering angles live in the open interval (-pi/2, pi/2); bearing-error
# draws are clamped just inside it.
_ANGLE_LIMIT = math.pi / 2 * (1.0 - 1e-12)


@dataclass(frozen=True, slots=True)
class LobConfig:
    """Inputs of one location-based-beamforming Monte Carlo run.

    an_fraction is the share of total_power spent on artificial noise;
    the remainder carries information. Angles are radians.
    """

    n_antennas: int
    theta_bob: float
    theta_eve: float
    location_error_std: float
    k_factor_bob: float
    k_factor_eve: float
    total_power: float
    an_fraction: float
    noise_power_bob: float
    noise_power_eve: float
    blocklength: int
    constraints: ConstraintPair
    trials: int
    seed: RngSeed
    approx: ApproximationConfig = DEFAULT_APPROXIMATION

    def __post_init__(self):
        if _as_count(self.n_antennas, "n_antennas") < 2:
            raise ValueError(f"n_antennas must be >= 2, got {self.n_antennas}")
        for name in ("theta_bob", "theta_eve"):
            if not abs(float(getattr(self, name))) < math.pi / 2:
                raise ValueError(f"{name} must lie in (-pi/2, pi/2)")
        if math.isnan(self.location_error_std) or self.location_error_std < 0.0:
            raise ValueError("location_error_std must be >= 0")
        for name in ("total_power", "noise_power_bob", "noise_power_eve"):
            v = float(getattr(self, name))
            if math.isnan(v) or v <= 0.0:
                raise ValueError(f"{name} must be positive, got {v!r}")
        if not 0.0 <= self.an_fraction <= 1.0:
            raise ValueError(f"an_fraction must lie in [0, 1], got {self.an_fraction!r}")
        _check_blocklength(self.blocklength)
        if _as_count(self.trials, "trials") < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


class SinrPair(NamedTuple):
    sinr_bob: float
    sinr_eve: float


@dataclass(frozen=True, slots=True)
class LobRecord:
    trial_id: int
    theta_hat: float
    sinr_bob: float
    sinr_eve: float
    assessment: SecrecyAssessment


@dataclass(frozen=True, slots=True)
class LobSummary:
    trials: int
    mean_sinr_bob: float
    mean_sinr_eve: float
    feasibility_prob: float
    mean_delta_r: float


@dataclass(frozen=True, slots=True)
class LobResult:
    records: list[LobRecord]
    summary: LobSummary


def lob_beamformer(theta_hat: float, n_antennas: int) -> np.ndarray:
    """Unit-norm beam along the steering vector of the estimated bearing."""
    a = steering_vector(theta_hat, n_antennas)
    return a / math.sqrt(n_antennas)


def an_basis(theta_hat: float, n_antennas: int) -> np.ndarray:
    """Orthonormal N x (N-1) basis of the steered beam's null space.

    Columns satisfy a(theta_hat)^H V = 0 and V^H V = I, so artificial
    noise injected through V never reaches a pure-LOS receiver at exactly
    theta_hat.
    """
    if _as_count(n_antennas, "n_antennas") < 2:
        raise ValueError("a 1-antenna array has no null space to hide noise in")
    a = steering_vector(theta_hat, n_antennas)
    basis = null_space(a.conj()[np.newaxis, :])
    return basis


def _sinr_from_vectors(
    h_bob: np.ndarray,
    h_eve: np.ndarray,
    w: np.ndarray,
    v_basis: np.ndarray | None,
    cfg: LobConfig,
) -> SinrPair:
    info_power = (1.0 - cfg.an_fraction) * cfg.total_power
    an_power = cfg.an_fraction * cfg.total_power

    def one(h: np.ndarray, noise: float) -> float:
        signal = info_power * abs(np.vdot(h, w)) ** 2
        an = 0.0
        if an_power > 0.0 and v_basis is not None:
            an = an_power / (cfg.n_antennas - 1) * float(
                np.linalg.norm(h.conj() @ v_basis) ** 2
            )
        return signal / (an + noise)

    return SinrPair(one(h_bob, cfg.noise_power_bob), one(h_eve, cfg.noise_power_eve))


def sinr_pair(
    h_bob: np.ndarray,
    h_eve: np.ndarray,
    cfg: LobConfig,
    theta_hat: float | None = None,
) -> SinrPair:
    """SINRs seen by Bob and Eve for given channel realizations.

    Signal power at receiver x is (1-phi) P |h_x^H w|^2; artificial noise
    adds (phi P / (N-1)) ||h_x^H V||^2 on top of thermal noise. theta_hat
    defaults to Bob's true bearing (perfect location knowledge).
    """
    theta = cfg.theta_bob if theta_hat is None else float(theta_hat)
    w = lob_beamformer(theta, cfg.n_antennas)
    v_basis = an_basis(theta, cfg.n_antennas) if cfg.an_fraction > 0.0 else None
    return _sinr_from_vectors(np.asarray(h_bob), np.asarray(h_eve), w, v_basis, cfg)


def _assess(n: int, sinr_bob: float, sinr_eve: float, constraints, approx) -> SecrecyAssessment:
    # Zero SINR falls outside the positive-SNR domain of the rate formulas
    # and is handled as the physical limit: a receiver with no signal power
    # decodes nothing. At Eve that makes every rate secure (floor zero); at
    # Bob it makes the reliability target unreachable, reported as an
    # infeasible trial with a zero, clamped rate ceiling.
    if sinr_bob > 0.0 and sinr_eve > 0.0:
        return rate_interval(n, sinr_bob, sinr_eve, constraints, approx)
    if sinr_bob > 0.0:
        ceiling = fb_coding.max_rate(n, constraints.beta_b, sinr_bob, approx)
        return SecrecyAssessment(
            r_sup=ceiling.rate,
            r_inf=0.0,
            delta_r=ceiling.rate,
            feasible=True,
            r_sup_clamped=ceiling.clamped,
        )
    floor = r_inf(n, constraints.beta_e, sinr_eve, approx) if sinr_eve > 0.0 else 0.0
    return SecrecyAssessment(
        r_sup=0.0,
        r_inf=floor,
        delta_r=-floor,
        feasible=False,
        r_sup_clamped=True,
    )


def run_lob(cfg: LobConfig) -> LobResult:
    """Monte Carlo over fading and bearing error; records plus a summary.

    Per trial: perturb Bob's bearing by a Gaussian error, steer the beam
    and null space there, draw both Rician channels at their true angles,
    and assess the realized SINR pair. Deterministic under cfg.seed with
    one keyed substream per trial.
    """
    source = SubstreamSource(cfg.seed.master_seed)
    base = cfg.seed.stream_id
    spec_bob = RicianSpec(cfg.k_factor_bob, cfg.theta_bob, cfg.n_antennas)
    spec_eve = RicianSpec(cfg.k_factor_eve, cfg.theta_eve, cfg.n_antennas)
    needs_an = cfg.an_fraction > 0.0

    fixed_bearing = cfg.location_error_std == 0.0
    if fixed_bearing:
        w = lob_beamformer(cfg.theta_bob, cfg.n_antennas)
        v_basis = an_basis(cfg.theta_bob, cfg.n_antennas) if needs_an else None

    records: list[LobRecord] = []
    feasible = 0
    sum_sinr_bob = 0.0
    sum_sinr_eve = 0.0
    sum_delta_r = 0.0

    for t in range(cfg.trials):
        stream = base + STREAMS_PER_TRIAL * t
        if fixed_bearing:
            theta_hat = cfg.theta_bob
        else:
            err = source.stream(stream + _ROLE_BEARING).standard_normal()
            theta_hat = cfg.theta_bob + cfg.location_error_std * float(err)
            theta_hat = min(max(theta_hat, -_ANGLE_LIMIT), _ANGLE_LIMIT)
            w = lob_beamformer(theta_hat, cfg.n_antennas)
            v_basis = an_basis(theta_hat, cfg.n_antennas) if needs_an else None
        h_bob = sample_rician(spec_bob, source.stream(stream + _ROLE_BOB))
        h_eve = sample_rician(spec_eve, source.stream(stream + _ROLE_EVE))
        sinr_bob, sinr_eve = _sinr_from_vectors(h_bob, h_eve, w, v_basis, cfg)
        assessment = _assess(
            cfg.blocklength, sinr_bob, sinr_eve, cfg.constraints, cfg.approx
        )
        records.append(LobRecord(t, theta_hat, sinr_bob, sinr_eve, assessment))
        feasible += assessment.feasible
        sum_sinr_bob += sinr_bob
        sum_sinr_eve += sinr_eve
        sum_delta_r += assessment.delta_r

    n = cfg.trials
    summary = LobSummary(
        trials=n,
        mean_sinr_bob=sum_sinr_bob / n,
        mean_sinr_eve=sum_sinr_eve / n,
        feasibility_prob=feasible / n,
        mean_delta_r=sum_delta_r / n,
    )
    return LobResult(records=records, summary=summary)


@dataclass(frozen=True, slots=True)
class AnOptimum:
    phi_star: float
    #: (phi, feasibility probability) pairs in grid order.
    objective_curve: list[tuple[float, float]]


def optimize_an_fraction(cfg: LobConfig, phi_grid) -> AnOptimum:
    """Grid search of the artificial-noise share under common random numbers.

    Maximizes the feasibility probability; every grid point reruns the
    simulation from the same seed. Ties go to the smaller phi.
    """
    phis = [float(phi) for phi in phi_grid]
    if not phis:
        raise ValueError("phi_grid must be nonempty")
    for phi in phis:
        if not 0.0 <= phi < 1.0:
            raise ValueError(f"phi grid values must lie in [0, 1), got {phi!r}")
    curve: list[tuple[float, float]] = []
    for phi in phis:
        result = run_lob(replace(cfg, an_fraction=phi))
        curve.append((phi, result.summary.feasibility_prob))
    phi_star = max(curve, key=lambda pair: (pair[1], -pair[0]))[0]
    return AnOptimum(phi_star=phi_star, objective_curve=curve)
