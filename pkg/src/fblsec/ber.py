"""BER-based secrecy metrics for codes known only by correction capability.

A code here is just (n_bits, t): block size and the number of bit errors
it is guaranteed to correct. Bit flips are modeled by BPSK hard decisions
over AWGN, i.e. a binary symmetric channel with crossover Q(sqrt(2*SNR)).
From t alone one gets the bit-error CDF, the block error probability, a
bounded-distance estimate of the post-decoding BER, and from those the
BER security gap between a near-zero BER ceiling at the legitimate
receiver and a near-0.5 BER floor at the eavesdropper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from .fb_coding import _check_snr, db_to_linear, linear_to_db
from .numerics import UnsatisfiableError, _as_count, binomial_cdf, q_func

#: Search bracket for BER-threshold root-finds, in dB (1e-6 .. 1e6 linear).
SNR_BRACKET_DB = (-60.0, 60.0)


@dataclass(frozen=True, slots=True)
class CodeSpec:
    """A block code abstracted to (block size in bits, correction capability)."""

    n_bits: int
    t: int

    def __post_init__(self):
        n = _as_count(self.n_bits, "n_bits")
        t = _as_count(self.t, "t")
        if n < 1:
            raise ValueError(f"n_bits must be >= 1, got {n}")
        if not 0 <= t <= n:
            raise ValueError(f"t must lie in [0, n_bits], got t={t}, n_bits={n}")


@dataclass(frozen=True, slots=True)
class BerThresholds:
    """Post-decoding BER ceiling at Bob and floor at Eve."""

    p_ber_max_b: float
    p_ber_min_e: float

    def __post_init__(self):
        if not 0.0 < self.p_ber_max_b < self.p_ber_min_e <= 0.5:
            raise ValueError(
                "thresholds must satisfy 0 < p_ber_max_b < p_ber_min_e <= 0.5, "
                f"got ({self.p_ber_max_b!r}, {self.p_ber_min_e!r})"
            )


@dataclass(frozen=True, slots=True)
class BerSecurityGap:
    """SNR thresholds from BER constraints and their ratio.

    ``bob_at_bracket_edge`` / ``eve_at_bracket_edge`` mark thresholds that
    were met everywhere on the corresponding side of the search bracket,
    so the returned SNR is the bracket boundary rather than a root.
    """

    snr_b_min: float
    snr_e_max: float
    gap_linear: float
    gap_db: float
    bob_at_bracket_edge: bool = False
    eve_at_bracket_edge: bool = False


def bsc_crossover(gamma: float) -> float:
    """Hard-decision bit flip probability Q(sqrt(2*gamma)) for BPSK over AWGN."""
    gamma = _check_snr(gamma)
    return q_func(math.sqrt(2.0 * gamma))


def _check_prob(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


def be_cdf(code: CodeSpec, p: float, k: int) -> float:
    """Bit-error CDF: probability of at most k flips in a block at flip rate p."""
    return binomial_cdf(k, code.n_bits, _check_prob(p))


def block_error_prob(code: CodeSpec, p: float) -> float:
    """Probability that more than t flips occur, i.e. decoding fails."""
    return 1.0 - be_cdf(code, p, code.t)


def post_decoding_ber(code: CodeSpec, p: float) -> float:
    """Average post-decoding bit error rate under bounded-distance decoding.

    When j > t flips occur the decoder fails and is charged at most t
    additional wrong bits:

        (1/n) * sum_{j=t+1..n} min(n, j + t) * P(X = j),  X ~ Binomial(n, p).

    Nondecreasing in p, equal to p exactly for an uncoded block (t = 0).
    """
    p = _check_prob(p)
    n, t = code.n_bits, code.t
    if p == 0.0 or t == n:
        return 0.0
    if t == 0:
        return p  # uncoded: the sum telescopes to E[X]/n
    if p == 1.0:
        return 1.0  # all n bits flip, decoding fails, min(n, n + t) = n
    j = np.arange(t + 1, n + 1)
    log_pmf = (
        gammaln(n + 1.0)
        - gammaln(j + 1.0)
        - gammaln(n - j + 1.0)
        + j * math.log(p)
        + (n - j) * math.log1p(-p)
    )
    weighted = np.minimum(n, j + t) * np.exp(log_pmf)
    return float(min(1.0, weighted.sum() / n))


def _solve_snr_for_ber(
    code: CodeSpec,
    target: float,
    want_at_most: bool,
    side: str,
) -> tuple[float, bool]:
    # post_decoding_ber(code, bsc_crossover(snr)) is nonincreasing in SNR.
    lo_db, hi_db = SNR_BRACKET_DB
    lo, hi = db_to_linear(lo_db), db_to_linear(hi_db)

    def ber_at(snr: float) -> float:
        return post_decoding_ber(code, bsc_crossover(snr))

    ber_lo, ber_hi = ber_at(lo), ber_at(hi)
    if want_at_most:
        # Smallest SNR with BER <= target (reliability side).
        if ber_lo <= target:
            return lo, True
        if ber_hi > target:
            raise UnsatisfiableError(
                f"{side}: post-decoding BER stays above {target} across the "
                f"whole SNR bracket [{lo_db}, {hi_db}] dB"
            )
    else:
        # Largest SNR with BER >= target (security side).
        if ber_hi >= target:
            return hi, True
        if ber_lo < target:
            # The BER ceiling is its zero-SNR limit (flip rate 1/2); the
            # 1e-12 slack absorbs the lgamma rounding of that sum.
            ceiling = post_decoding_ber(code, 0.5)
            if target <= ceiling + 1e-12:
                # Attained only in the zero-SNR limit, below the bracket.
                return lo, True
            raise UnsatisfiableError(
                f"{side}: post-decoding BER never reaches {target}; its "
                f"ceiling at zero SNR is {ceiling:.6g}"
            )

    root_db = brentq(
        lambda snr_db: ber_at(db_to_linear(snr_db)) - target, lo_db, hi_db, xtol=1e-12
    )
    return db_to_linear(root_db), False


def ber_security_gap(code: CodeSpec, thresholds: BerThresholds) -> BerSecurityGap:
    """Security gap SNR_b,min / SNR_e,max from post-decoding BER thresholds.

    Both thresholds are resolved by monotone root-finds of
    post_decoding_ber over SNR; a threshold met across an entire bracket
    side returns the bracket edge with the corresponding flag set.
    """
    snr_b_min, bob_edge = _solve_snr_for_ber(
        code, thresholds.p_ber_max_b, True, "reliability constraint (Bob)"
    )
    snr_e_max, eve_edge = _solve_snr_for_ber(
        code, thresholds.p_ber_min_e, False, "security constraint (Eve)"
    )
    gap = snr_b_min / snr_e_max
    return BerSecurityGap(
        snr_b_min=snr_b_min,
        snr_e_max=snr_e_max,
        gap_linear=gap,
        gap_db=linear_to_db(gap),
        bob_at_bracket_edge=bob_edge,
        eve_at_bracket_edge=eve_edge,
    )
