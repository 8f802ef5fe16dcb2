"""Finite-blocklength physical-layer security toolkit.

Secrecy metrics for short-packet transmission (rate intervals, security
gaps, BER-based variants) and Monte Carlo evaluation of two transmission
schemes that need little or no channel state feedback: channel-inversion
power control and location-based beamforming with artificial noise.
"""

from .ber import (
    BerSecurityGap,
    BerThresholds,
    CodeSpec,
    be_cdf,
    ber_security_gap,
    block_error_prob,
    bsc_crossover,
    post_decoding_ber,
)
from .channels import (
    ReciprocityError,
    RicianSpec,
    apply_reciprocity_error,
    sample_rayleigh,
    sample_rician,
    steering_vector,
)
from .cipc import (
    CipcConfig,
    CipcResult,
    CipcSummary,
    QOptimum,
    SimRecord,
    cipc_beamformer,
    cipc_power,
    optimize_q,
    run_cipc,
)
from .fb_coding import (
    ApproximationConfig,
    FbPoint,
    RateBound,
    capacity,
    db_to_linear,
    dispersion,
    error_probability,
    linear_to_db,
    max_rate,
)
from .lob import (
    AnOptimum,
    LobConfig,
    LobRecord,
    LobResult,
    LobSummary,
    SinrPair,
    an_basis,
    lob_beamformer,
    optimize_an_fraction,
    run_lob,
    sinr_pair,
)
from .numerics import (
    RngSeed,
    UnsatisfiableError,
    binomial_cdf,
    q_func,
    q_func_inv,
    sample_standard_normal,
    sample_uniform,
)
from .secrecy import (
    ConstraintPair,
    SecrecyAssessment,
    SecurityGap,
    asymptotic_secrecy_capacity,
    min_blocklength,
    r_inf,
    r_sup,
    rate_interval,
    security_gap,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximationConfig",
    "AnOptimum",
    "BerSecurityGap",
    "BerThresholds",
    "CipcConfig",
    "CipcResult",
    "CipcSummary",
    "CodeSpec",
    "ConstraintPair",
    "FbPoint",
    "LobConfig",
    "LobRecord",
    "LobResult",
    "LobSummary",
    "QOptimum",
    "RateBound",
    "ReciprocityError",
    "RicianSpec",
    "RngSeed",
    "SecrecyAssessment",
    "SecurityGap",
    "SimRecord",
    "SinrPair",
    "UnsatisfiableError",
    "an_basis",
    "apply_reciprocity_error",
    "asymptotic_secrecy_capacity",
    "be_cdf",
    "ber_security_gap",
    "binomial_cdf",
    "block_error_prob",
    "bsc_crossover",
    "capacity",
    "cipc_beamformer",
    "cipc_power",
    "db_to_linear",
    "dispersion",
    "error_probability",
    "linear_to_db",
    "lob_beamformer",
    "max_rate",
    "min_blocklength",
    "optimize_an_fraction",
    "optimize_q",
    "post_decoding_ber",
    "q_func",
    "q_func_inv",
    "r_inf",
    "r_sup",
    "rate_interval",
    "run_cipc",
    "run_lob",
    "sample_rayleigh",
    "sample_rician",
    "sample_standard_normal",
    "sample_uniform",
    "security_gap",
    "sinr_pair",
    "steering_vector",
    "__version__",
]
