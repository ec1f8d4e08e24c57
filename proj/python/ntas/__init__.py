"""Outage and amount-of-fading analysis of TAS/MRC and TAS/SC over cascaded Rayleigh channels."""

from ._core import (  # noqa: F401
    ChannelConfig,
    CoefficientLookupError,
    ConvergenceError,
    DomainError,
    EmpiricalEstimate,
    NonPhysicalError,
    Scheme,
    af_bound_tas_mrc,
    af_oracle,
    af_simo,
    af_siso,
    amount_of_fading,
    binomial,
    coding_gain,
    diversity_order,
    empirical_cdf,
    estimate_moments_af,
    estimate_outage,
    fading_params,
    ln_gamma,
    moment,
    moment_oracle,
    outage,
    outage_asymptotic,
    postproc_cdf,
    reg_lower_gamma,
    reg_upper_gamma,
    required_snr,
)

__version__ = "0.1.0"
