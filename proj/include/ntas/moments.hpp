#pragma once

#include <vector>

#include "ntas/schemes.hpp"

namespace ntas {

/// Empirical weights on the TAS/MRC (b1) and TAS/SC (b2) moment sums.
struct WeightingCoefficients {
  double b1;
  double b2;

  void validate() const;
};

/// Tabulated defaults for n in {2, ..., 6}; CoefficientLookupError otherwise.
WeightingCoefficients default_weighting(CascadeOrder n);

/// One summand of the alternating moment series.
struct MomentTerm {
  int k;
  double a_k;           ///< k(shape - 1)
  std::uint64_t binom;  ///< C(K, k)
  int sign;             ///< (-1)^{k+1}, after folding in the bracket's sign
  double log_magnitude;
  double value;
};

std::vector<MomentTerm> moment_terms(Scheme s, int l, const ChannelConfig& cfg,
                                     const WeightingCoefficients& w);

/// l-th moment of the TAS/MRC post-processing SNR from the b1-weighted
/// alternating sum. Throws NonPhysicalError when the sum is nonpositive.
double moment_tas_mrc(int l, const ChannelConfig& cfg, const WeightingCoefficients& w);
/// Same template with (m, N, β_SC, b2).
double moment_tas_sc(int l, const ChannelConfig& cfg, const WeightingCoefficients& w);
double moment(Scheme s, int l, const ChannelConfig& cfg, const WeightingCoefficients& w);

/// E[γ²]/E[γ]² - 1 from the closed-form moments.
double amount_of_fading(Scheme s, const ChannelConfig& cfg, const WeightingCoefficients& w);

/// TAS/MRC AF from the incomplete-gamma bound; depends on (n, n_T, n_R)
/// only. Valid for n <= 8 and N <= 16.
double af_bound_tas_mrc(const ChannelConfig& cfg);

/// Γ(a)Γ(a+2n)/Γ²(a+n) - 1 with a = m n_R.
double af_simo(CascadeOrder n, int n_r);
double af_siso(CascadeOrder n);

/// l·∫ γ^{l-1} (1 - F(γ)) dγ over the post-processing CDF by adaptive
/// Gauss–Kronrod quadrature (relative tolerance 1e-8).
double moment_oracle(int l, Scheme s, const ChannelConfig& cfg);
/// AF of the post-processing CDF from moment_oracle.
double af_oracle(Scheme s, const ChannelConfig& cfg);

}  // namespace ntas
