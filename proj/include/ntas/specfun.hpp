#pragma once

#include <cstdint>

namespace ntas::specfun {

/// Iteration controls for the incomplete gamma kernels.
struct Accuracy {
  double abs_tol = 1e-12;
  int max_iter = 500;

  void validate() const;
};

/// ln Γ(x) for finite x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
///
/// Power series for x < a + 1, modified-Lentz continued fraction otherwise;
/// the common prefactor x^a e^{-x} / Γ(a) is formed in log space so that
/// large shapes (Γ(a) > 1e15) never overflow.
double reg_lower_gamma(double a, double x, const Accuracy& acc = {});

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly on the branch where it is the primary quantity.
double reg_upper_gamma(double a, double x, const Accuracy& acc = {});

/// ln P(a, x); -inf when x == 0. Accurate deep in the lower tail where
/// P underflows long before its logarithm does.
double log_reg_lower_gamma(double a, double x, const Accuracy& acc = {});

/// Exact binomial coefficient for n <= 64.
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace ntas::specfun
