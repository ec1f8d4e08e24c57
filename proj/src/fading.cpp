#include "ntas/fading.hpp"

#include <cmath>
#include <string>

#include "ntas/errors.hpp"
#include "ntas/specfun.hpp"

namespace ntas {

namespace {

// β^shape/(nΓ(shape)) t^{shape/n - 1} e^{-β t^{1/n}}, assembled in log space.
Density stretched_gamma_density(double t, double shape, double beta, CascadeOrder n) {
  const double nd = n.as_double();
  const double exponent = shape / nd - 1.0;
  if (t == 0.0) {
    if (exponent > 0.0) return Density::finite(0.0);
    if (exponent == 0.0) return Density::finite(std::pow(beta, shape) / (nd * std::tgamma(shape)));
    return Density::divergent_at_origin();
  }
  if (std::isinf(t)) return Density::finite(0.0);
  const double log_f = shape * std::log(beta) - std::log(nd) - specfun::ln_gamma(shape) +
                       exponent * std::log(t) - beta * std::pow(t, 1.0 / nd);
  return Density::finite(std::exp(log_f));
}

}  // namespace

CascadeOrder::CascadeOrder(int n) : n_(n) {
  if (n < 1) throw DomainError("cascade order must be >= 1, got " + std::to_string(n));
}

FadingParams fading_params(CascadeOrder n) {
  const double nd = n.as_double();
  const double m = 0.6102 * nd + 0.4263;
  const double omega = 0.8808 * std::pow(nd, -0.9661) + 1.12;
  return {n, m, omega, m / nd};
}

BranchSnrParams BranchSnrParams::make(CascadeOrder n, int n_r, double mean_snr) {
  if (n_r < 1) throw DomainError("n_r must be >= 1, got " + std::to_string(n_r));
  if (!(mean_snr > 0.0) || !std::isfinite(mean_snr)) {
    throw DomainError("mean SNR must be finite and > 0");
  }
  const FadingParams fp = fading_params(n);
  const double nd = n.as_double();
  const double a = fp.m * n_r;
  BranchSnrParams p{};
  p.a = a;
  p.alpha_mrc = a / nd;
  p.beta_mrc = (2.0 * a / fp.omega) * std::pow(n_r * mean_snr, -1.0 / nd);
  p.beta_sc = (2.0 * fp.m / fp.omega) * std::pow(mean_snr, -1.0 / nd);
  p.mean_snr = mean_snr;
  return p;
}

double Density::value() const {
  if (!value_) throw DomainError("density diverges at the origin");
  return *value_;
}

Density amplitude_pdf(double x, CascadeOrder n, double x_bar) {
  if (!(x_bar > 0.0)) throw DomainError("amplitude_pdf: x_bar must be > 0");
  if (!(x >= 0.0)) throw DomainError("amplitude_pdf: x must be >= 0");
  const FadingParams fp = fading_params(n);
  const double beta = (2.0 * fp.m / fp.omega) * std::pow(x_bar, -1.0 / n.as_double());
  return stretched_gamma_density(x, fp.m, beta, n);
}

Density mrc_snr_pdf(double gamma, const BranchSnrParams& p, CascadeOrder n) {
  if (!(gamma >= 0.0)) throw DomainError("mrc_snr_pdf: gamma must be >= 0");
  return stretched_gamma_density(gamma, p.a, p.beta_mrc, n);
}

double mrc_snr_cdf(double gamma, const BranchSnrParams& p, CascadeOrder n) {
  if (!(gamma >= 0.0)) throw DomainError("mrc_snr_cdf: gamma must be >= 0");
  return specfun::reg_lower_gamma(p.a, p.beta_mrc * std::pow(gamma, 1.0 / n.as_double()));
}

}  // namespace ntas
