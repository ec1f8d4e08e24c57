#include "ntas/moments.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ntas/errors.hpp"
#include "ntas/specfun.hpp"

namespace ntas {

namespace {

void check_order(int l) {
  if (l < 1) throw DomainError("moment order must be >= 1, got " + std::to_string(l));
}

double closed_form_moment(Scheme s, int l, const ChannelConfig& cfg, const WeightingCoefficients& w) {
  double sum = 0.0;
  for (const MomentTerm& t : moment_terms(s, l, cfg, w)) sum += t.value;
  if (!(sum > 0.0)) {
    throw NonPhysicalError(std::string("moment series for ") + std::string(to_string(s)) +
                           " is nonpositive (l=" + std::to_string(l) +
                           ", n=" + std::to_string(cfg.n.value()) + ", n_t=" + std::to_string(cfg.n_t) +
                           ", n_r=" + std::to_string(cfg.n_r) + ", sum=" + std::to_string(sum) + ")");
  }
  return sum;
}

}  // namespace

void WeightingCoefficients::validate() const {
  if (!(b1 > 1.0) || !(b2 > 1.0)) throw DomainError("weighting coefficients must exceed 1");
}

WeightingCoefficients default_weighting(CascadeOrder n) {
  switch (n.value()) {
    case 2: return {2.3, 1.5};
    case 3: return {2.1, 1.5};
    case 4: return {2.0, 1.5};
    case 5: return {1.57, 1.5};
    case 6: return {1.44, 1.68};
    default:
      throw CoefficientLookupError("no default weighting coefficients b1/b2 for n=" +
                                   std::to_string(n.value()) +
                                   " (tabulated for n in 2..6); pass --b1 and --b2 explicitly");
  }
}

std::vector<MomentTerm> moment_terms(Scheme s, int l, const ChannelConfig& cfg,
                                     const WeightingCoefficients& w) {
  check_order(l);
  w.validate();
  const auto os = order_statistic_shape(s, cfg);
  const double b = s == Scheme::TasMrc ? w.b1 : w.b2;
  const double nl = cfg.n.as_double() * l;
  const double shared = std::log(b) + std::log(nl) - specfun::ln_gamma(os.shape) - nl * std::log(os.beta);

  std::vector<MomentTerm> terms;
  terms.reserve(static_cast<std::size_t>(os.exponent));
  for (int k = 1; k <= os.exponent; ++k) {
    MomentTerm t{};
    t.k = k;
    t.a_k = k * (os.shape - 1.0);
    t.binom = specfun::binomial(static_cast<unsigned>(os.exponent), static_cast<unsigned>(k));
    // (-1)^k times the bracket a_kΓ(a_k+nl) - Γ(a_k+nl+1) = -nl Γ(a_k+nl).
    t.sign = (k % 2 == 1) ? 1 : -1;
    t.log_magnitude = std::log(static_cast<double>(t.binom)) + shared +
                      specfun::ln_gamma(t.a_k + nl) - (t.a_k + nl) * std::log(static_cast<double>(k));
    t.value = t.sign * std::exp(t.log_magnitude);
    terms.push_back(t);
  }
  return terms;
}

double moment_tas_mrc(int l, const ChannelConfig& cfg, const WeightingCoefficients& w) {
  return closed_form_moment(Scheme::TasMrc, l, cfg, w);
}

double moment_tas_sc(int l, const ChannelConfig& cfg, const WeightingCoefficients& w) {
  return closed_form_moment(Scheme::TasSc, l, cfg, w);
}

double moment(Scheme s, int l, const ChannelConfig& cfg, const WeightingCoefficients& w) {
  return closed_form_moment(s, l, cfg, w);
}

double amount_of_fading(Scheme s, const ChannelConfig& cfg, const WeightingCoefficients& w) {
  const double m1 = moment(s, 1, cfg, w);
  const double m2 = moment(s, 2, cfg, w);
  return m2 / (m1 * m1) - 1.0;
}

double af_bound_tas_mrc(const ChannelConfig& cfg) {
  cfg.validate();
  const int n = cfg.n.value();
  const int big_n = cfg.total_antennas();
  if (n > 8 || big_n > 16) {
    throw DomainError("af_bound_tas_mrc: outside validated range n <= 8, N <= 16 (n=" +
                      std::to_string(n) + ", N=" + std::to_string(big_n) + ")");
  }
  const FadingParams fp = fading_params(cfg.n);
  const double nd = cfg.n.as_double();
  const double a = fp.m * cfg.n_r;
  const double mn = fp.m * big_n;
  const double log_ratio = mn * std::log1p(mn) + cfg.n_t * (std::log(a) + specfun::ln_gamma(a)) +
                           specfun::ln_gamma(mn + 2.0 * nd) - mn * std::log(a + 1.0) - std::log(mn) -
                           2.0 * specfun::ln_gamma(mn + nd);
  if (!std::isfinite(log_ratio)) throw DomainError("af_bound_tas_mrc: overflow");
  return std::expm1(log_ratio);
}

double af_simo(CascadeOrder n, int n_r) {
  if (n_r < 1) throw DomainError("n_r must be >= 1");
  const double a = fading_params(n).m * n_r;
  const double nd = n.as_double();
  return std::expm1(specfun::ln_gamma(a) + specfun::ln_gamma(a + 2.0 * nd) -
                    2.0 * specfun::ln_gamma(a + nd));
}

double af_siso(CascadeOrder n) { return af_simo(n, 1); }

double moment_oracle(int l, Scheme s, const ChannelConfig& cfg) {
  check_order(l);
  using boost::math::quadrature::gauss_kronrod;
  const auto os = order_statistic_shape(s, cfg);
  const double nl = cfg.n.as_double() * l;
  // With γ = (t/β)^n: E[γ^l] = l n β^{-nl} ∫ t^{nl-1} (1 - P(shape, t)^K) dt.
  auto survival = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double lp = specfun::log_reg_lower_gamma(os.shape, t);
    return std::pow(t, nl - 1.0) * -std::expm1(os.exponent * lp);
  };
  // Split at the bulk of the integrand so the infinite-range map only sees the tail.
  const double split = os.shape + nl + 10.0 * std::sqrt(os.shape + nl);
  constexpr double kTol = 1e-10;
  double err_lo = 0.0;
  double err_hi = 0.0;
  const double lo = gauss_kronrod<double, 15>::integrate(survival, 0.0, split, 20, kTol, &err_lo);
  const double hi = gauss_kronrod<double, 15>::integrate(
      survival, split, std::numeric_limits<double>::infinity(), 20, kTol, &err_hi);
  const double integral = lo + hi;
  if (!(integral > 0.0) || (err_lo + err_hi) > 1e-8 * integral) {
    throw ConvergenceError("moment_oracle: quadrature did not reach relative tolerance 1e-8");
  }
  return l * cfg.n.as_double() * std::exp(-nl * std::log(os.beta)) * integral;
}

double af_oracle(Scheme s, const ChannelConfig& cfg) {
  const double m1 = moment_oracle(1, s, cfg);
  const double m2 = moment_oracle(2, s, cfg);
  return m2 / (m1 * m1) - 1.0;
}

}  // namespace ntas
