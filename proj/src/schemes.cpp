#include "ntas/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "ntas/errors.hpp"
#include "ntas/specfun.hpp"

namespace ntas {

std::string_view to_string(Scheme s) { return s == Scheme::TasMrc ? "tas-mrc" : "tas-sc"; }

Scheme parse_scheme(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  if (t == "tas-mrc" || t == "mrc") return Scheme::TasMrc;
  if (t == "tas-sc" || t == "sc") return Scheme::TasSc;
  throw DomainError("unknown scheme '" + std::string(text) + "'");
}

double ChannelConfig::omega_for(Scheme s) const {
  if (calibration_omega) return *calibration_omega;
  return s == Scheme::TasMrc ? kDefaultMrcOmega : 1.0;
}

ChannelConfig ChannelConfig::with_mean_snr(double snr) const {
  ChannelConfig c = *this;
  c.mean_snr = snr;
  return c;
}

ChannelConfig ChannelConfig::with_omega(double w) const {
  ChannelConfig c = *this;
  c.calibration_omega = w;
  return c;
}

void ChannelConfig::validate() const {
  if (n_t < 1) throw DomainError("n_t must be >= 1, got " + std::to_string(n_t));
  if (n_r < 1) throw DomainError("n_r must be >= 1, got " + std::to_string(n_r));
  if (!(mean_snr > 0.0) || !std::isfinite(mean_snr)) {
    throw DomainError("mean SNR must be finite and > 0");
  }
  if (calibration_omega && !(*calibration_omega > 0.0)) {
    throw DomainError("calibration omega must be > 0");
  }
}

OutageQuery OutageQuery::threshold(double gamma_o) {
  if (!(gamma_o > 0.0)) throw DomainError("outage threshold must be > 0");
  return OutageQuery(gamma_o, std::nullopt);
}

OutageQuery OutageQuery::rate(double bits_per_hz) {
  if (!(bits_per_hz > 0.0)) throw DomainError("target rate must be > 0");
  return OutageQuery(std::exp2(bits_per_hz) - 1.0, bits_per_hz);
}

OrderStatisticShape order_statistic_shape(Scheme s, const ChannelConfig& cfg) {
  cfg.validate();
  const auto p = BranchSnrParams::make(cfg.n, cfg.n_r, cfg.mean_snr);
  const double w = cfg.omega_for(s);
  if (s == Scheme::TasMrc) return {p.a, cfg.n_t, w * p.beta_mrc};
  return {fading_params(cfg.n).m, cfg.total_antennas(), w * p.beta_sc};
}

double log_postproc_cdf(Scheme s, double gamma, const ChannelConfig& cfg) {
  if (!(gamma >= 0.0)) throw DomainError("post-processing SNR must be >= 0");
  const auto os = order_statistic_shape(s, cfg);
  const double x = os.beta * std::pow(gamma, 1.0 / cfg.n.as_double());
  const double lp = specfun::log_reg_lower_gamma(os.shape, x);
  return std::isinf(lp) ? lp : os.exponent * lp;
}

double postproc_cdf(Scheme s, double gamma, const ChannelConfig& cfg) {
  return std::exp(log_postproc_cdf(s, gamma, cfg));
}

double outage(Scheme s, const OutageQuery& q, const ChannelConfig& cfg) {
  return postproc_cdf(s, q.gamma_o(), cfg);
}

namespace {

// ln of the z^d coefficient: exponent·(shape ln(ω·2·shape/Ω) - ln(shape Γ(shape))).
double log_asymptotic_coefficient(Scheme s, const ChannelConfig& cfg) {
  const FadingParams fp = fading_params(cfg.n);
  const double w = cfg.omega_for(s);
  const double shape = s == Scheme::TasMrc ? fp.m * cfg.n_r : fp.m;
  const int exponent = s == Scheme::TasMrc ? cfg.n_t : cfg.total_antennas();
  const double per_branch = shape * std::log(w * 2.0 * shape / fp.omega) - std::log(shape) -
                            specfun::ln_gamma(shape);
  return exponent * per_branch;
}

}  // namespace

AsymptoticOutage outage_asymptotic(Scheme s, const OutageQuery& q, const ChannelConfig& cfg) {
  cfg.validate();
  AsymptoticForm form{};
  form.log_coefficient = log_asymptotic_coefficient(s, cfg);
  form.coefficient = std::exp(form.log_coefficient);
  form.diversity = diversity_order(s, cfg);
  form.z = s == Scheme::TasMrc ? q.gamma_o() / (cfg.n_r * cfg.mean_snr) : q.gamma_o() / cfg.mean_snr;
  const double p = std::exp(form.log_coefficient + form.diversity * std::log(form.z));
  return {p, form};
}

double diversity_order(Scheme /*s*/, const ChannelConfig& cfg) {
  return fading_params(cfg.n).m * cfg.total_antennas() / cfg.n.as_double();
}

CodingGain coding_gain(Scheme s, const ChannelConfig& cfg) {
  cfg.validate();
  const FadingParams fp = fading_params(cfg.n);
  const double nd = cfg.n.as_double();
  const double w = cfg.omega_for(s);
  const double d = diversity_order(s, cfg);
  const double extracted_core = std::exp(-log_asymptotic_coefficient(s, cfg) / d);
  CodingGain cg{};
  if (s == Scheme::TasMrc) {
    const double a = fp.m * cfg.n_r;
    const double num = std::exp((std::log(a) + specfun::ln_gamma(a)) / a);
    const double den = w * (2.0 * a / fp.omega) * std::pow(cfg.n_r, 1.0 / nd);
    cg.printed = std::pow(num / den, nd);
    cg.extracted = cfg.n_r * extracted_core;
  } else {
    const double m = fp.m;
    const double num = std::exp((std::log(m) + specfun::ln_gamma(m)) / m);
    const double den = w * 2.0 * m / fp.omega;
    cg.printed = std::pow(num / den, nd);
    cg.extracted = extracted_core;
  }
  return cg;
}

double required_snr(Scheme s, double target_outage, const OutageQuery& q, const ChannelConfig& cfg) {
  if (!(target_outage > 0.0 && target_outage < 1.0)) {
    throw DomainError("target outage must lie in (0, 1)");
  }
  constexpr double kMinDb = -100.0;
  constexpr double kMaxDb = 200.0;
  const double log_target = std::log(target_outage);
  // Outage is nonincreasing in γ̄, so the residual is too.
  auto residual = [&](double snr_db) {
    return log_postproc_cdf(s, q.gamma_o(), cfg.with_mean_snr(db_to_linear(snr_db))) - log_target;
  };
  double lo = -10.0;
  double hi = 40.0;
  while (residual(lo) < 0.0) {
    if (lo <= kMinDb) throw ConvergenceError("required_snr: no bracket above -100 dB");
    lo = std::max(lo - 10.0, kMinDb);
  }
  while (residual(hi) > 0.0) {
    if (hi >= kMaxDb) throw ConvergenceError("required_snr: no bracket below 200 dB");
    hi = std::min(hi + 10.0, kMaxDb);
  }
  // 1e-11 dB keeps the relative error on γ̄ below 1e-9 with margin.
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return db_to_linear(0.5 * (lo + hi));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace ntas
