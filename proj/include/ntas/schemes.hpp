#pragma once

#include <optional>
#include <string_view>

#include "ntas/fading.hpp"

namespace ntas {

enum class Scheme { TasMrc, TasSc };

std::string_view to_string(Scheme s);
/// Accepts "tas-mrc"/"tas_mrc"/"TAS_MRC" and the SC equivalents.
Scheme parse_scheme(std::string_view text);

/// Calibration factor applied to β_MRC when none is configured.
constexpr double kDefaultMrcOmega = 1.176;

/// One link scenario. The calibration factor multiplies the β scale of the
/// post-processing CDF; when unset it resolves to 1.176 for TAS/MRC and 1.0
/// for TAS/SC.
struct ChannelConfig {
  CascadeOrder n{1};
  int n_t = 1;
  int n_r = 1;
  double mean_snr = 1.0;
  std::optional<double> calibration_omega;

  int total_antennas() const { return n_t * n_r; }
  double omega_for(Scheme s) const;
  ChannelConfig with_mean_snr(double snr) const;
  ChannelConfig with_omega(double w) const;
  void validate() const;
};

/// Outage threshold given either directly or as a target rate (γ_o = 2^R - 1).
class OutageQuery {
 public:
  static OutageQuery threshold(double gamma_o);
  static OutageQuery rate(double bits_per_hz);

  double gamma_o() const { return gamma_o_; }
  std::optional<double> rate() const { return rate_; }

 private:
  OutageQuery(double g, std::optional<double> r) : gamma_o_(g), rate_(r) {}
  double gamma_o_;
  std::optional<double> rate_;
};

/// Leading high-SNR term coefficient·z^diversity.
struct AsymptoticForm {
  double coefficient;
  double log_coefficient;
  double diversity;
  double z;  ///< γ_o/(n_R γ̄) for TAS/MRC, γ_o/γ̄ for TAS/SC
};

struct AsymptoticOutage {
  double probability;
  AsymptoticForm form;
};

struct CodingGain {
  double printed;    ///< closed-form expression as printed
  double extracted;  ///< recovered from the asymptotic coefficient
};

/// Shape and exponent (a, n_T) for TAS/MRC, (m, N) for TAS/SC.
struct OrderStatisticShape {
  double shape;
  int exponent;
  double beta;  ///< includes the calibration factor
};

OrderStatisticShape order_statistic_shape(Scheme s, const ChannelConfig& cfg);

/// CDF of the post-processing SNR, P(shape, ωβγ^{1/n})^{exponent}.
double postproc_cdf(Scheme s, double gamma, const ChannelConfig& cfg);
/// Natural log of postproc_cdf; finite deep into the outage tail.
double log_postproc_cdf(Scheme s, double gamma, const ChannelConfig& cfg);

double outage(Scheme s, const OutageQuery& q, const ChannelConfig& cfg);

AsymptoticOutage outage_asymptotic(Scheme s, const OutageQuery& q, const ChannelConfig& cfg);

/// m N / n, shared by both schemes.
double diversity_order(Scheme s, const ChannelConfig& cfg);

CodingGain coding_gain(Scheme s, const ChannelConfig& cfg);

/// Mean branch SNR γ̄ at which the outage equals target_outage. cfg.mean_snr
/// is ignored. Throws ConvergenceError when no root exists in [-100, 200] dB.
double required_snr(Scheme s, double target_outage, const OutageQuery& q, const ChannelConfig& cfg);

double db_to_linear(double db);
double linear_to_db(double lin);

}  // namespace ntas
