#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ntas/schemes.hpp"

namespace ntas::mc {

/// Trials per canonical reduction block. Floating-point accumulators are
/// summed within a block in trial order and blocks are merged in index
/// order, which makes every estimate independent of scheduling.
inline constexpr std::uint64_t kReductionBlock = 4096;

struct SimSettings {
  std::uint64_t trials = 1'000'000;
  std::uint64_t master_seed = 0x5eed'2024'0000'0001ULL;
  /// Scheduling granularity (rounded up to a multiple of kReductionBlock).
  std::uint64_t partition_width = 1ULL << 16;
  /// Worker threads; 0 selects the hardware concurrency.
  unsigned workers = 1;

  void validate() const;
};

struct EmpiricalEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  /// Number of counted events, for proportion estimates.
  std::uint64_t events = 0;
  /// Fewer than 20 events were observed; the normal-approximation CI is unreliable.
  bool low_event_count = false;
};

/// Counter-based stream: output i is SplitMix64(key + i·φ). Streams for
/// distinct (seed, trial, coefficient) keys are independent and can be
/// created in any order on any thread.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}
  static CounterStream for_coefficient(std::uint64_t seed, std::uint64_t trial, std::uint64_t coefficient);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  void discard(std::uint64_t count) { counter_ += count; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// ∏_{k=1}^n h_k with h_k ~ CN(0, 1): each hop consumes two uniforms
/// (Box–Muller radius and phase).
std::complex<double> sample_channel_coefficient(CascadeOrder n, CounterStream& stream);

/// |h|² for the same draws as sample_channel_coefficient, without forming
/// the phase. Products are accumulated in log space for n >= 5.
double sample_channel_power(CascadeOrder n, CounterStream& stream);

/// Selected channel power for one realization of the n_T x n_R matrix:
/// max_i Σ_j |h_ij|² (TAS/MRC) and max_{i,j} |h_ij|² (TAS/SC).
struct SelectedPower {
  double mrc;
  double sc;
};

SelectedPower simulate_selection(const ChannelConfig& cfg, std::uint64_t seed, std::uint64_t trial);

/// γ̄ times the selected power of trial `trial` under `seed`.
double simulate_postproc_snr(Scheme s, const ChannelConfig& cfg, std::uint64_t seed, std::uint64_t trial);

/// Fraction of trials with γ_p <= gamma_o.
EmpiricalEstimate estimate_outage(Scheme s, const ChannelConfig& cfg, double gamma_o, const SimSettings& settings);

struct MomentsEstimate {
  EmpiricalEstimate mean;
  EmpiricalEstimate second_moment;
  EmpiricalEstimate af;  ///< plug-in m2/m1² - 1, delta-method standard error
};

MomentsEstimate estimate_moments_af(Scheme s, const ChannelConfig& cfg, const SimSettings& settings);

/// Empirical CDF of γ_p at each grid point, from one pass over the trials.
std::vector<EmpiricalEstimate> empirical_cdf(Scheme s, const ChannelConfig& cfg, const SimSettings& settings,
                                             std::span<const double> grid);

/// Empirical outage at threshold gamma_o for each mean SNR (any order), from
/// one pass: γ̄ x <= γ_o  <=>  x <= γ_o/γ̄.
std::vector<EmpiricalEstimate> empirical_outage_sweep(Scheme s, const ChannelConfig& cfg, double gamma_o,
                                                      std::span<const double> mean_snrs,
                                                      const SimSettings& settings);

/// Proportion estimate with normal-approximation 95% CI clamped to [0, 1].
EmpiricalEstimate proportion_estimate(std::uint64_t events, std::uint64_t trials);

}  // namespace ntas::mc
