#include "ntas/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "ntas/errors.hpp"

namespace ntas::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kZ95 = 1.959963984540054;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// -ln(1 - U): unit-mean exponential, the squared modulus of a CN(0, 1) draw.
double unit_exponential(CounterStream& s) { return -std::log1p(-s.uniform()); }

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs `trial(tally, index)` for every trial, one fresh Tally per canonical
// block, and folds the block tallies in block order.
template <class Tally, class TrialFn, class MergeFn>
Tally reduce_trials(const SimSettings& settings, const Tally& zero, TrialFn trial, MergeFn merge) {
  settings.validate();
  const std::uint64_t blocks = (settings.trials + kReductionBlock - 1) / kReductionBlock;
  const std::uint64_t blocks_per_partition =
      std::max<std::uint64_t>(1, (settings.partition_width + kReductionBlock - 1) / kReductionBlock);
  const std::uint64_t partitions = (blocks + blocks_per_partition - 1) / blocks_per_partition;

  std::vector<Tally> per_block(blocks, zero);
  std::atomic<std::uint64_t> next_partition{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t p = next_partition.fetch_add(1);
      if (p >= partitions) return;
      const std::uint64_t b_end = std::min(blocks, (p + 1) * blocks_per_partition);
      for (std::uint64_t b = p * blocks_per_partition; b < b_end; ++b) {
        const std::uint64_t t_end = std::min(settings.trials, (b + 1) * kReductionBlock);
        Tally& tally = per_block[b];
        for (std::uint64_t t = b * kReductionBlock; t < t_end; ++t) trial(tally, t);
      }
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(settings.workers), partitions));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }

  Tally total = zero;
  for (const Tally& t : per_block) merge(total, t);
  return total;
}

double selected(Scheme s, const SelectedPower& p) { return s == Scheme::TasMrc ? p.mrc : p.sc; }

EmpiricalEstimate mean_estimate(double sum, double sum_sq, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  EmpiricalEstimate e{};
  e.trials = n;
  e.value = sum / nd;
  const double var = n > 1 ? std::max(0.0, (sum_sq - sum * sum / nd) / (nd - 1.0)) : 0.0;
  e.std_error = std::sqrt(var / nd);
  e.ci95_low = e.value - kZ95 * e.std_error;
  e.ci95_high = e.value + kZ95 * e.std_error;
  return e;
}

}  // namespace

void SimSettings::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (partition_width < 1) throw DomainError("partition_width must be >= 1");
}

CounterStream CounterStream::for_coefficient(std::uint64_t seed, std::uint64_t trial, std::uint64_t coefficient) {
  const std::uint64_t k1 = mix64(seed + kGolden);
  const std::uint64_t k2 = mix64(k1 ^ (trial * 0xd1b54a32d192ed03ULL + 1));
  return CounterStream(mix64(k2 ^ (coefficient * 0x8cb92ba72f3d8dd7ULL + 1)));
}

std::uint64_t CounterStream::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double CounterStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::complex<double> sample_channel_coefficient(CascadeOrder n, CounterStream& stream) {
  std::complex<double> h{1.0, 0.0};
  for (int k = 0; k < n.value(); ++k) {
    const double radius = std::sqrt(unit_exponential(stream));
    const double phase = 2.0 * std::numbers::pi * stream.uniform();
    h *= std::polar(radius, phase);
  }
  return h;
}

double sample_channel_power(CascadeOrder n, CounterStream& stream) {
  if (n.value() < 5) {
    double p = 1.0;
    for (int k = 0; k < n.value(); ++k) {
      p *= unit_exponential(stream);
      stream.discard(1);
    }
    return p;
  }
  double log_p = 0.0;
  for (int k = 0; k < n.value(); ++k) {
    log_p += std::log(unit_exponential(stream));
    stream.discard(1);
  }
  return std::exp(log_p);
}

SelectedPower simulate_selection(const ChannelConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
  SelectedPower best{0.0, 0.0};
  std::uint64_t coefficient = 0;
  for (int i = 0; i < cfg.n_t; ++i) {
    double row = 0.0;
    for (int j = 0; j < cfg.n_r; ++j) {
      auto stream = CounterStream::for_coefficient(seed, trial, coefficient++);
      const double p = sample_channel_power(cfg.n, stream);
      row += p;
      best.sc = std::max(best.sc, p);
    }
    best.mrc = std::max(best.mrc, row);
  }
  return best;
}

double simulate_postproc_snr(Scheme s, const ChannelConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
  return cfg.mean_snr * selected(s, simulate_selection(cfg, seed, trial));
}

EmpiricalEstimate proportion_estimate(std::uint64_t events, std::uint64_t trials) {
  EmpiricalEstimate e{};
  e.trials = trials;
  e.events = events;
  e.value = static_cast<double>(events) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  e.ci95_low = std::max(0.0, e.value - kZ95 * e.std_error);
  e.ci95_high = std::min(1.0, e.value + kZ95 * e.std_error);
  e.low_event_count = events < 20;
  return e;
}

std::vector<EmpiricalEstimate> empirical_cdf(Scheme s, const ChannelConfig& cfg, const SimSettings& settings,
                                             std::span<const double> grid) {
  cfg.validate();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("empirical_cdf: grid must be strictly ascending");
  }
  using Histogram = std::vector<std::uint64_t>;
  // hist[i] counts samples in (grid[i-1], grid[i]]; samples above the grid are dropped.
  const Histogram hist = reduce_trials(
      settings, Histogram(grid.size(), 0),
      [&](Histogram& h, std::uint64_t t) {
        const double y = simulate_postproc_snr(s, cfg, settings.master_seed, t);
        const auto it = std::lower_bound(grid.begin(), grid.end(), y);
        if (it != grid.end()) ++h[static_cast<std::size_t>(it - grid.begin())];
      },
      [](Histogram& acc, const Histogram& h) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += h[i];
      });
  std::vector<EmpiricalEstimate> out;
  out.reserve(grid.size());
  std::uint64_t cumulative = 0;
  for (const std::uint64_t c : hist) {
    cumulative += c;
    out.push_back(proportion_estimate(cumulative, settings.trials));
  }
  return out;
}

EmpiricalEstimate estimate_outage(Scheme s, const ChannelConfig& cfg, double gamma_o, const SimSettings& settings) {
  if (!(gamma_o >= 0.0)) throw DomainError("estimate_outage: threshold must be >= 0");
  const double grid[] = {gamma_o};
  return empirical_cdf(s, cfg, settings, grid).front();
}

std::vector<EmpiricalEstimate> empirical_outage_sweep(Scheme s, const ChannelConfig& cfg, double gamma_o,
                                                      std::span<const double> mean_snrs,
                                                      const SimSettings& settings) {
  if (!(gamma_o > 0.0)) throw DomainError("empirical_outage_sweep: threshold must be > 0");
  // Thresholds on the unit-SNR selected power, ascending.
  std::vector<std::size_t> order(mean_snrs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mean_snrs[a] > mean_snrs[b]; });
  std::vector<double> grid;
  grid.reserve(order.size());
  for (const std::size_t i : order) {
    const double x = gamma_o / mean_snrs[i];
    if (!grid.empty() && !(x > grid.back())) throw DomainError("empirical_outage_sweep: duplicate mean SNR");
    grid.push_back(x);
  }
  const auto sorted = empirical_cdf(s, cfg.with_mean_snr(1.0), settings, grid);
  std::vector<EmpiricalEstimate> out(mean_snrs.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = sorted[k];
  return out;
}

MomentsEstimate estimate_moments_af(Scheme s, const ChannelConfig& cfg, const SimSettings& settings) {
  cfg.validate();
  struct PowerSums {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  };
  // Sums of the unit-SNR selected power; γ̄ enters only as a final scale,
  // so the AF estimate is bit-identical across mean SNRs.
  const PowerSums sums = reduce_trials(
      settings, PowerSums{},
      [&](PowerSums& acc, std::uint64_t t) {
        const double x = selected(s, simulate_selection(cfg, settings.master_seed, t));
        const double x2 = x * x;
        acc.s1 += x;
        acc.s2 += x2;
        acc.s3 += x2 * x;
        acc.s4 += x2 * x2;
      },
      [](PowerSums& acc, const PowerSums& b) {
        acc.s1 += b.s1;
        acc.s2 += b.s2;
        acc.s3 += b.s3;
        acc.s4 += b.s4;
      });

  const double n = static_cast<double>(settings.trials);
  const double g = cfg.mean_snr;
  MomentsEstimate out{};
  out.mean = mean_estimate(sums.s1, sums.s2, settings.trials);
  out.second_moment = mean_estimate(sums.s2, sums.s4, settings.trials);
  for (EmpiricalEstimate* e : {&out.mean, &out.second_moment}) {
    const double scale = e == &out.mean ? g : g * g;
    e->value *= scale;
    e->std_error *= scale;
    e->ci95_low *= scale;
    e->ci95_high *= scale;
  }

  const double m1 = sums.s1 / n;
  const double m2 = sums.s2 / n;
  const double m3 = sums.s3 / n;
  const double m4 = sums.s4 / n;
  const double var_x = m2 - m1 * m1;
  const double var_x2 = m4 - m2 * m2;
  const double cov = m3 - m1 * m2;
  const double d1 = -2.0 * m2 / (m1 * m1 * m1);
  const double d2 = 1.0 / (m1 * m1);
  const double var_af = std::max(0.0, d1 * d1 * var_x + 2.0 * d1 * d2 * cov + d2 * d2 * var_x2) / n;
  out.af.trials = settings.trials;
  out.af.value = m2 / (m1 * m1) - 1.0;
  out.af.std_error = std::sqrt(var_af);
  out.af.ci95_low = out.af.value - kZ95 * out.af.std_error;
  out.af.ci95_high = out.af.value + kZ95 * out.af.std_error;
  return out;
}

}  // namespace ntas::mc
