#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ntas/errors.hpp"
#include "ntas/moments.hpp"
#include "ntas/montecarlo.hpp"

using namespace ntas;
using namespace ntas::mc;

namespace {

ChannelConfig cfg_of(int n, int nt, int nr, double snr) {
  ChannelConfig c;
  c.n = CascadeOrder(n);
  c.n_t = nt;
  c.n_r = nr;
  c.mean_snr = snr;
  return c;
}

SimSettings settings_of(std::uint64_t trials, unsigned workers = 1, std::uint64_t width = 1ULL << 16) {
  SimSettings s;
  s.trials = trials;
  s.workers = workers;
  s.partition_width = width;
  return s;
}

struct Moments {
  double mean;
  double std_error;
};

template <class F>
Moments sample_mean(std::uint64_t count, F draw) {
  double s1 = 0.0, s2 = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v = draw(i);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / count;
  const double var = s2 / count - mean * mean;
  return {mean, std::sqrt(var / count)};
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("uniform draws lie in [0, 1) and streams are reproducible") {
  auto a = CounterStream::for_coefficient(7, 11, 3);
  auto b = CounterStream::for_coefficient(7, 11, 3);
  auto c = CounterStream::for_coefficient(7, 11, 4);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
    differs = differs || (u != c.uniform());
  }
  CHECK(differs);
}

TEST_CASE("unit average power for every cascade order") {
  for (int n = 1; n <= 6; ++n) {
    CascadeOrder c(n);
    auto r = sample_mean(1'000'000, [&](std::uint64_t i) {
      auto st = CounterStream::for_coefficient(42, i, 0);
      return sample_channel_power(c, st);
    });
    // Var |h|² = 2^n - 1 for a product of unit exponentials
    CHECK(std::abs(r.mean - 1.0) < 4.0 * std::sqrt((std::pow(2.0, n) - 1.0) / 1e6));
  }
}

TEST_CASE("double Rayleigh fourth moment") {
  CascadeOrder c(2);
  auto r = sample_mean(1'000'000, [&](std::uint64_t i) {
    auto st = CounterStream::for_coefficient(5, i, 0);
    const double p = sample_channel_power(c, st);
    return p * p;
  });
  // E|h|⁴ = (2!)^2, Var |h|⁴ = (4!)^2 - 16
  CHECK(std::abs(r.mean - 4.0) < 3.0 * std::sqrt(560.0 / 1e6));
}

TEST_CASE("coefficient is circularly symmetric") {
  CascadeOrder c(1);
  double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
  const int count = 400'000;
  for (int i = 0; i < count; ++i) {
    auto st = CounterStream::for_coefficient(9, i, 0);
    const auto h = sample_channel_coefficient(c, st);
    re += h.real();
    im += h.imag();
    re2 += h.real() * h.real();
    im2 += h.imag() * h.imag();
  }
  const double se = std::sqrt(0.5 / count);
  CHECK(std::abs(re / count) < 4 * se);
  CHECK(std::abs(im / count) < 4 * se);
  CHECK(std::abs(re2 / count - 0.5) < 4 * std::sqrt(0.5 / count));
  CHECK(std::abs(im2 / count - 0.5) < 4 * std::sqrt(0.5 / count));
}

TEST_CASE("power equals squared magnitude of the coefficient") {
  for (int n = 1; n <= 7; ++n) {
    CascadeOrder c(n);
    for (std::uint64_t t = 0; t < 200; ++t) {
      auto s1 = CounterStream::for_coefficient(3, t, 2);
      auto s2 = CounterStream::for_coefficient(3, t, 2);
      CHECK(sample_channel_power(c, s1) == doctest::Approx(std::norm(sample_channel_coefficient(c, s2))).epsilon(1e-12));
    }
  }
}

TEST_CASE("MRC selection dominates SC on every realization") {
  auto c = cfg_of(3, 3, 2, 1.0);
  for (std::uint64_t t = 0; t < 5000; ++t) {
    const auto sp = simulate_selection(c, 77, t);
    CHECK(sp.mrc >= sp.sc);
  }
  for (double g : {0.05, 0.3, 1.0}) {
    const auto s = settings_of(50'000);
    CHECK(estimate_outage(Scheme::TasMrc, c, g, s).events <= estimate_outage(Scheme::TasSc, c, g, s).events);
  }
}

TEST_CASE("single antenna schemes coincide") {
  auto c = cfg_of(2, 1, 1, 3.0);
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CHECK(simulate_postproc_snr(Scheme::TasMrc, c, 1, t) == simulate_postproc_snr(Scheme::TasSc, c, 1, t));
  }
}

TEST_CASE("Rayleigh outage at threshold equal to mean SNR") {
  auto c = cfg_of(1, 1, 1, 1.0);
  const auto e = estimate_outage(Scheme::TasSc, c, 1.0, settings_of(1'000'000));
  CHECK(std::abs(e.value - (1.0 - std::exp(-1.0))) < 3.0 * e.std_error);
  CHECK(e.ci95_low < e.value);
  CHECK(e.ci95_high > e.value);
  CHECK(e.trials == 1'000'000);
}

TEST_CASE("outage extremes") {
  auto c = cfg_of(2, 2, 2, 10.0);
  const auto s = settings_of(20'000);
  CHECK(estimate_outage(Scheme::TasMrc, c, 0.0, s).value == 0.0);
  CHECK(estimate_outage(Scheme::TasMrc, c, 1e300, s).value == 1.0);
  CHECK(estimate_outage(Scheme::TasMrc, c, 0.0, s).low_event_count);
}

TEST_CASE("SC outage agrees with the closed form") {
  auto c = cfg_of(2, 2, 3, 10.0);
  const auto e = estimate_outage(Scheme::TasSc, c, 1.0, settings_of(1'000'000));
  const double p = outage(Scheme::TasSc, OutageQuery::threshold(1.0), c);
  CHECK((std::abs(e.value - p) <= 0.2 * p || (p >= e.ci95_low && p <= e.ci95_high)));
}

TEST_CASE("estimates are independent of workers and partition width") {
  auto c = cfg_of(3, 2, 2, 4.0);
  const std::vector<double> grid{0.5, 1.0, 2.0, 8.0};
  const auto ref = empirical_cdf(Scheme::TasMrc, c, settings_of(30'001), grid);
  const auto ref_m = estimate_moments_af(Scheme::TasSc, c, settings_of(30'001));
  for (unsigned w : {1u, 3u}) {
    for (std::uint64_t width : {1ULL, 4096ULL, 10'000ULL, 1ULL << 16}) {
      const auto s = settings_of(30'001, w, width);
      const auto got = empirical_cdf(Scheme::TasMrc, c, s, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(got[i].value == ref[i].value);
        CHECK(got[i].std_error == ref[i].std_error);
      }
      const auto m = estimate_moments_af(Scheme::TasSc, c, s);
      CHECK(m.mean.value == ref_m.mean.value);
      CHECK(m.af.value == ref_m.af.value);
      CHECK(m.af.std_error == ref_m.af.std_error);
    }
  }
}

TEST_CASE("empirical CDF") {
  auto c = cfg_of(2, 2, 2, 1.0);
  const std::vector<double> grid{0.01, 0.1, 0.5, 1.0, 3.0, 1e9};
  const auto cdf = empirical_cdf(Scheme::TasSc, c, settings_of(20'000), grid);
  for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i].value >= cdf[i - 1].value);
  CHECK(cdf.back().value == 1.0);
  CHECK(cdf[2].value == estimate_outage(Scheme::TasSc, c, 0.5, settings_of(20'000)).value);
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(empirical_cdf(Scheme::TasSc, c, settings_of(100), bad), DomainError);
}

TEST_CASE("outage sweep matches per-point estimates") {
  auto c = cfg_of(2, 2, 3, 1.0);
  const std::vector<double> snrs{10.0, 1.0, 100.0};
  const auto s = settings_of(20'000);
  const auto sweep = empirical_outage_sweep(Scheme::TasMrc, c, 2.0, snrs, s);
  REQUIRE(sweep.size() == 3);
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    CHECK(sweep[i].value == estimate_outage(Scheme::TasMrc, c.with_mean_snr(snrs[i]), 2.0, s).value);
  }
}

TEST_CASE("Rayleigh amount of fading") {
  auto c = cfg_of(1, 1, 1, 1.0);
  const auto m = estimate_moments_af(Scheme::TasSc, c, settings_of(1'000'000));
  // exponential SNR has AF exactly 1; the fitted severity gives 1/m = 0.9648
  CHECK(std::abs(m.af.value - 1.0) < 4.0 * m.af.std_error);
  CHECK(std::abs(m.af.value - af_siso(CascadeOrder(1))) < 0.05);
  CHECK(std::abs(m.mean.value - 1.0) < 4.0 * m.mean.std_error);
}

TEST_CASE("AF estimate does not depend on mean SNR") {
  auto c = cfg_of(2, 2, 2, 1.0);
  const auto s = settings_of(50'000);
  const auto a = estimate_moments_af(Scheme::TasMrc, c, s);
  const auto b = estimate_moments_af(Scheme::TasMrc, c.with_mean_snr(100.0), s);
  CHECK(a.af.value == doctest::Approx(b.af.value).epsilon(1e-12));
  CHECK(b.mean.value == doctest::Approx(100.0 * a.mean.value).epsilon(1e-12));
}

TEST_CASE("MRC fades less than SC") {
  auto c = cfg_of(3, 2, 2, 1.0);
  const auto s = settings_of(1'000'000);
  const auto mrc = estimate_moments_af(Scheme::TasMrc, c, s);
  const auto sc = estimate_moments_af(Scheme::TasSc, c, s);
  CHECK(mrc.af.ci95_high < sc.af.ci95_low);
}

TEST_CASE("proportion estimate") {
  const auto e = proportion_estimate(5, 100);
  CHECK(e.value == 0.05);
  CHECK(e.low_event_count);
  CHECK(e.ci95_low >= 0.0);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.05 * 0.95 / 100)));
  const auto f = proportion_estimate(100, 100);
  CHECK(f.ci95_high == 1.0);
  CHECK_FALSE(proportion_estimate(50, 100).low_event_count);
}

TEST_CASE("settings validation") {
  auto c = cfg_of(1, 1, 1, 1.0);
  CHECK_THROWS_AS(estimate_outage(Scheme::TasSc, c, 1.0, settings_of(0)), DomainError);
  CHECK_THROWS_AS(estimate_outage(Scheme::TasSc, c, 1.0, settings_of(10, 1, 0)), DomainError);
}

}
