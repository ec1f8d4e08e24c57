#include <doctest.h>

#include <cmath>
#include <string>

#include "ntas/schemes.hpp"

using namespace ntas;

// Properties stated for the closed-form CDFs at unit calibration. These are
// kept at their stated tolerances and run as a separate ctest entry.

namespace {

ChannelConfig unit_cfg(int n, int nt, int nr) {
  ChannelConfig c;
  c.n = CascadeOrder(n);
  c.n_t = nt;
  c.n_r = nr;
  c.mean_snr = 1.0;
  c.calibration_omega = 1.0;
  return c;
}

constexpr Scheme kBoth[] = {Scheme::TasMrc, Scheme::TasSc};

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("MRC outage never exceeds SC outage") {
  for (int n = 1; n <= 6; ++n) {
    for (int nt = 1; nt <= 3; ++nt) {
      for (int nr = 2; nr <= 4; ++nr) {
        auto c = unit_cfg(n, nt, nr);
        int violations = 0;
        for (double g = 1e-4; g < 1e4; g *= 1.05) {
          if (postproc_cdf(Scheme::TasMrc, g, c) > postproc_cdf(Scheme::TasSc, g, c) * (1 + 1e-12)) ++violations;
        }
        INFO("n=" << n << " n_t=" << nt << " n_r=" << nr);
        CHECK(violations == 0);
      }
    }
  }
}

TEST_CASE("asymptote within 5% where outage is 1e-7") {
  const auto q = OutageQuery::threshold(1.0);
  for (Scheme s : kBoth) {
    for (int n = 2; n <= 4; ++n) {
      auto c = unit_cfg(n, 2, 3);
      const double snr = required_snr(s, 1e-7, q, c);
      const double ratio = outage_asymptotic(s, q, c.with_mean_snr(snr)).probability / 1e-7;
      INFO(to_string(s) << " n=" << n);
      CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
    }
  }
}

TEST_CASE("fitted slope below 1e-6 matches the diversity order within 5%") {
  const auto q = OutageQuery::threshold(1.0);
  for (Scheme s : kBoth) {
    for (int n = 2; n <= 4; ++n) {
      auto c = unit_cfg(n, 2, 3);
      const double lo = required_snr(s, 1e-6, q, c);
      const double hi = required_snr(s, 1e-7, q, c);
      const double slope = 1.0 / std::log10(hi / lo);
      INFO(to_string(s) << " n=" << n);
      CHECK(slope == doctest::Approx(diversity_order(s, c)).epsilon(0.05));
    }
  }
}

}
