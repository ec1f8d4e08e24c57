#include <doctest.h>

#include <cmath>
#include <limits>

#include "ntas/errors.hpp"
#include "ntas/oracles.hpp"
#include "ntas/specfun.hpp"

using namespace ntas;
using namespace ntas::specfun;

TEST_SUITE("specfun") {

TEST_CASE("ln_gamma reference values") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  // ln sqrt(pi), 30-digit reference
  CHECK(std::abs(ln_gamma(0.5) - 0.572364942924700087) < 1e-14);
}

TEST_CASE("ln_gamma rejects non-positive and non-finite input") {
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(ln_gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("ln_gamma recurrence") {
  for (double x = 0.1; x <= 100.0; x *= 1.37) {
    CHECK(std::abs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)) < 1e-11 * std::max(1.0, std::abs(ln_gamma(x + 1.0))));
  }
}

TEST_CASE("P and Q at reference points") {
  CHECK(reg_lower_gamma(2.5, 0.0) == 0.0);
  CHECK(std::abs(reg_lower_gamma(1.0, 1.0) - (1.0 - std::exp(-1.0))) < 1e-14);
  CHECK(std::abs(reg_lower_gamma(3.0, 3.0) - 0.576809918873156485) < 1e-14);
  // deep upper tail, relative accuracy
  const double q = reg_upper_gamma(4.94, 20.0);
  CHECK(std::abs(q / 1.54363943069320691e-05 - 1.0) < 1e-11);
}

TEST_CASE("P agrees with the 50-digit series") {
  double worst = 0.0;
  for (double a : {0.5, 1.0365, 1.6467, 3.2934, 4.9401, 10.0, 40.0}) {
    for (double x : {1e-6, 0.01, 0.3, 1.0, 2.5, 7.0, 15.0, 40.0}) {
      worst = std::max(worst, std::abs(reg_lower_gamma(a, x) - oracles::reg_lower_gamma_series50(a, x)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("P + Q == 1") {
  for (double a : {0.3, 1.0, 2.7, 9.5, 33.0}) {
    for (double x = 0.01; x < 80.0; x *= 1.9) {
      CHECK(std::abs(reg_lower_gamma(a, x) + reg_upper_gamma(a, x) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("P is nondecreasing in x and bounded") {
  for (double a : {0.5, 1.6467, 4.9401, 10.0}) {
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = 0.05 * i;
      const double p = reg_lower_gamma(a, x);
      CHECK(p >= prev);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("integer shape closed form") {
  for (int a = 1; a <= 8; ++a) {
    for (double x : {0.2, 1.0, 3.5, 9.0, 20.0}) {
      double sum = 0.0, term = 1.0;
      for (int k = 0; k < a; ++k) {
        sum += term;
        term *= x / (k + 1);
      }
      CHECK(std::abs(reg_lower_gamma(a, x) - (1.0 - std::exp(-x) * sum)) < 1e-10);
    }
  }
}

TEST_CASE("large shape does not overflow") {
  // Γ(200) is far beyond double range
  const double p = reg_lower_gamma(200.0, 200.0);
  CHECK(p > 0.45);
  CHECK(p < 0.52);
  CHECK(std::isfinite(log_reg_lower_gamma(200.0, 1.0)));
}

TEST_CASE("log P stays finite where P underflows") {
  const double lp = log_reg_lower_gamma(20.0, 1e-30);
  CHECK(std::isfinite(lp));
  // ln P ~ a ln x - ln Γ(a+1) for tiny x
  CHECK(lp == doctest::Approx(20.0 * std::log(1e-30) - ln_gamma(21.0)).epsilon(1e-12));
  CHECK(log_reg_lower_gamma(2.0, 0.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(reg_lower_gamma(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(reg_upper_gamma(-2.0, 1.0), DomainError);
  CHECK_THROWS_AS(reg_lower_gamma(1.0, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("iteration budget is enforced") {
  Accuracy tight{1e-12, 1};
  CHECK_THROWS_AS(reg_lower_gamma(30.0, 25.0, tight), ConvergenceError);
  CHECK_THROWS_AS(reg_lower_gamma(3.0, 2.0, Accuracy{0.0, 100}), DomainError);
  CHECK_THROWS_AS(reg_lower_gamma(3.0, 2.0, Accuracy{1e-12, 0}), DomainError);
}

TEST_CASE("binomial") {
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(6, 3) == 20);
  CHECK_THROWS_AS(binomial(6, 7), DomainError);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(binomial(65, 2), DomainError);
}

}
