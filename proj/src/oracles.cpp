#include "ntas/oracles.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace ntas::oracles {

double reg_lower_gamma_series50(double a, double x) {
  using Real = boost::multiprecision::cpp_dec_float_50;
  if (x == 0.0) return 0.0;
  const Real ra(a);
  const Real rx(x);
  // term_k = x^{a+k} e^{-x} / Γ(a+k+1)
  Real term = exp(ra * log(rx) - rx) / boost::math::tgamma(ra + 1);
  Real sum = term;
  const Real eps("1e-45");
  for (int k = 1; k < 100000; ++k) {
    term *= rx / (ra + k);
    sum += term;
    if (k > x && term < sum * eps) break;
  }
  return sum.convert_to<double>();
}

}  // namespace ntas::oracles
