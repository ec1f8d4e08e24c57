#pragma once

namespace ntas::oracles {

/// P(a, x) from Σ_{k>=0} x^{a+k} e^{-x} / Γ(a+k+1) in 50-digit decimal
/// arithmetic, rounded to double. Independent of specfun.
double reg_lower_gamma_series50(double a, double x);

}  // namespace ntas::oracles
