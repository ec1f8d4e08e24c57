#pragma once

#include <optional>

namespace ntas {

/// Number of cascaded Rayleigh stages in one channel coefficient.
class CascadeOrder {
 public:
  explicit CascadeOrder(int n);

  int value() const { return n_; }
  double as_double() const { return static_cast<double>(n_); }

  friend bool operator==(CascadeOrder, CascadeOrder) = default;

 private:
  int n_;
};

/// Fading severity of the n*Rayleigh approximation.
struct FadingParams {
  CascadeOrder n;
  double m;      ///< shape, 0.6102 n + 0.4263
  double omega;  ///< scale, 0.8808 n^-0.9661 + 1.12
  double alpha;  ///< m / n
};

FadingParams fading_params(CascadeOrder n);

/// Per-receiver quantities for an n_R-branch MRC (and the single-branch SC)
/// SNR at mean branch SNR γ̄.
struct BranchSnrParams {
  double a;          ///< m n_R
  double alpha_mrc;  ///< a / n
  double beta_mrc;   ///< (2a/Ω) (n_R γ̄)^{-1/n}
  double beta_sc;    ///< (2m/Ω) γ̄^{-1/n}
  double mean_snr;   ///< γ̄, linear

  static BranchSnrParams make(CascadeOrder n, int n_r, double mean_snr);
};

/// A density value, or the marker that the density diverges at the origin
/// (shape exponent below one). Quadrature over such densities must use
/// open-endpoint rules.
class Density {
 public:
  static Density finite(double v) { return Density(v); }
  static Density divergent_at_origin() { return Density(std::nullopt); }

  bool divergent() const { return !value_.has_value(); }
  /// Throws DomainError when divergent().
  double value() const;

 private:
  explicit Density(std::optional<double> v) : value_(v) {}
  std::optional<double> value_;
};

/// Approximate n*Rayleigh amplitude density with mean-scale x̄:
/// β^m/(nΓ(m)) x^{α-1} e^{-β x^{1/n}}, β = (2m/Ω) x̄^{-1/n}.
Density amplitude_pdf(double x, CascadeOrder n, double x_bar);

/// Approximate density of the n_R-branch MRC output SNR.
Density mrc_snr_pdf(double gamma, const BranchSnrParams& p, CascadeOrder n);

/// P(a, β_MRC γ^{1/n}).
double mrc_snr_cdf(double gamma, const BranchSnrParams& p, CascadeOrder n);

}  // namespace ntas
