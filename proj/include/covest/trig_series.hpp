// Real trigonometric polynomials on [0, 2 pi) and inverse-CDF sampling from
// the densities they describe.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace covest {

/// f(theta) = c_0 + 2 Re sum_{m=1}^{M} c_m e^{i m theta}.
class TrigSeries {
 public:
  TrigSeries() = default;
  /// coeffs(0) is c_0 (its imaginary part is dropped), coeffs(m) is c_m.
  explicit TrigSeries(Eigen::VectorXcd coeffs);

  /// Recovers the coefficients of a real trigonometric polynomial of the
  /// given degree from equispaced samples.
  static TrigSeries from_samples(const std::function<double(double)>& f, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Eigen::VectorXcd& coefficients() const { return coeffs_; }

  double operator()(double theta) const;
  /// int_0^x f(theta) dtheta.
  double integral_to(double x) const;
  double total_integral() const;
  /// int_0^{2 pi} f(theta) sin^2(theta / 2) dtheta, exact from coefficients.
  double weighted_error_integral() const;

 private:
  Eigen::VectorXcd coeffs_;
};

/// Inverse-CDF sampler on an equispaced grid with the exact CDF at grid
/// points and linear interpolation inside each bin.
class GridSampler {
 public:
  /// Throws std::domain_error if the density dips below -1e-10 on the grid
  /// or does not integrate to 1 within 1e-8.
  GridSampler(const TrigSeries& density, int grid_size);

  /// Maps u in [0, 1) to an angle in [0, 2 pi).
  double sample(double u) const;
  int grid_size() const { return static_cast<int>(cdf_.size()) - 1; }

 private:
  std::vector<double> cdf_;
  double width_;
};

}  // namespace covest
