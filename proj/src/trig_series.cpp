#include "covest/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covest {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigSeries::TrigSeries(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw std::invalid_argument("TrigSeries: empty coefficient vector");
  coeffs_(0) = coeffs_(0).real();
}

TrigSeries TrigSeries::from_samples(const std::function<double(double)>& f, int degree) {
  if (degree < 0) throw std::invalid_argument("TrigSeries: negative degree");
  const int nodes = 2 * degree + 16;
  std::vector<double> values(nodes);
  for (int j = 0; j < nodes; ++j) values[j] = f(kTwoPi * j / nodes);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(degree + 1);
  for (int m = 0; m <= degree; ++m) {
    std::complex<double> sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += values[j] * std::polar(1.0, -kTwoPi * m * j / nodes);
    c(m) = sum / static_cast<double>(nodes);
  }
  return TrigSeries(c);
}

double TrigSeries::operator()(double theta) const {
  double v = coeffs_(0).real();
  for (int m = 1; m <= degree(); ++m) v += 2.0 * (coeffs_(m) * std::polar(1.0, m * theta)).real();
  return v;
}

double TrigSeries::integral_to(double x) const {
  double v = coeffs_(0).real() * x;
  for (int m = 1; m <= degree(); ++m) {
    const std::complex<double> prim = (std::polar(1.0, m * x) - 1.0) / std::complex<double>(0.0, m);
    v += 2.0 * (coeffs_(m) * prim).real();
  }
  return v;
}

double TrigSeries::total_integral() const { return kTwoPi * coeffs_(0).real(); }

double TrigSeries::weighted_error_integral() const {
  // sin^2(theta/2) = 1/2 - (e^{i theta} + e^{-i theta}) / 4
  double v = 0.5 * coeffs_(0).real();
  if (degree() >= 1) v -= 0.5 * coeffs_(1).real();
  return kTwoPi * v;
}

GridSampler::GridSampler(const TrigSeries& density, int grid_size) : cdf_(grid_size + 1), width_(kTwoPi / grid_size) {
  if (grid_size < 1) throw std::invalid_argument("GridSampler: grid_size must be positive");
  for (int i = 0; i <= grid_size; ++i) {
    const double x = i * width_;
    const double p = density(x);
    if (p < -1e-10) throw std::domain_error("GridSampler: density is negative on the grid");
    cdf_[i] = density.integral_to(x);
  }
  for (int i = 0; i < grid_size; ++i)
    if (density((i + 0.5) * width_) < -1e-10) throw std::domain_error("GridSampler: density is negative on the grid");
  const double total = cdf_.back();
  if (!(std::abs(total - 1.0) <= 1e-8)) throw std::domain_error("GridSampler: density is not normalized");
  // Roundoff can make the exact CDF dip by ~1e-16; keep it monotone.
  for (int i = 1; i <= grid_size; ++i) cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
  for (double& c : cdf_) c /= cdf_.back();
}

double GridSampler::sample(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t bin = it == cdf_.begin() ? 0 : static_cast<std::size_t>(it - cdf_.begin()) - 1;
  bin = std::min(bin, cdf_.size() - 2);
  const double lo = cdf_[bin];
  const double hi = cdf_[bin + 1];
  const double frac = hi > lo ? (u - lo) / (hi - lo) : 0.5;
  return (static_cast<double>(bin) + std::clamp(frac, 0.0, 1.0)) * width_;
}

}  // namespace covest
