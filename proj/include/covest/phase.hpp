// Covariant phase estimation: error functional over seed matrices, the
// optimal seed for a given input, and input-state optimization.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace covest {

/// Thrown when two operands have incompatible sizes.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariant error for amplitudes x and seed t:
///   (1/2) sum_k |x_k|^2 t_kk
///   - (1/4) sum_k (conj(x_k) x_{k+1} t_{k+1,k} + conj(x_{k+1}) x_k t_{k,k+1}).
/// Works on any Eigen vector/matrix expressions of real or complex scalar.
template <typename DerivedX, typename DerivedT>
double neighbor_error(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedT>& t) {
  using std::conj;
  if (t.rows() != x.size() || t.cols() != x.size())
    throw DimensionMismatch("neighbor_error: seed dimension does not match amplitudes");
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const std::complex<double> xk = x(k);
    sum += 0.5 * std::norm(xk) * std::complex<double>(t(k, k));
  }
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) {
    const std::complex<double> a = x(k);
    const std::complex<double> b = x(k + 1);
    sum -= 0.25 * (conj(a) * b * std::complex<double>(t(k + 1, k)) + conj(b) * a * std::complex<double>(t(k, k + 1)));
  }
  return sum.real();
}

/// (1/2)(1 - sum_k |x_k||x_{k+1}|): the error at the optimal seed.
template <typename Derived>
double neighbor_error_bound(const Eigen::MatrixBase<Derived>& x) {
  double s = 0.0;
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) s += std::abs(x(k)) * std::abs(x(k + 1));
  return 0.5 * (1.0 - s);
}

/// Normalized amplitude vector over d eigenlevels.
class PhaseInputState {
 public:
  /// Requires sum |x_k|^2 = 1 to 1e-12.
  explicit PhaseInputState(Eigen::VectorXcd amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static PhaseInputState normalized(const Eigen::VectorXcd& v);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::Index levels() const { return amplitudes_.size(); }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Hermitian, positive semidefinite, unit-diagonal seed of a covariant POVM.
class SeedMatrix {
 public:
  /// Validates hermiticity (1e-12), unit diagonal (1e-12) and PSD (1e-10).
  explicit SeedMatrix(Eigen::MatrixXcd entries);

  static SeedMatrix identity(Eigen::Index d) { return SeedMatrix(Eigen::MatrixXcd::Identity(d, d)); }
  static SeedMatrix all_ones(Eigen::Index d) { return SeedMatrix(Eigen::MatrixXcd::Ones(d, d)); }

  const Eigen::MatrixXcd& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  std::complex<double> operator()(Eigen::Index k, Eigen::Index l) const { return entries_(k, l); }

 private:
  Eigen::MatrixXcd entries_;
};

struct PhaseDesign {
  PhaseInputState input;
  SeedMatrix seed;
  double error;
};

double phase_error(const PhaseInputState& x, const SeedMatrix& t);

/// Rank-one seed t_kl = conj(x_k) x_l / (|x_k||x_l|); zero amplitudes get a
/// unit phase.
SeedMatrix optimal_seed(const Eigen::VectorXcd& x);
inline SeedMatrix optimal_seed(const PhaseInputState& x) { return optimal_seed(x.amplitudes()); }

double min_covariant_error(const PhaseInputState& x);

/// Exact minimizer over n+1 levels: the Perron vector of the neighbor
/// coupling matrix, error (1/2)(1 - lambda_max).
PhaseDesign optimal_input(int n);

/// Sine-profile coefficients a_k = sqrt(2/(n+1)) sin(pi (k + 1/2)/(n+1)),
/// k = 0..n. Rejects n < 1.
PhaseInputState bdm_input(int n);

/// pi^2 / (4 n^2). Rejects n < 1.
double asymptotic_error(int n);

}  // namespace covest
