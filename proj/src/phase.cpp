#include "covest/phase.hpp"

#include "covest/tridiagonal.hpp"

#include <cmath>
#include <numbers>

namespace covest {

PhaseInputState::PhaseInputState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("PhaseInputState: empty amplitude vector");
  if (!(std::abs(amplitudes_.squaredNorm() - 1.0) <= 1e-12))
    throw std::invalid_argument("PhaseInputState: amplitudes are not normalized");
}

PhaseInputState PhaseInputState::normalized(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (!(norm > 0)) throw std::invalid_argument("PhaseInputState: zero vector");
  return PhaseInputState(v / norm);
}

SeedMatrix::SeedMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  const Eigen::Index d = entries_.rows();
  if (d == 0 || entries_.cols() != d) throw std::invalid_argument("SeedMatrix: must be square and nonempty");
  if (!((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12))
    throw std::invalid_argument("SeedMatrix: not hermitian");
  for (Eigen::Index k = 0; k < d; ++k)
    if (!(std::abs(entries_(k, k) - 1.0) <= 1e-12)) throw std::invalid_argument("SeedMatrix: diagonal must be 1");
  const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() >= -1e-10)) throw std::invalid_argument("SeedMatrix: not positive semidefinite");
}

double phase_error(const PhaseInputState& x, const SeedMatrix& t) {
  if (t.dim() != x.levels()) throw DimensionMismatch("phase_error: seed dimension does not match input levels");
  return neighbor_error(x.amplitudes(), t.entries());
}

SeedMatrix optimal_seed(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd phase(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double r = std::abs(x(k));
    phase(k) = r > 0 ? x(k) / r : std::complex<double>(1.0, 0.0);
  }
  // t_kl = conj(phase_k) phase_l
  Eigen::MatrixXcd t = phase.conjugate() * phase.transpose();
  t.diagonal().setOnes();
  return SeedMatrix(t);
}

double min_covariant_error(const PhaseInputState& x) { return neighbor_error_bound(x.amplitudes()); }

PhaseDesign optimal_input(int n) {
  if (n < 0) throw std::invalid_argument("optimal_input: n must be >= 0");
  const Eigenpair top = largest_eigenpair(neighbor_coupling(n + 1));
  // Perron vector of a nonnegative irreducible matrix; clear roundoff sign flips.
  Eigen::VectorXd a = top.vector.cwiseAbs();
  a /= a.norm();
  PhaseInputState input(a.cast<std::complex<double>>());
  SeedMatrix seed = SeedMatrix::all_ones(n + 1);
  return PhaseDesign{input, seed, 0.5 * (1.0 - top.value)};
}

PhaseInputState bdm_input(int n) {
  if (n < 1) throw std::invalid_argument("bdm_input: n must be >= 1");
  Eigen::VectorXcd a(n + 1);
  const double scale = std::sqrt(2.0 / (n + 1));
  for (int k = 0; k <= n; ++k) a(k) = scale * std::sin(std::numbers::pi * (k + 0.5) / (n + 1));
  return PhaseInputState(a);
}

double asymptotic_error(int n) {
  if (n < 1) throw std::invalid_argument("asymptotic_error: n must be >= 1");
  const double nn = static_cast<double>(n);
  return std::numbers::pi * std::numbers::pi / (4.0 * nn * nn);
}

}  // namespace covest
