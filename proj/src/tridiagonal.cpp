#include "covest/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace covest {

Eigen::MatrixXd SymTridiagonal::dense() const {
  const Eigen::Index m = size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  a.diagonal() = diag;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    a(i, i + 1) = off(i);
    a(i + 1, i) = off(i);
  }
  return a;
}

int sturm_count(const SymTridiagonal& t, double x) {
  // LDL^T pivots of (T - xI); negative pivots count eigenvalues below x.
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = t.diag(0) - x;
  if (q < 0) ++count;
  for (Eigen::Index i = 1; i < t.size(); ++i) {
    if (q == 0) q = tiny;
    q = t.diag(i) - x - t.off(i - 1) * t.off(i - 1) / q;
    if (q < 0) ++count;
  }
  return count;
}

double largest_eigenvalue(const SymTridiagonal& t) {
  const Eigen::Index m = t.size();
  if (m == 0) throw std::invalid_argument("largest_eigenvalue: empty matrix");
  if (m == 1) return t.diag(0);
  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off(i - 1));
    if (i + 1 < m) r += std::abs(t.off(i));
    lo = std::min(lo, t.diag(i) - r);
    hi = std::max(hi, t.diag(i) + r);
  }
  const int target = static_cast<int>(m) - 1;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) <= target)
      lo = mid;  // at most m-1 eigenvalues below mid: the top one is above
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd solve_shifted(const SymTridiagonal& t, double shift, const Eigen::VectorXd& rhs) {
  const Eigen::Index m = t.size();
  // Banded LU with partial pivoting: after a row swap, U gains a second
  // super-diagonal.
  std::vector<double> d(m), du(m, 0.0), du2(m, 0.0), dl(m, 0.0);
  for (Eigen::Index i = 0; i < m; ++i) d[i] = t.diag(i) - shift;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    du[i] = t.off(i);
    dl[i] = t.off(i);
  }
  Eigen::VectorXd b = rhs;
  const double tiny = std::numeric_limits<double>::epsilon() * (t.diag.cwiseAbs().maxCoeff() +
                                                                (m > 1 ? t.off.cwiseAbs().maxCoeff() : 0.0) + 1.0);
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b(i + 1) -= f * b(i);
      dl[i] = f;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      std::swap(du[i], d[i + 1]);
      d[i + 1] -= f * du[i];
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      std::swap(b(i), b(i + 1));
      b(i + 1) -= f * b(i);
      dl[i] = f;
    }
  }
  if (d[m - 1] == 0) d[m - 1] = tiny;
  Eigen::VectorXd x(m);
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    double s = b(i);
    if (i + 1 < m) s -= du[i] * x(i + 1);
    if (i + 2 < m) s -= du2[i] * x(i + 2);
    if (d[i] == 0) throw std::runtime_error("solve_shifted: singular pivot");
    x(i) = s / d[i];
  }
  return x;
}

Eigenpair largest_eigenpair(const SymTridiagonal& t) {
  const Eigen::Index m = t.size();
  Eigenpair out{largest_eigenvalue(t), Eigen::VectorXd::Ones(m)};
  if (m == 1) return out;
  out.vector /= out.vector.norm();
  // Perturb the shift off the converged value so the solve is finite.
  const double scale = std::max(1.0, std::abs(out.value));
  const double shift = out.value + 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int iter = 0; iter < 4; ++iter) {
    Eigen::VectorXd y = solve_shifted(t, shift, out.vector);
    const double norm = y.norm();
    if (!std::isfinite(norm) || norm == 0) break;
    out.vector = y / norm;
  }
  if (out.vector.sum() < 0) out.vector = -out.vector;
  return out;
}

SymTridiagonal neighbor_coupling(Eigen::Index levels) {
  SymTridiagonal t;
  t.diag = Eigen::VectorXd::Zero(levels);
  t.off = Eigen::VectorXd::Constant(std::max<Eigen::Index>(levels - 1, 0), 0.5);
  return t;
}

}  // namespace covest
