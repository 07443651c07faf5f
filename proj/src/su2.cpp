#include "covest/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGroupTol = 1e-12;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  return r;
}

}  // namespace

GroupElement::GroupElement(const Eigen::Matrix2cd& m) : matrix_(m) {
  const double unitarity = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (!(unitarity <= kGroupTol)) throw std::invalid_argument("GroupElement: matrix is not unitary");
  if (!(std::abs(m.determinant() - Complex(1.0, 0.0)) <= kGroupTol))
    throw std::invalid_argument("GroupElement: determinant is not 1");
  derive_parameters();
}

GroupElement::GroupElement(const Eigen::Matrix2cd& m, Unchecked) : matrix_(m) { derive_parameters(); }

void GroupElement::derive_parameters() {
  // g = cos(theta/2) I + i sin(theta/2) (unit traceless hermitian part),
  // so sin(theta/2) is the norm of the non-scalar part.
  const Complex alpha = 0.5 * (matrix_(0, 0) + std::conj(matrix_(1, 1)));
  const Complex beta = 0.5 * (matrix_(0, 1) - std::conj(matrix_(1, 0)));
  const double c = alpha.real();
  const double s = std::hypot(alpha.imag(), std::abs(beta));
  angle_ = 2.0 * std::atan2(s, c);

  if (s < 1e-14) {
    phi1_ = 0.0;
    phi2_ = 0.0;
    return;
  }
  // Eigenvector for e^{i theta/2} is the first column of W^dagger,
  // (cos phi1, sin phi1 e^{-i phi2}); pick the better conditioned row.
  const Complex lambda = std::polar(1.0, angle_ / 2.0);
  Eigen::Vector2cd v1(beta, lambda - alpha);
  Eigen::Vector2cd v2(std::conj(alpha) - lambda, std::conj(beta));
  Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
  v.normalize();
  if (std::abs(v(0)) > 0) v *= std::polar(1.0, -std::arg(v(0)));
  phi1_ = std::atan2(std::abs(v(1)), v(0).real());
  phi2_ = std::abs(v(1)) > 0 ? wrap(-std::arg(v(1)), 2.0 * kPi) : 0.0;
}

GroupElement GroupElement::inverse() const { return GroupElement(matrix_.adjoint(), Unchecked{}); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(a.matrix_ * b.matrix_, GroupElement::Unchecked{});
}

GroupElement operator-(const GroupElement& a) { return GroupElement(-a.matrix_, GroupElement::Unchecked{}); }

GroupElement make_group_element(double theta, double phi1, double phi2) {
  const double t = wrap(theta, 4.0 * kPi);
  Eigen::Matrix2cd w;
  w << std::cos(phi1), std::sin(phi1) * std::polar(1.0, phi2),
      -std::sin(phi1) * std::polar(1.0, -phi2), std::cos(phi1);
  Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
  diag(0, 0) = std::polar(1.0, t / 2.0);
  diag(1, 1) = std::polar(1.0, -t / 2.0);
  return GroupElement(w.adjoint() * diag * w);
}

GroupElement from_quaternion(double a, double b, double c, double d) {
  const double norm = std::sqrt(a * a + b * b + c * c + d * d);
  if (!(norm > 0)) throw std::invalid_argument("from_quaternion: zero quaternion");
  a /= norm;
  b /= norm;
  c /= norm;
  d /= norm;
  Eigen::Matrix2cd m;
  m << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return GroupElement(m);
}

double class_angle_density(double theta) {
  const double s = std::sin(theta / 2.0);
  return s * s / kPi;
}

double class_angle_cdf(double theta) {
  if (theta <= 0) return 0.0;
  if (theta >= 2.0 * kPi) return 1.0;
  return (theta - std::sin(theta)) / (2.0 * kPi);
}

double character(IrrepLabel j, double theta) {
  const double s = std::sin(theta / 2.0);
  if (std::abs(s) > 1e-6) return std::sin(j.dim * theta / 2.0) / s;
  // Near the removable singularities use the defining sum directly.
  double sum = 0.0;
  for (int l = 1; l <= j.dim; ++l) sum += std::cos((l - (j.dim + 1) / 2.0) * theta);
  return sum;
}

Eigen::MatrixXcd irrep_matrix(IrrepLabel j, const GroupElement& g) {
  // Basis f_p = e1^p e2^(J-p) / sqrt(binom(J, p)) for p = J..0, where the
  // symmetric power is normalized so that the f_p are orthonormal.
  const int top = j.dim - 1;
  const Eigen::Matrix2cd& m = g.matrix();
  const Complex g11 = m(0, 0), g21 = m(1, 0), g12 = m(0, 1), g22 = m(1, 1);

  std::vector<double> log_fact(top + 1, 0.0);
  for (int i = 1; i <= top; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
  auto choose = [&](int n, int k) { return std::exp(log_fact[n] - log_fact[k] - log_fact[n - k]); };

  auto power = [](Complex z, int e) {
    Complex r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= z;
    return r;
  };

  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(j.dim, j.dim);
  for (int p = 0; p <= top; ++p) {
    const int q = top - p;
    // g e1 = g11 e1 + g21 e2, g e2 = g12 e1 + g22 e2.
    for (int a = 0; a <= p; ++a) {
      for (int b = 0; b <= q; ++b) {
        const int out = a + b;  // power of e1 in the image
        const Complex coeff = choose(p, a) * choose(q, b) * power(g11, a) * power(g21, p - a) *
                              power(g12, b) * power(g22, q - b);
        const double scale = std::sqrt(choose(top, p) / choose(top, out));
        v(top - out, top - p) += coeff * scale;
      }
    }
  }
  return v;
}

double distance(const GroupElement& u, const GroupElement& v) {
  const Complex overlap = (u.matrix().adjoint() * v.matrix()).trace() / 2.0;
  return std::clamp(1.0 - std::norm(overlap), 0.0, 1.0);
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxTensorPower) throw std::invalid_argument("binomial: n out of exact range");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

uint128 MultiplicitySpectrum::total_dimension() const {
  uint128 sum = 0;
  for (const auto& e : entries) sum += static_cast<uint128>(e.dim) * e.multiplicity;
  return sum;
}

std::uint64_t MultiplicitySpectrum::multiplicity_of(int dim) const {
  for (const auto& e : entries)
    if (e.dim == dim) return e.multiplicity;
  return 0;
}

MultiplicitySpectrum multiplicity_spectrum(int n) {
  if (n < 1) throw std::invalid_argument("multiplicity_spectrum: n must be >= 1");
  if (n > kMaxTensorPower) throw std::invalid_argument("multiplicity_spectrum: n exceeds exact integer range");
  MultiplicitySpectrum s;
  s.n = n;
  for (int p = 0; 2 * p <= n; ++p) {
    const int dim = n + 1 - 2 * p;
    s.entries.push_back({dim, binomial(n, p) - binomial(n, p - 1)});
  }
  return s;
}

}  // namespace covest
