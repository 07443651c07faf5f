#include "covest/su2.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

using namespace covest;
using std::numbers::pi;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::Matrix2cd diag_torus(double theta) {
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::polar(1.0, theta / 2);
  d(1, 1) = std::polar(1.0, -theta / 2);
  return d;
}

}  // namespace

TEST_CASE("make_group_element: zero rotation is the identity") {
  for (double p1 : {0.0, 0.3, 2.0})
    for (double p2 : {0.0, 1.1, 5.0}) {
      const GroupElement g = make_group_element(0.0, p1, p2);
      CHECK(max_abs(g.matrix() - Eigen::Matrix2cd::Identity()) < 1e-14);
      CHECK(std::abs(g.angle()) < 1e-12);
    }
}

TEST_CASE("make_group_element: (pi, 0, 0) is diag(i, -i)") {
  const GroupElement g = make_group_element(pi, 0.0, 0.0);
  Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
  expected(0, 0) = {0, 1};
  expected(1, 1) = {0, -1};
  CHECK(max_abs(g.matrix() - expected) < 1e-15);
  CHECK(g.angle() == doctest::Approx(pi));
}

TEST_CASE("make_group_element: conjugation form at (pi/2, pi/4, pi/3)") {
  const double theta = pi / 2, p1 = pi / 4, p2 = pi / 3;
  // Direct multiplication of the three factors.
  Eigen::Matrix2cd w;
  w << std::cos(p1), std::sin(p1) * std::polar(1.0, p2), -std::sin(p1) * std::polar(1.0, -p2), std::cos(p1);
  const Eigen::Matrix2cd oracle = w.adjoint() * diag_torus(theta) * w;

  const GroupElement g = make_group_element(theta, p1, p2);
  CHECK(max_abs(g.matrix() - oracle) < 1e-15);
  CHECK(max_abs(g.matrix().adjoint() * g.matrix() - Eigen::Matrix2cd::Identity()) < 1e-12);
  CHECK(std::abs(g.matrix().determinant() - 1.0) < 1e-12);
  CHECK(std::abs(g.trace() - 2.0 * std::cos(pi / 4)) < 1e-12);
  CHECK(g.angle() == doctest::Approx(theta).epsilon(1e-12));
  CHECK(g.phi1() == doctest::Approx(p1).epsilon(1e-12));
  CHECK(g.phi2() == doctest::Approx(p2).epsilon(1e-12));
}

TEST_CASE("GroupElement: axis parameters rebuild the element") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = haar_sample(rng);
    const GroupElement rebuilt = make_group_element(g.angle(), g.phi1(), g.phi2());
    CHECK(max_abs(rebuilt.matrix() - g.matrix()) < 1e-10);
    CHECK(std::abs(std::abs(g.trace().real()) - std::abs(2 * std::cos(g.angle() / 2))) < 1e-10);
  }
}

TEST_CASE("GroupElement rejects non-SU(2) matrices") {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(GroupElement{m}, std::invalid_argument);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  u(1, 1) = -1.0;  // unitary, det -1
  CHECK_THROWS_AS(GroupElement{u}, std::invalid_argument);
}

TEST_CASE("haar_sample: class angle marginal") {
  std::mt19937_64 rng(20240601);
  const int n = 100000;
  std::vector<double> angles(n);
  double sum_tr = 0, sum_tr2 = 0, sum_sq = 0, sum_sq2 = 0;
  for (int i = 0; i < n; ++i) {
    const GroupElement g = haar_sample(rng);
    angles[i] = g.angle();
    const double h = g.trace().real() / 2;
    sum_tr += h;
    sum_tr2 += h * h;
    sum_sq += h * h;
    sum_sq2 += h * h * h * h;
  }
  std::sort(angles.begin(), angles.end());
  double ks = 0;
  for (int i = 0; i < n; ++i) {
    const double f = class_angle_cdf(angles[i]);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
  }
  CHECK(ks < 0.01);

  const double mean = sum_tr / n;
  const double se = std::sqrt((sum_tr2 / n - mean * mean) / n);
  CHECK(std::abs(mean) < 3 * se);

  const double mean_sq = sum_sq / n;
  const double se_sq = std::sqrt((sum_sq2 / n - mean_sq * mean_sq) / n);
  CHECK(std::abs(mean_sq - 0.25) < 3 * se_sq);
}

TEST_CASE("class_angle_cdf is the antiderivative of the density") {
  for (double t = 0.1; t < 2 * pi; t += 0.37) {
    const double h = 1e-5;
    const double derivative = (class_angle_cdf(t + h) - class_angle_cdf(t - h)) / (2 * h);
    CHECK(derivative == doctest::Approx(class_angle_density(t)).epsilon(1e-8));
  }
  CHECK(class_angle_cdf(2 * pi) == 1.0);
}

TEST_CASE("character: examples and the defining sum") {
  for (double t : {0.0, 0.5, pi, 4.0}) CHECK(character(IrrepLabel(1), t) == doctest::Approx(1.0));
  for (double t : {0.0, 0.5, 2.0, 5.0}) CHECK(character(IrrepLabel(2), t) == doctest::Approx(2 * std::cos(t / 2)));
  CHECK(std::abs(character(IrrepLabel(2), pi)) < 1e-15);
  CHECK(character(IrrepLabel(4), 0.0) == 4.0);
  CHECK(character(IrrepLabel(5), 2 * pi) == doctest::Approx(5.0));
  CHECK(character(IrrepLabel(4), 2 * pi) == doctest::Approx(-4.0));

  for (int j = 1; j <= 12; ++j)
    for (double t : {1e-9, 1e-7, 0.3, 1.7, 3.0, 6.28}) {
      std::complex<double> sum = 0;
      for (int l = 1; l <= j; ++l) sum += std::polar(1.0, (l - (j + 1) / 2.0) * t);
      CHECK(std::abs(sum.imag()) < 1e-12);
      CHECK(character(IrrepLabel(j), t) == doctest::Approx(sum.real()).epsilon(1e-10));
    }
  CHECK_THROWS_AS(IrrepLabel(0), std::invalid_argument);
}

TEST_CASE("irrep_matrix: low dimensions") {
  std::mt19937_64 rng(3);
  const GroupElement g = haar_sample(rng);
  const Eigen::MatrixXcd v1 = irrep_matrix(IrrepLabel(1), g);
  CHECK(v1.rows() == 1);
  CHECK(std::abs(v1(0, 0) - 1.0) < 1e-15);
  CHECK(max_abs(irrep_matrix(IrrepLabel(2), g) - g.matrix()) < 1e-15);

  const double theta = 0.9;
  const GroupElement torus(diag_torus(theta));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
  expected(0, 0) = std::polar(1.0, theta);
  expected(1, 1) = 1.0;
  expected(2, 2) = std::polar(1.0, -theta);
  CHECK(max_abs(irrep_matrix(IrrepLabel(3), torus) - expected) < 1e-14);
}

TEST_CASE("irrep_matrix: unitary, trace equals character, homomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const GroupElement g = haar_sample(rng);
    const GroupElement h = haar_sample(rng);
    for (int j = 1; j <= 8; ++j) {
      const IrrepLabel label(j);
      const Eigen::MatrixXcd vg = irrep_matrix(label, g);
      CHECK(max_abs(vg.adjoint() * vg - Eigen::MatrixXcd::Identity(j, j)) < 1e-10);
      CHECK(std::abs(vg.trace() - character(label, g.angle())) < 1e-10);
      if (j <= 6) CHECK(max_abs(vg * irrep_matrix(label, h) - irrep_matrix(label, g * h)) < 1e-10);
    }
  }
}

TEST_CASE("distance: examples") {
  std::mt19937_64 rng(5);
  const GroupElement g = haar_sample(rng);
  CHECK(distance(g, g) == doctest::Approx(0.0).scale(1e-15));
  const GroupElement id = GroupElement::identity();
  CHECK(distance(id, -id) == doctest::Approx(0.0).scale(1e-15));
  CHECK(distance(id, make_group_element(pi, 0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("distance: range, symmetry, bi-invariance, class-angle form") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = haar_sample(rng);
    const GroupElement h = haar_sample(rng);
    const GroupElement k = haar_sample(rng);
    const double d = distance(g, h);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(std::abs(distance(h, g) - d) < 1e-12);
    CHECK(std::abs(distance(k * g, k * h) - d) < 1e-12);
    CHECK(std::abs(distance(g * k, h * k) - d) < 1e-12);
    const double s = std::sin((g.inverse() * h).angle() / 2);
    CHECK(std::abs(d - s * s) < 1e-12);
  }
}

TEST_CASE("binomial: exact values") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(binomial(65, 3), std::invalid_argument);
}

TEST_CASE("multiplicity_spectrum: examples") {
  const MultiplicitySpectrum s1 = multiplicity_spectrum(1);
  REQUIRE(s1.entries.size() == 1);
  CHECK(s1.entries[0].dim == 2);
  CHECK(s1.entries[0].multiplicity == 1);

  const MultiplicitySpectrum s3 = multiplicity_spectrum(3);
  REQUIRE(s3.entries.size() == 2);
  CHECK(s3.multiplicity_of(4) == 1);
  CHECK(s3.multiplicity_of(2) == 2);
  CHECK(s3.total_dimension() == 8);

  const MultiplicitySpectrum s4 = multiplicity_spectrum(4);
  REQUIRE(s4.entries.size() == 3);
  CHECK(s4.multiplicity_of(5) == 1);
  CHECK(s4.multiplicity_of(3) == 3);
  CHECK(s4.multiplicity_of(1) == 2);
  CHECK(s4.total_dimension() == 16);

  CHECK_THROWS_AS(multiplicity_spectrum(0), std::invalid_argument);
  CHECK_THROWS_AS(multiplicity_spectrum(65), std::invalid_argument);
}

TEST_CASE("multiplicity_spectrum agrees with iterated spin-1/2 coupling") {
  // Oracle: couple one qubit at a time, dim m (x) 2 = (m+1) (+) (m-1).
  std::map<int, uint128> counts{{2, 1}};
  for (int n = 1; n <= 64; ++n) {
    if (n > 1) {
      std::map<int, uint128> next;
      for (const auto& [dim, mult] : counts) {
        next[dim + 1] += mult;
        if (dim > 1) next[dim - 1] += mult;
      }
      counts = next;
    }
    const MultiplicitySpectrum s = multiplicity_spectrum(n);
    CHECK(s.entries.size() == counts.size());
    for (const auto& e : s.entries) CHECK(static_cast<uint128>(e.multiplicity) == counts[e.dim]);
    CHECK(s.total_dimension() == (static_cast<uint128>(1) << n));
    for (std::size_t i = 1; i < s.entries.size(); ++i) CHECK(s.entries[i].dim == s.entries[i - 1].dim - 2);
  }
}
