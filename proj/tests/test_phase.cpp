#include "covest/phase.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace covest;
using covest::testing::random_seed;
using covest::testing::random_unit_complex;
using std::numbers::pi;

namespace {

PhaseInputState real_state(std::initializer_list<double> values) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return PhaseInputState(v);
}

double closed_form_optimum(int n) { return 0.5 * (1.0 - std::cos(pi / (n + 2))); }

// Literal kernel assembly: sum over (k, l, k', l') of
// rho_{k'l'} * s_{l,k} * delta_{k,k'} delta_{l,l'} * K(k, l), where the POVM
// operator is U S U^dagger with S = T^T.
double kernel_assembly(const Eigen::VectorXcd& x, const Eigen::MatrixXcd& t) {
  const Eigen::Index d = x.size();
  const Eigen::MatrixXcd s = t.transpose();
  auto kernel = [](Eigen::Index k, Eigen::Index l) {
    return 0.5 * (k == l) - 0.25 * (k == l - 1) - 0.25 * (k - 1 == l);
  };
  std::complex<double> sum = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index kp = 0; kp < d; ++kp)
        for (Eigen::Index lp = 0; lp < d; ++lp) {
          if (k != kp || l != lp) continue;
          const std::complex<double> rho = x(kp) * std::conj(x(lp));
          sum += rho * s(l, k) * kernel(k, l);
        }
  return sum.real();
}

// Direct quadrature of int sin^2(phi/2) Tr[U_phi S U_phi^dagger rho] dphi / 2pi
// at true parameter 0, with S = T^T and U_phi = diag(e^{i k phi}).
double povm_quadrature(const Eigen::VectorXcd& x, const Eigen::MatrixXcd& t) {
  const Eigen::Index d = x.size();
  const Eigen::MatrixXcd s = t.transpose();
  const Eigen::MatrixXcd rho = x * x.adjoint();
  const int nodes = 4 * static_cast<int>(d) + 16;
  double sum = 0;
  for (int i = 0; i < nodes; ++i) {
    const double phi = 2 * pi * i / nodes;
    Eigen::VectorXcd u(d);
    for (Eigen::Index k = 0; k < d; ++k) u(k) = std::polar(1.0, (k + 1) * phi);
    const Eigen::MatrixXcd m = u.asDiagonal() * s * u.conjugate().asDiagonal();
    const double w = std::sin(phi / 2) * std::sin(phi / 2);
    sum += w * (m * rho).trace().real();
  }
  return sum / nodes;
}

}  // namespace

TEST_CASE("PhaseInputState and SeedMatrix validation") {
  CHECK_THROWS_AS(PhaseInputState(Eigen::VectorXcd::Ones(2)), std::invalid_argument);
  CHECK_NOTHROW(PhaseInputState::normalized(Eigen::VectorXcd::Ones(2)));
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Ones(2, 2);
  bad(0, 1) = 2.0;
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(SeedMatrix{bad}, std::invalid_argument);  // not PSD
  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Identity(2, 2);
  nonherm(0, 1) = {0, 0.5};
  nonherm(1, 0) = {0, 0.5};
  CHECK_THROWS_AS(SeedMatrix{nonherm}, std::invalid_argument);
  CHECK_THROWS_AS(SeedMatrix{Eigen::MatrixXcd::Identity(2, 2) * 2.0}, std::invalid_argument);
}

TEST_CASE("phase_error: examples") {
  CHECK(phase_error(real_state({1.0}), SeedMatrix::identity(1)) == doctest::Approx(0.5));
  const PhaseInputState even = real_state({std::sqrt(0.5), std::sqrt(0.5)});
  CHECK(phase_error(even, SeedMatrix::all_ones(2)) == doctest::Approx(0.25));
  CHECK(phase_error(even, SeedMatrix::identity(2)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(phase_error(even, SeedMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("optimal_seed: examples") {
  const PhaseInputState pos = real_state({0.6, 0.8});
  CHECK((optimal_seed(pos).entries() - Eigen::MatrixXcd::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::VectorXcd x(2);
  x << std::sqrt(0.5), std::complex<double>(0, std::sqrt(0.5));
  const SeedMatrix t = optimal_seed(PhaseInputState(x));
  CHECK(std::abs(t(0, 1) - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(t(1, 0) - std::complex<double>(0, -1)) < 1e-15);
  CHECK(std::abs(t(0, 0) - 1.0) < 1e-15);

  std::mt19937_64 rng(1);
  for (int d = 1; d <= 12; ++d) {
    const SeedMatrix s = optimal_seed(PhaseInputState(random_unit_complex(rng, d)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.entries());
    CHECK(es.eigenvalues()(d - 1) == doctest::Approx(d));
    for (int i = 0; i + 1 < d; ++i) CHECK(std::abs(es.eigenvalues()(i)) < 1e-12);
  }
}

TEST_CASE("optimal_seed: zero amplitudes get unit phases") {
  Eigen::VectorXcd x(3);
  x << std::complex<double>(0, 1), 0.0, 0.0;
  const SeedMatrix t = optimal_seed(PhaseInputState(x));
  CHECK(phase_error(PhaseInputState(x), t) == doctest::Approx(min_covariant_error(PhaseInputState(x))));
}

TEST_CASE("min_covariant_error: examples") {
  CHECK(min_covariant_error(real_state({1.0})) == doctest::Approx(0.5));
  for (int n = 1; n <= 6; ++n) {
    const Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(n + 1, 1.0 / std::sqrt(n + 1.0));
    CHECK(min_covariant_error(PhaseInputState(uniform)) == doctest::Approx(1.0 / (2.0 * (n + 1))));
  }
  CHECK(min_covariant_error(real_state({0.5, std::sqrt(0.5), 0.5})) ==
        doctest::Approx(0.5 * (1 - std::sqrt(0.5))).epsilon(1e-12));
  CHECK(min_covariant_error(real_state({0.5, std::sqrt(0.5), 0.5})) == doctest::Approx(0.146447).epsilon(1e-6));
}

TEST_CASE("property: covariant error bound, equality, phase invariance") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_real_distribution<double> angle(0, 2 * pi);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = dim(rng);
    const PhaseInputState x(random_unit_complex(rng, d));
    const SeedMatrix t = random_seed(rng, d);
    const double bound = min_covariant_error(x);
    CHECK(phase_error(x, t) >= bound - 1e-12);
    CHECK(std::abs(phase_error(x, optimal_seed(x)) - bound) < 1e-12);
    CHECK(bound >= 0.0);
    CHECK(bound <= 0.5);

    const PhaseInputState rotated(x.amplitudes() * std::polar(1.0, angle(rng)));
    CHECK(std::abs(min_covariant_error(rotated) - bound) < 1e-12);
    CHECK(std::abs(phase_error(rotated, optimal_seed(rotated)) - bound) < 1e-12);
  }
}

TEST_CASE("property: phase_error equals the brute-force kernel assembly and the POVM quadrature") {
  std::mt19937_64 rng(31415);
  for (int d = 1; d <= 8; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const PhaseInputState x(random_unit_complex(rng, d));
      const SeedMatrix t = random_seed(rng, d);
      const double value = phase_error(x, t);
      CHECK(std::abs(kernel_assembly(x.amplitudes(), t.entries()) - value) < 1e-12);
      CHECK(std::abs(povm_quadrature(x.amplitudes(), t.entries()) - value) < 1e-12);
    }
}

TEST_CASE("optimal_input: examples") {
  CHECK(optimal_input(0).error == doctest::Approx(0.5));
  const PhaseDesign d1 = optimal_input(1);
  CHECK(d1.error == doctest::Approx(0.25));
  CHECK(std::abs(d1.input.amplitudes()(0) - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(d1.input.amplitudes()(1) - std::sqrt(0.5)) < 1e-12);

  const PhaseDesign d2 = optimal_input(2);
  CHECK(d2.error == doctest::Approx(0.5 * (1 - std::cos(pi / 4))).epsilon(1e-12));
  const Eigen::VectorXcd expected = Eigen::Vector3cd(1.0, std::sqrt(2.0), 1.0) / 2.0;
  CHECK((d2.input.amplitudes() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("optimal_input: closed form, monotonicity, design consistency") {
  double previous = 1.0;
  for (int n = 0; n <= 100; ++n) {
    const PhaseDesign d = optimal_input(n);
    CHECK(std::abs(d.error - closed_form_optimum(n)) < 1e-10);
    CHECK(d.error <= previous + 1e-15);
    CHECK(std::abs(d.error - phase_error(d.input, d.seed)) < 1e-12);
    CHECK(d.input.amplitudes().real().minCoeff() >= 0.0);
    previous = d.error;
  }
}

TEST_CASE("bdm_input: examples and normalization") {
  const PhaseInputState b1 = bdm_input(1);
  CHECK(std::abs(b1.amplitudes()(0) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(b1.amplitudes()(1) - std::sqrt(0.5)) < 1e-15);

  const PhaseInputState b2 = bdm_input(2);
  const double s = std::sqrt(2.0 / 3.0);
  CHECK(std::abs(b2.amplitudes()(0) - s * 0.5) < 1e-15);
  CHECK(std::abs(b2.amplitudes()(1) - s) < 1e-15);
  CHECK(std::abs(b2.amplitudes()(2) - s * 0.5) < 1e-15);
  CHECK(min_covariant_error(b2) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  for (int n : {1, 3, 17, 100, 1000, 5000}) CHECK(std::abs(bdm_input(n).amplitudes().squaredNorm() - 1) < 1e-12);
  CHECK_THROWS_AS(bdm_input(0), std::invalid_argument);
}

TEST_CASE("bdm_input is never better than the exact optimum and converges to it") {
  for (int n : {1, 2, 3, 5, 10, 50, 200}) CHECK(min_covariant_error(bdm_input(n)) >= optimal_input(n).error - 1e-14);
  const double ratio = min_covariant_error(bdm_input(1000)) / optimal_input(1000).error;
  CHECK(ratio >= 1.0);
  CHECK(ratio <= 1.02);
}

TEST_CASE("asymptotic_error") {
  CHECK(asymptotic_error(10) == doctest::Approx(pi * pi / 400).epsilon(1e-15));
  CHECK(asymptotic_error(10) == doctest::Approx(0.0246740).epsilon(1e-6));
  CHECK(asymptotic_error(1) == doctest::Approx(2.4674011).epsilon(1e-7));
  const double ratio = optimal_input(1000).error / asymptotic_error(1000);
  CHECK(ratio >= 0.98);
  CHECK(ratio <= 1.02);
  CHECK_THROWS_AS(asymptotic_error(0), std::invalid_argument);
}
