// SU(2) group elements, Haar sampling, characters and irreducible
// representations.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace covest {

using Complex = std::complex<double>;

// Exact accumulator for tensor-power dimension sums.
__extension__ typedef unsigned __int128 uint128;

/// Dimension label of an irreducible SU(2) representation (spin (dim-1)/2).
struct IrrepLabel {
  int dim;

  explicit IrrepLabel(int d) : dim(d) {
    if (d < 1) throw std::invalid_argument("IrrepLabel: dimension must be >= 1");
  }
};

/// An element of SU(2) together with its class angle and the axis
/// parameters of the conjugation form  g = W^dagger diag(e^{i theta/2}, e^{-i theta/2}) W.
///
/// The class angle lies in [0, 2 pi]; Tr g = 2 cos(theta / 2).
class GroupElement {
 public:
  GroupElement() : GroupElement(Eigen::Matrix2cd::Identity()) {}

  /// Validates unitarity and det = 1 to 1e-12. Throws std::invalid_argument.
  explicit GroupElement(const Eigen::Matrix2cd& m);

  static GroupElement identity() { return GroupElement(); }

  const Eigen::Matrix2cd& matrix() const { return matrix_; }
  double angle() const { return angle_; }
  double phi1() const { return phi1_; }
  double phi2() const { return phi2_; }
  Complex trace() const { return matrix_.trace(); }

  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a);

 private:
  struct Unchecked {};
  GroupElement(const Eigen::Matrix2cd& m, Unchecked);
  void derive_parameters();

  Eigen::Matrix2cd matrix_;
  double angle_ = 0.0;
  double phi1_ = 0.0;
  double phi2_ = 0.0;
};

/// Builds W^dagger diag(e^{i theta/2}, e^{-i theta/2}) W with
/// W = [[cos phi1, sin phi1 e^{i phi2}], [-sin phi1 e^{-i phi2}, cos phi1]].
GroupElement make_group_element(double theta, double phi1, double phi2);

/// Builds the element from unit-quaternion components (a, b, c, d):
/// [[a + ib, c + id], [-c + id, a - ib]]. The components are normalized.
GroupElement from_quaternion(double a, double b, double c, double d);

/// Haar-distributed element: uniform point on the unit 3-sphere.
template <class Rng>
GroupElement haar_sample(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const double a = normal(rng);
    const double b = normal(rng);
    const double c = normal(rng);
    const double d = normal(rng);
    if (a * a + b * b + c * c + d * d > 1e-300) return from_quaternion(a, b, c, d);
  }
}

/// Class-angle density of the Haar measure, (1/pi) sin^2(theta/2) on [0, 2 pi).
double class_angle_density(double theta);

/// Cumulative distribution of the class angle, (theta - sin theta) / (2 pi).
double class_angle_cdf(double theta);

/// Character chi^j(theta) = sum_{l=1}^{j} e^{i(l-(j+1)/2) theta}
///                        = sin(j theta/2) / sin(theta/2).
double character(IrrepLabel j, double theta);

/// The j-dimensional irreducible representation matrix V_g^j, realized as
/// the symmetric tensor power Sym^{j-1}(C^2) in the orthonormal weight basis
/// ordered from highest weight to lowest.
Eigen::MatrixXcd irrep_matrix(IrrepLabel j, const GroupElement& g);

/// Gate-fidelity error d(u, v) = 1 - |Tr(u^{-1} v) / 2|^2, in [0, 1].
double distance(const GroupElement& u, const GroupElement& v);

struct IrrepMultiplicity {
  int dim;
  std::uint64_t multiplicity;
};

/// Decomposition of (C^2)^{tensor n}: irreps of dimension n+1, n-1, ... with
/// the dimension of their permutation-group multiplicity spaces.
struct MultiplicitySpectrum {
  int n = 0;
  std::vector<IrrepMultiplicity> entries;  // descending dimension

  /// Sum of dim * multiplicity, computed in 128-bit integers.
  uint128 total_dimension() const;
  /// Multiplicity of the irrep of the given dimension (0 when absent).
  std::uint64_t multiplicity_of(int dim) const;
};

/// Largest n accepted by multiplicity_spectrum; binomials stay exact in 64 bits.
inline constexpr int kMaxTensorPower = 64;

/// Exact binomial coefficient; zero when k < 0 or k > n. Requires n <= 64.
std::uint64_t binomial(int n, int k);

/// Throws std::invalid_argument for n < 1 or n > kMaxTensorPower.
MultiplicitySpectrum multiplicity_spectrum(int n);

}  // namespace covest
