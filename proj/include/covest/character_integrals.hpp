// Class-function integrals over SU(2) and U(1) by periodic equispaced
// quadrature. Every integrand here is a trigonometric polynomial in the
// class angle, for which the rule is exact once the node count exceeds the
// degree.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace covest {

struct QuadratureSpec {
  int node_count = 64;

  explicit QuadratureSpec(int nodes = 64) : node_count(nodes) {
    if (nodes < 16) throw std::invalid_argument("QuadratureSpec: node_count must be >= 16");
  }

  double node(int i) const { return 2.0 * std::numbers::pi * i / node_count; }
};

/// Node count used for kernels with indices up to k and l.
inline QuadratureSpec kernel_quadrature(int k, int l) { return QuadratureSpec(2 * (k + l) + 16); }

/// Haar integral of a class function: int_0^{2pi} f(theta) (1/pi) sin^2(theta/2) dtheta.
template <class F>
double class_integral(F&& f, const QuadratureSpec& spec) {
  double sum = 0.0;
  for (int i = 0; i < spec.node_count; ++i) {
    const double theta = spec.node(i);
    const double s = std::sin(theta / 2.0);
    sum += f(theta) * s * s;
  }
  return 2.0 * sum / spec.node_count;
}

/// Normalized U(1) integral (1/2pi) int_0^{2pi} f(theta) dtheta of a complex
/// valued function.
template <class F>
std::complex<double> circle_integral(F&& f, const QuadratureSpec& spec) {
  std::complex<double> sum = 0.0;
  for (int i = 0; i < spec.node_count; ++i) sum += f(spec.node(i));
  return sum / static_cast<double>(spec.node_count);
}

/// int d(I,g) chi^{2k}(g) chi^{2l}(g) mu(dg) for k, l >= 1.
double su2_error_kernel(int k, int l);

/// int d(I,g) |chi^j(g)|^2 mu(dg).
double su2_single_irrep_integral(int j);

/// (1/2pi) int (1 - |chi_2(theta)|^2) e^{i(k-l)theta} dtheta, where chi_2 is
/// half the defining character, cos(theta/2). Imaginary part is roundoff.
std::complex<double> phase_error_kernel_complex(int k, int l);

/// Real part of phase_error_kernel_complex.
double phase_error_kernel(int k, int l);

/// The common target (1/2) delta_{k,l} - (1/4) delta_{|k-l|,1}.
double neighbor_kernel(int k, int l);

}  // namespace covest
