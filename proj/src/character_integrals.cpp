#include "covest/character_integrals.hpp"

#include "covest/su2.hpp"

#include <cmath>
#include <cstdlib>

namespace covest {

double su2_error_kernel(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("su2_error_kernel: indices must be >= 1");
  const IrrepLabel jk(2 * k), jl(2 * l);
  return class_integral(
      [&](double theta) {
        const double s = std::sin(theta / 2.0);
        return s * s * character(jk, theta) * character(jl, theta);
      },
      kernel_quadrature(k, l));
}

double su2_single_irrep_integral(int j) {
  const IrrepLabel label(j);
  return class_integral(
      [&](double theta) {
        const double s = std::sin(theta / 2.0);
        const double chi = character(label, theta);
        return s * s * chi * chi;
      },
      QuadratureSpec(2 * j + 16));
}

std::complex<double> phase_error_kernel_complex(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("phase_error_kernel: indices must be >= 0");
  return circle_integral(
      [&](double theta) {
        const double half = std::cos(theta / 2.0);
        return (1.0 - half * half) * std::polar(1.0, (k - l) * theta);
      },
      QuadratureSpec(2 * std::abs(k - l) + 16));
}

double phase_error_kernel(int k, int l) { return phase_error_kernel_complex(k, l).real(); }

double neighbor_kernel(int k, int l) {
  if (k == l) return 0.5;
  if (std::abs(k - l) == 1) return -0.25;
  return 0.0;
}

}  // namespace covest
