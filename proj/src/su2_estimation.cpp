#include "covest/su2_estimation.hpp"

#include "covest/character_integrals.hpp"
#include "covest/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace covest {

std::string to_string(ReferenceMode mode) {
  return mode == ReferenceMode::external ? "external" : "self-entangled";
}

ReferenceMode parse_reference_mode(const std::string& s) {
  if (s == "external") return ReferenceMode::external;
  if (s == "self-entangled") return ReferenceMode::self_entangled;
  throw std::invalid_argument("unknown reference mode: " + s);
}

int block_count(int n) {
  if (n < 1) throw std::invalid_argument("block_count: n must be >= 1");
  return n % 2 == 1 ? (n + 1) / 2 : n / 2 + 1;
}

int block_dimension(int n, int index) {
  if (index < 0 || index >= block_count(n)) throw std::out_of_range("block_dimension: index out of range");
  return n % 2 == 1 ? 2 * (index + 1) : 2 * index + 1;
}

Su2BlockAmplitudes::Su2BlockAmplitudes(int n, Eigen::VectorXd amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
  if (n < 1) throw std::invalid_argument("Su2BlockAmplitudes: n must be >= 1");
  if (amplitudes_.size() != block_count(n))
    throw DimensionMismatch("Su2BlockAmplitudes: amplitude count does not match block count");
  if (!(amplitudes_.minCoeff() >= 0.0)) throw std::invalid_argument("Su2BlockAmplitudes: amplitudes must be >= 0");
  if (!(std::abs(amplitudes_.squaredNorm() - 1.0) <= 1e-12))
    throw std::invalid_argument("Su2BlockAmplitudes: amplitudes are not normalized");
}

double single_irrep_error(IrrepLabel j) { return j.dim == 1 ? 0.75 : 0.5; }

double su2_error_odd(const Su2BlockAmplitudes& blocks, const SeedMatrix& t) {
  if (blocks.parity() != Parity::odd) throw std::invalid_argument("su2_error_odd: n must be odd");
  if (t.dim() != blocks.blocks()) throw DimensionMismatch("su2_error_odd: seed dimension does not match block count");
  return neighbor_error(blocks.amplitudes(), t.entries());
}

double min_su2_error_odd(const Su2BlockAmplitudes& blocks) {
  if (blocks.parity() != Parity::odd) throw std::invalid_argument("min_su2_error_odd: n must be odd");
  return neighbor_error_bound(blocks.amplitudes());
}

namespace {

double even_objective(const Eigen::VectorXd& a) {
  double s = 0.0;
  for (Eigen::Index k = 0; k + 1 < a.size(); ++k) s += a(k) * a(k + 1);
  return 0.5 * (1.0 - s) + 0.25 * a(0);
}

// Best tail for a fixed leading amplitude s.
Eigen::VectorXd even_tail(const SymTridiagonal& coupling, double top, const Eigen::VectorXd& perron, double s) {
  const Eigen::Index m = coupling.size();
  const double r = std::sqrt(std::max(0.0, 1.0 - s * s));
  if (s <= 0.0) return r * perron;
  if (r <= 0.0) return Eigen::VectorXd::Zero(m);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(m);
  e0(0) = 1.0;
  auto tail_at = [&](double nu) -> Eigen::VectorXd { return -0.5 * s * solve_shifted(coupling, nu, e0); };
  // The tail norm decreases from +inf at nu = top to 0; at
  // nu = top + s/(2r) it is already <= r.
  double lo = top;
  double hi = top + s / (2.0 * r);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Eigen::VectorXd tail = tail_at(mid);
    const double norm = tail.norm();
    if (!std::isfinite(norm) || norm > r)
      lo = mid;
    else
      hi = mid;
  }
  Eigen::VectorXd tail = tail_at(hi).cwiseAbs();
  const double norm = tail.norm();
  if (norm > 0) tail *= r / norm;
  return tail;
}

}  // namespace

double su2_error_even(const Su2BlockAmplitudes& blocks) {
  if (blocks.parity() != Parity::even) throw std::invalid_argument("su2_error_even: n must be even");
  return even_objective(blocks.amplitudes());
}

EvenOptimum minimize_even_error(int levels) {
  if (levels < 1) throw std::invalid_argument("minimize_even_error: levels must be >= 1");
  if (levels == 1) return {Eigen::VectorXd::Ones(1), even_objective(Eigen::VectorXd::Ones(1))};

  const SymTridiagonal coupling = neighbor_coupling(levels - 1);
  const Eigenpair perron = largest_eigenpair(coupling);
  Eigen::VectorXd perron_vec = perron.vector.cwiseAbs();
  perron_vec /= perron_vec.norm();

  auto assemble = [&](double s) {
    Eigen::VectorXd a(levels);
    a(0) = s;
    a.tail(levels - 1) = even_tail(coupling, perron.value, perron_vec, s);
    return a;
  };
  auto value = [&](double s) { return even_objective(assemble(s)); };

  constexpr int kScan = 64;
  double best_s = 0.0;
  double best_v = value(0.0);
  std::vector<double> grid(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    grid[i] = static_cast<double>(i) / kScan;
    const double v = value(grid[i]);
    if (v < best_v) {
      best_v = v;
      best_s = grid[i];
    }
  }
  // Golden-section refinement on the bracket around the best grid point.
  double lo = std::max(0.0, best_s - 1.0 / kScan);
  double hi = std::min(1.0, best_s + 1.0 / kScan);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value(x2);
    }
  }
  for (double s : {x1, x2, 0.5 * (lo + hi)}) {
    const double v = value(s);
    if (v < best_v) {
      best_v = v;
      best_s = s;
    }
  }
  Eigen::VectorXd a = assemble(best_s);
  a /= a.norm();
  return {a, even_objective(a)};
}

std::pair<std::uint64_t, bool> saturating_multiplicity(int n, int dim) {
  if (n < 1) throw std::invalid_argument("saturating_multiplicity: n must be >= 1");
  if (dim < 1 || dim > n + 1 || (n + 1 - dim) % 2 != 0) return {0, false};
  const int p = (n + 1 - dim) / 2;
  // mult = C(n,p) - C(n,p-1) = C(n,p) * dim / (n - p + 1)
  const uint128 cap = static_cast<uint128>(std::numeric_limits<std::uint64_t>::max());
  uint128 c = 1;
  for (int i = 1; i <= p; ++i) {
    c = c * static_cast<unsigned>(n - p + i) / static_cast<unsigned>(i);
    if (c > cap) return {std::numeric_limits<std::uint64_t>::max(), true};
  }
  const uint128 mult = c * static_cast<unsigned>(dim) / static_cast<unsigned>(n - p + 1);
  if (mult > cap) return {std::numeric_limits<std::uint64_t>::max(), true};
  return {static_cast<std::uint64_t>(mult), false};
}

namespace {

// Longest run of consecutive feasible blocks starting at block 0. Couplings
// in the error functional link only adjacent blocks.
int usable_prefix(const FeasibilityReport& report) {
  int run = 0;
  while (run < static_cast<int>(report.blocks.size()) && report.blocks[run].feasible) ++run;
  return run;
}

}  // namespace

FeasibilityReport self_entanglement_feasible(int n) {
  if (n < 1) throw std::invalid_argument("self_entanglement_feasible: n must be >= 1");
  FeasibilityReport report;
  report.n = n;
  const int count = block_count(n);
  for (int i = 0; i < count; ++i) {
    const int dim = block_dimension(n, i);
    const auto [mult, saturated] = saturating_multiplicity(n, dim);
    const bool feasible = saturated || mult >= static_cast<std::uint64_t>(dim);
    report.blocks.push_back({dim, mult, saturated, dim, feasible});
    if (feasible) report.usable.push_back(i);
  }
  const int run = usable_prefix(report);
  if (run > 0 && run == static_cast<int>(report.usable.size())) {
    if (n % 2 == 1)
      report.achievable_error = optimal_input(run - 1).error;
    else
      report.achievable_error = minimize_even_error(run).error;
  }
  return report;
}

Su2Design design_optimal(int n, ReferenceMode mode) {
  if (n < 1) throw std::invalid_argument("design_optimal: n must be >= 1");
  const int count = block_count(n);
  const bool odd = n % 2 == 1;

  int levels = count;
  if (mode == ReferenceMode::self_entangled) {
    const FeasibilityReport report = self_entanglement_feasible(n);
    if (report.usable.empty()) throw InfeasibleDesign("design_optimal: no irreducible block can host its own reference");
    levels = usable_prefix(report);
    if (levels != static_cast<int>(report.usable.size()))
      throw std::logic_error("design_optimal: usable blocks are not contiguous");
  }

  Eigen::VectorXd amplitudes = Eigen::VectorXd::Zero(count);
  double error = 0.0;
  if (odd) {
    const PhaseDesign phase = optimal_input(levels - 1);
    amplitudes.head(levels) = phase.input.amplitudes().real();
    error = phase.error;
  } else {
    const EvenOptimum opt = minimize_even_error(levels);
    amplitudes.head(levels) = opt.amplitudes;
    error = opt.error;
    if (mode == ReferenceMode::external) {
      const int d = n / 2;
      const double lower = optimal_input(d).error;
      const double upper = optimal_input(d - 1).error;
      if (error < lower - 1e-10 || error > upper + 1e-10)
        throw std::logic_error("design_optimal: even-case optimum violates the sandwich bound");
    }
  }
  amplitudes /= amplitudes.norm();
  Su2BlockAmplitudes blocks(n, amplitudes);
  SeedMatrix seed = optimal_seed(Eigen::VectorXcd(amplitudes.cast<std::complex<double>>()));
  return Su2Design{blocks, seed, mode, error};
}

double brute_force_su2_error(const Su2BlockAmplitudes& blocks, const SeedMatrix& t) {
  if (blocks.parity() != Parity::odd) throw std::invalid_argument("brute_force_su2_error: n must be odd");
  if (blocks.blocks() > kBruteForceMaxBlocks) throw std::invalid_argument("brute_force_su2_error: oracle scale exceeded");
  if (t.dim() != blocks.blocks()) throw DimensionMismatch("brute_force_su2_error: seed dimension mismatch");
  const Eigen::VectorXd& x = blocks.amplitudes();
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k)
    for (Eigen::Index l = 0; l < x.size(); ++l)
      sum += x(k) * x(l) * t(l, k) * su2_error_kernel(static_cast<int>(k) + 1, static_cast<int>(l) + 1);
  return sum.real();
}

}  // namespace covest
