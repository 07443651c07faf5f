// Monte Carlo simulation of the covariant estimation protocols.
//
// The true parameter is fixed at the identity; covariance makes the error
// law independent of it. Outcomes are drawn by inverse CDF from the
// relative-angle density (phase) or the relative class-angle density (SU(2)).
#pragma once

#include "covest/phase.hpp"
#include "covest/su2_estimation.hpp"
#include "covest/trig_series.hpp"

#include <cstdint>
#include <string>

namespace covest {

enum class Protocol { phase, su2 };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& s);

struct SimConfig {
  Protocol protocol = Protocol::phase;
  int n = 1;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  int grid_size = 4096;
  /// Trials are split into this many independently seeded streams. Results
  /// depend on the partition count, never on thread scheduling.
  int partitions = 1;

  /// Throws std::invalid_argument on trials < 1, partitions < 1 or a grid
  /// size that is not a power of two >= 256.
  void validate() const;
};

struct SimResult {
  double empirical_mean_error = 0.0;
  double standard_error = 0.0;
  double closed_form = 0.0;
  double z_score = 0.0;
  std::int64_t trials = 0;
};

/// p(phi) = (1/2pi) sum_{k,l} conj(x_k) x_l t_{l,k} e^{i(l-k) phi}.
TrigSeries outcome_density_phase(const PhaseDesign& design);

/// q(theta) = (1/pi) sin^2(theta/2) sum_{k,l} conj(x_k) x_l t_{l,k} chi^{2k}(theta) chi^{2l}(theta).
/// Requires odd n.
TrigSeries outcome_density_su2_class(const Su2Design& design);

/// 64-bit Mersenne twister stream for partition `index` of `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Samples sin^2(phi/2) under the design's outcome density.
/// Throws std::invalid_argument when trials < 2 or the protocol does not
/// match, std::domain_error when the density is invalid.
SimResult simulate(const SimConfig& config, const PhaseDesign& design);
SimResult simulate(const SimConfig& config, const Su2Design& design);

/// Largest block count for the explicit-matrix SU(2) oracles.
inline constexpr int kExplicitMaxBlocks = 3;

/// Value of the POVM density d M(g_hat) / mu(d g_hat) for true element g,
/// computed with explicit irrep matrices on the block space
/// (+)_k H_{2k} (x) H_{2k,R} and maximally entangled block states.
double explicit_povm_density(const Su2Design& design, const GroupElement& g, const GroupElement& g_hat);

struct ExplicitEstimate {
  SimResult error;              // mean of d(g, g_hat)
  double normalization = 0.0;   // Haar mean of the POVM density (1 for a complete POVM)
  double normalization_se = 0.0;
};

/// Importance estimate: (g, g_hat) both Haar, averaging d(g, g_hat) times
/// the explicit POVM density.
ExplicitEstimate explicit_su2_importance(const Su2Design& design, std::int64_t samples, std::uint64_t seed);

/// Rejection sampler: draws g and a Haar proposal g_hat, accepts with
/// probability density / bound, and averages d(g, g_hat) over `samples`
/// accepted outcomes.
SimResult explicit_su2_rejection(const Su2Design& design, std::int64_t samples, std::uint64_t seed);

}  // namespace covest
