// Estimation of an unknown SU(2) action from n uses, built on block
// amplitudes over the irreducible components of (C^2)^{tensor n}.
//
// Odd n = 2d-1: blocks k = 1..d carry irreps of dimension 2k.
// Even n = 2d:  blocks k = 0..d carry irreps of dimension 2k+1.
// Block index i in the amplitude vector is k-1 (odd) or k (even).
#pragma once

#include "covest/phase.hpp"
#include "covest/su2.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covest {

enum class Parity { odd, even };
enum class ReferenceMode { external, self_entangled };

std::string to_string(ReferenceMode mode);
ReferenceMode parse_reference_mode(const std::string& s);

/// Thrown when the requested design has no usable irreducible blocks.
class InfeasibleDesign : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of irreducible blocks in (C^2)^{tensor n}: d for n = 2d-1, d+1 for n = 2d.
int block_count(int n);
/// Irrep dimension carried by block index i.
int block_dimension(int n, int index);

/// Nonnegative, normalized amplitudes over the irreducible blocks for n uses.
/// Complex phases are absorbed into the seed, so the representative is real.
class Su2BlockAmplitudes {
 public:
  Su2BlockAmplitudes(int n, Eigen::VectorXd amplitudes);

  int n() const { return n_; }
  Parity parity() const { return n_ % 2 == 1 ? Parity::odd : Parity::even; }
  /// d with n = 2d-1 (odd) or n = 2d (even).
  int d() const { return (n_ + 1) / 2; }
  const Eigen::VectorXd& amplitudes() const { return amplitudes_; }
  Eigen::Index blocks() const { return amplitudes_.size(); }
  int block_dim(int index) const { return block_dimension(n_, index); }

 private:
  int n_;
  Eigen::VectorXd amplitudes_;
};

struct Su2Design {
  Su2BlockAmplitudes blocks;
  SeedMatrix seed;
  ReferenceMode reference_mode;
  double error;
};

struct BlockFeasibility {
  int dim;
  std::uint64_t multiplicity;  // UINT64_MAX when saturated
  bool multiplicity_saturated;
  int reference_dim;  // dimension a reference copy must have
  bool feasible;      // multiplicity >= dim
};

struct FeasibilityReport {
  int n = 0;
  std::vector<BlockFeasibility> blocks;  // block index order
  std::vector<int> usable;               // feasible block indices
  std::optional<double> achievable_error;
};

/// Averaged error with one irreducible block and a maximally entangled
/// reference: 3/4 for the trivial irrep, 1/2 otherwise.
double single_irrep_error(IrrepLabel j);

double su2_error_odd(const Su2BlockAmplitudes& blocks, const SeedMatrix& t);
double min_su2_error_odd(const Su2BlockAmplitudes& blocks);

/// (1/2)(1 - sum_k a_k a_{k+1}) + (1/4) a_0 for even n >= 2.
double su2_error_even(const Su2BlockAmplitudes& blocks);

struct EvenOptimum {
  Eigen::VectorXd amplitudes;
  double error;
};

/// Minimizes (1/2)(1 - sum_k a_k a_{k+1}) + a_0/4 over nonnegative unit
/// vectors of the given length.
///
/// For a fixed first entry s the remaining entries solve a sphere-constrained
/// quadratic with a positive linear term, whose maximizer is
/// (s/2)(nu I - P)^{-1} e_0 with nu above the top eigenvalue of P and fixed by
/// the norm constraint; the outer problem in s is one-dimensional.
EvenOptimum minimize_even_error(int levels);

/// Optimal design for n uses. Throws InfeasibleDesign when the
/// self-entangled usable block set is empty, std::invalid_argument for n < 1.
Su2Design design_optimal(int n, ReferenceMode mode);

/// Multiplicity of the irrep `dim` in (C^2)^{tensor n}, exact or saturated at
/// UINT64_MAX. Accepts any n >= 1.
std::pair<std::uint64_t, bool> saturating_multiplicity(int n, int dim);

FeasibilityReport self_entanglement_feasible(int n);

/// Largest block count accepted by brute_force_su2_error.
inline constexpr int kBruteForceMaxBlocks = 10;

/// sum_{k,l} conj(x_k) x_l t_{l,k} I(k,l) with I from character quadrature.
double brute_force_su2_error(const Su2BlockAmplitudes& blocks, const SeedMatrix& t);

}  // namespace covest
