// Symmetric tridiagonal eigen-solves used by the input-state optimizers.
#pragma once

#include <Eigen/Dense>

namespace covest {

/// Symmetric tridiagonal matrix given by its diagonal (size m) and
/// off-diagonal (size m-1).
struct SymTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
  Eigen::MatrixXd dense() const;
};

/// Number of eigenvalues strictly less than x (Sturm sequence count).
int sturm_count(const SymTridiagonal& t, double x);

/// Largest eigenvalue by Sturm bisection, converged to machine precision.
double largest_eigenvalue(const SymTridiagonal& t);

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;  // unit norm
};

/// Largest eigenpair: Sturm bisection for the value, then inverse iteration
/// with a pivoted tridiagonal solve for the vector. The sign is chosen so the
/// entry sum is nonnegative.
Eigenpair largest_eigenpair(const SymTridiagonal& t);

/// Solves (t - shift I) x = rhs by Gaussian elimination with partial
/// pivoting. Throws std::runtime_error on an exactly singular pivot.
Eigen::VectorXd solve_shifted(const SymTridiagonal& t, double shift, const Eigen::VectorXd& rhs);

/// The path-coupling matrix with zero diagonal and 1/2 off-diagonal; its
/// quadratic form is sum_k a_k a_{k+1}.
SymTridiagonal neighbor_coupling(Eigen::Index levels);

}  // namespace covest
