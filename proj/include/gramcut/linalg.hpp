#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace gramcut {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric n x n matrix. Construction rejects non-finite entries and
// asymmetry beyond 1e-12 * max(1, |entry|).
struct SymMatrix {
  Matrix entries;

  Eigen::Index dim() const { return entries.rows(); }

  static SymMatrix from(Matrix m);
};

// SymMatrix validated to be positive semidefinite up to a floor tolerance:
// smallest eigenvalue >= -eig_floor_tol and diagonal >= -eig_floor_tol,
// where eig_floor_tol defaults to 1e-8 * max(1, largest eigenvalue).
struct PsdMatrix {
  SymMatrix base;
  double eig_floor_tol = 0.0;

  Eigen::Index dim() const { return base.dim(); }

  // rel_tol scales max(1, lambda_max) to produce eig_floor_tol.
  static PsdMatrix from(SymMatrix m, double rel_tol = 1e-8);
};

// n points in the unit ball of R^d with a probability weight vector.
struct WeightedCloud {
  Matrix points;    // n x d, row i is x_i with ||x_i|| <= 1 + 1e-9
  Vector weights;   // n nonnegative entries summing to 1 within 1e-12

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }

  static WeightedCloud from(Matrix points, Vector weights);
  static WeightedCloud uniform(Matrix points);
};

double frobenius_norm(const SymMatrix& m);

// E XX^T = sum_i w_i x_i x_i^T; PSD with trace <= 1.
SymMatrix second_moment(const WeightedCloud& cloud);

// Factor a PSD matrix with A_ii <= diag_cap into unit-ball vectors whose Gram
// matrix reproduces A within 1e-7 * max(1, ||A||_F). Factor dimension is the
// numerical rank: eigenvalues above eig_floor_tol are kept, eigenvalues in
// [-eig_floor_tol, eig_floor_tol] are clipped to zero, anything below is a
// hard "not PSD" error. Weights are uniform 1/n.
WeightedCloud gram_factorize(const PsdMatrix& a, double diag_cap = 1.0);

}  // namespace gramcut
