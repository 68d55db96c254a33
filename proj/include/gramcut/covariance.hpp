#pragma once

#include "gramcut/linalg.hpp"
#include "gramcut/partition.hpp"

namespace gramcut {

// Conditional expectation Y = E[X|F] for the sigma-algebra F generated by a
// partition: per-part weighted means and part weights. The partition itself
// is kept so pair statistics can couple each point with its part mean.
struct CondExp {
  Matrix part_means;    // k x d
  Vector part_weights;  // k entries summing to 1
  Partition partition;

  Eigen::Index parts() const { return part_means.rows(); }
};

// Finite discrete random variable given by atoms and probabilities.
struct DiscreteRV {
  Vector values;
  Vector probs;

  Eigen::Index atoms() const { return values.size(); }

  static DiscreteRV from(Vector values, Vector probs);
};

struct CenteringReport {
  double psi2_centered = 0.0;   // psi2 of <X,X'> - <Y,Y'>
  double psi2_surrogate = 0.0;  // psi2 of <X,X'> - Z
  bool holds = false;           // centered <= 2 * surrogate (with 1e-9 slack)
};

CondExp conditional_expectation(const WeightedCloud& cloud, const Partition& p);

// E YY^T = sum_j W_j m_j m_j^T.
SymMatrix cond_second_moment(const CondExp& ce);

// E XX^T - E YY^T, PSD up to round-off.
SymMatrix loss_matrix(const WeightedCloud& cloud, const CondExp& ce);

// ||E XX^T - E YY^T||_F. The difference matrix is PSD.
double covariance_loss(const WeightedCloud& cloud, const CondExp& ce);

// ||E XX^T||_F^2 - ||E YY^T||_F^2, via the moment matrices.
double covariance_increment(const WeightedCloud& cloud, const CondExp& ce);

// The same quantity as the exact O(n^2 d) pair expectation
// E(<X,X'> - <Y,Y'>)^2 over independent copies.
double increment_via_pairs(const WeightedCloud& cloud, const CondExp& ce);

// Pair expectation evaluated against a precomputed point Gram matrix; for
// callers that amortize X X^T across many candidate partitions.
double increment_via_pairs_gram(const Matrix& gram, const Vector& weights, const CondExp& ce);

// All n^2 pair atoms <x_i,x_j> - <m_p(i),m_p(j)> with probabilities w_i w_j.
DiscreteRV gap_distribution(const WeightedCloud& cloud, const CondExp& ce);

// Exact subgaussian norm inf{t>0 : E exp(Z^2/t^2) <= 2} of a finite discrete
// variable, by monotone bisection; 0 for the a.s. zero variable.
double psi2_norm(const DiscreteRV& z);

// Approximate-metric-projection check: given the centered gap <X,X'> - <Y,Y'>
// and a surrogate gap <X,X'> - Z for some F x F-measurable Z on the same pair
// atoms, verifies psi2(centered) <= 2 psi2(surrogate).
CenteringReport centering_check(const DiscreteRV& gap, const DiscreteRV& surrogate_gap);

}  // namespace gramcut
