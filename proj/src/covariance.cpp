#include "gramcut/covariance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gramcut {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Sum of squared entries accumulated in extended precision; the increment is
// a difference of two such sums and the pair oracle must match it to 1e-9.
long double squared_frobenius(const Matrix& m) {
  long double acc = 0.0L;
  const double* data = m.data();
  const Eigen::Index size = m.size();
  for (Eigen::Index i = 0; i < size; ++i) acc += static_cast<long double>(data[i]) * data[i];
  return acc;
}

}  // namespace

SymMatrix cond_second_moment(const CondExp& ce) {
  Matrix m = ce.part_means.transpose() * ce.part_weights.asDiagonal() * ce.part_means;
  m = ((m + m.transpose()) / 2.0).eval();
  return SymMatrix{std::move(m)};
}

DiscreteRV DiscreteRV::from(Vector values, Vector probs) {
  require(values.size() == probs.size(), "DiscreteRV: value/prob count mismatch");
  require(values.size() > 0, "DiscreteRV: no atoms");
  require(values.allFinite() && probs.allFinite(), "DiscreteRV: non-finite input");
  require(probs.minCoeff() >= 0.0, "DiscreteRV: negative probability");
  require(std::fabs(probs.sum() - 1.0) <= 1e-12, "DiscreteRV: probabilities must sum to 1");
  return DiscreteRV{std::move(values), std::move(probs)};
}

CondExp conditional_expectation(const WeightedCloud& cloud, const Partition& p) {
  const Eigen::Index n = cloud.size();
  require(static_cast<Eigen::Index>(p.size()) == n, "conditional_expectation: partition size mismatch");
  const Eigen::Index k = p.k;

  Vector part_weights = Vector::Zero(k);
  Matrix part_means = Matrix::Zero(k, cloud.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = p.assignments[static_cast<std::size_t>(i)];
    part_weights(j) += cloud.weights(i);
    part_means.row(j) += cloud.weights(i) * cloud.points.row(i);
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    if (part_weights(j) <= 0.0)
      throw std::invalid_argument("conditional_expectation: part with zero total weight");
    part_means.row(j) /= part_weights(j);
  }
  return CondExp{std::move(part_means), std::move(part_weights), p};
}

SymMatrix loss_matrix(const WeightedCloud& cloud, const CondExp& ce) {
  Matrix d = second_moment(cloud).entries - cond_second_moment(ce);
  return SymMatrix{std::move(d)};
}

double covariance_loss(const WeightedCloud& cloud, const CondExp& ce) {
  return loss_matrix(cloud, ce).entries.norm();
}

double covariance_increment(const WeightedCloud& cloud, const CondExp& ce) {
  const long double xx = squared_frobenius(second_moment(cloud).entries);
  const long double yy = squared_frobenius(cond_second_moment(ce));
  return static_cast<double>(xx - yy);
}

double increment_via_pairs_gram(const Matrix& gram, const Vector& weights, const CondExp& ce) {
  const Eigen::Index n = gram.rows();
  const Matrix mean_gram = ce.part_means * ce.part_means.transpose();
  const auto& assign = ce.partition.assignments;
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pi = assign[static_cast<std::size_t>(i)];
    long double row = 0.0L;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = gram(i, j) - mean_gram(pi, assign[static_cast<std::size_t>(j)]);
      row += static_cast<long double>(weights(j)) * gap * gap;
    }
    total += static_cast<long double>(weights(i)) * row;
  }
  return static_cast<double>(total);
}

double increment_via_pairs(const WeightedCloud& cloud, const CondExp& ce) {
  const Eigen::Index n = cloud.size();
  require(ce.partition.size() == static_cast<std::size_t>(n), "increment_via_pairs: partition size mismatch");
  const Matrix mean_gram = ce.part_means * ce.part_means.transpose();
  const auto& assign = ce.partition.assignments;

  // Row-blocked so the point Gram matrix never materializes in full.
  constexpr Eigen::Index kBlock = 256;
  long double total = 0.0L;
  for (Eigen::Index start = 0; start < n; start += kBlock) {
    const Eigen::Index rows = std::min(kBlock, n - start);
    const Matrix block = cloud.points.middleRows(start, rows) * cloud.points.transpose();
    for (Eigen::Index bi = 0; bi < rows; ++bi) {
      const Eigen::Index i = start + bi;
      const auto pi = assign[static_cast<std::size_t>(i)];
      long double row = 0.0L;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double gap = block(bi, j) - mean_gram(pi, assign[static_cast<std::size_t>(j)]);
        row += static_cast<long double>(cloud.weights(j)) * gap * gap;
      }
      total += static_cast<long double>(cloud.weights(i)) * row;
    }
  }
  return static_cast<double>(total);
}

DiscreteRV gap_distribution(const WeightedCloud& cloud, const CondExp& ce) {
  const Eigen::Index n = cloud.size();
  require(ce.partition.size() == static_cast<std::size_t>(n), "gap_distribution: partition size mismatch");
  if (n > 20000) throw std::invalid_argument("gap_distribution: n^2 atoms exceed the size guard");

  const Matrix gram = cloud.points * cloud.points.transpose();
  const Matrix mean_gram = ce.part_means * ce.part_means.transpose();
  const auto& assign = ce.partition.assignments;

  Vector values(n * n), probs(n * n);
  Eigen::Index a = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pi = assign[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j, ++a) {
      values(a) = gram(i, j) - mean_gram(pi, assign[static_cast<std::size_t>(j)]);
      probs(a) = cloud.weights(i) * cloud.weights(j);
    }
  }
  // Pair weights of a probability vector can miss 1 by a few ulps; renormalize
  // so the DiscreteRV invariant holds exactly.
  probs /= probs.sum();
  return DiscreteRV::from(std::move(values), std::move(probs));
}

double psi2_norm(const DiscreteRV& z) {
  // Orlicz functional minus one: h(t) = sum_j p_j (exp(z_j^2/t^2) - 1) - 1,
  // strictly decreasing in t wherever some atom is nonzero.
  std::vector<double> vals;
  std::vector<double> probs;
  vals.reserve(static_cast<std::size_t>(z.atoms()));
  probs.reserve(static_cast<std::size_t>(z.atoms()));
  double zmax = 0.0;
  double p_at_max = 0.0;
  for (Eigen::Index j = 0; j < z.atoms(); ++j) {
    if (z.probs(j) <= 0.0) continue;  // zero-probability atoms do not affect the functional
    vals.push_back(z.values(j));
    probs.push_back(z.probs(j));
    const double az = std::fabs(z.values(j));
    if (az > zmax) {
      zmax = az;
      p_at_max = z.probs(j);
    } else if (az == zmax && az > 0.0) {
      p_at_max += z.probs(j);
    }
  }
  if (zmax == 0.0) return 0.0;

  const auto h = [&](double t) {
    long double acc = 0.0L;
    const double inv_t2 = 1.0 / (t * t);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      acc += static_cast<long double>(probs[j]) * std::expm1(vals[j] * vals[j] * inv_t2);
    }
    return static_cast<double>(acc) - 1.0;
  };

  // At t = zmax/sqrt(ln 2) every term is at most 1, so h <= 0 there; grow just
  // in case of round-off. The analytic lower guess solves the single-atom
  // equation at the heaviest extreme atom; shrink until strictly positive.
  double hi = zmax / std::sqrt(std::log(2.0));
  while (h(hi) > 0.0) hi *= 2.0;
  double lo = zmax / std::sqrt(std::log1p(1.0 / p_at_max));
  while (h(lo) <= 0.0) lo *= 0.5;

  for (int iter = 0; iter < 200 && (hi - lo) > 1e-10 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

CenteringReport centering_check(const DiscreteRV& gap, const DiscreteRV& surrogate_gap) {
  require(gap.atoms() == surrogate_gap.atoms(), "centering_check: atom count mismatch");
  if ((gap.probs - surrogate_gap.probs).lpNorm<Eigen::Infinity>() > 1e-12)
    throw std::invalid_argument("centering_check: atom probabilities differ");
  CenteringReport report;
  report.psi2_centered = psi2_norm(gap);
  report.psi2_surrogate = psi2_norm(surrogate_gap);
  report.holds = report.psi2_centered <= 2.0 * report.psi2_surrogate * (1.0 + 1e-9);
  return report;
}

}  // namespace gramcut
