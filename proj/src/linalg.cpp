#include "gramcut/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gramcut {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

SymMatrix SymMatrix::from(Matrix m) {
  require(m.rows() == m.cols(), "SymMatrix: matrix must be square");
  require(m.allFinite(), "SymMatrix: non-finite entries");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double tol = 1e-12 * std::max(1.0, std::fabs(m(i, j)));
      if (std::fabs(m(i, j) - m(j, i)) > tol) {
        std::ostringstream os;
        os << "SymMatrix: entries (" << i << "," << j << ") and (" << j << "," << i
           << ") differ by more than the symmetry tolerance";
        throw std::invalid_argument(os.str());
      }
    }
  }
  return SymMatrix{std::move(m)};
}

PsdMatrix PsdMatrix::from(SymMatrix m, double rel_tol) {
  require(rel_tol >= 0.0, "PsdMatrix: tolerance must be nonnegative");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.entries, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, "PsdMatrix: eigenvalue computation failed");
  const double lambda_max = m.dim() > 0 ? es.eigenvalues().maxCoeff() : 0.0;
  const double lambda_min = m.dim() > 0 ? es.eigenvalues().minCoeff() : 0.0;
  const double tol = rel_tol * std::max(1.0, lambda_max);
  if (lambda_min < -tol) {
    std::ostringstream os;
    os << "PsdMatrix: not PSD, smallest eigenvalue " << lambda_min
       << " is below -" << tol;
    throw std::invalid_argument(os.str());
  }
  if (m.dim() > 0 && m.entries.diagonal().minCoeff() < -tol) {
    throw std::invalid_argument("PsdMatrix: negative diagonal entry");
  }
  return PsdMatrix{std::move(m), tol};
}

WeightedCloud WeightedCloud::from(Matrix points, Vector weights) {
  require(points.rows() == weights.size(), "WeightedCloud: point/weight count mismatch");
  require(points.rows() > 0, "WeightedCloud: empty cloud");
  require(points.allFinite() && weights.allFinite(), "WeightedCloud: non-finite input");
  require(weights.minCoeff() >= 0.0, "WeightedCloud: negative weight");
  require(std::fabs(weights.sum() - 1.0) <= 1e-12, "WeightedCloud: weights must sum to 1");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (points.row(i).norm() > 1.0 + 1e-9) {
      std::ostringstream os;
      os << "WeightedCloud: row " << i << " has norm " << points.row(i).norm()
         << ", outside the unit ball";
      throw std::invalid_argument(os.str());
    }
  }
  return WeightedCloud{std::move(points), std::move(weights)};
}

WeightedCloud WeightedCloud::uniform(Matrix points) {
  const Eigen::Index n = points.rows();
  require(n > 0, "WeightedCloud: empty cloud");
  return from(std::move(points), Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

double frobenius_norm(const SymMatrix& m) { return m.entries.norm(); }

SymMatrix second_moment(const WeightedCloud& cloud) {
  Matrix m = cloud.points.transpose() * cloud.weights.asDiagonal() * cloud.points;
  // Symmetrize away the last-bit asymmetry of the triple product.
  m = ((m + m.transpose()) / 2.0).eval();
  return SymMatrix{std::move(m)};
}

WeightedCloud gram_factorize(const PsdMatrix& a, double diag_cap) {
  const Eigen::Index n = a.dim();
  require(n > 0, "gram_factorize: empty matrix");
  const Vector diag = a.base.entries.diagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (diag(i) > diag_cap + 1e-9) {
      std::ostringstream os;
      os << "gram_factorize: diagonal entry " << i << " = " << diag(i)
         << " exceeds cap " << diag_cap;
      throw std::invalid_argument(os.str());
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(a.base.entries);
  require(es.info() == Eigen::Success, "gram_factorize: eigendecomposition failed");
  const Vector& lambda = es.eigenvalues();
  if (lambda.minCoeff() < -a.eig_floor_tol) {
    std::ostringstream os;
    os << "gram_factorize: not PSD, eigenvalue " << lambda.minCoeff()
       << " below -" << a.eig_floor_tol;
    throw std::invalid_argument(os.str());
  }

  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda(i) > a.eig_floor_tol) ++rank;
  }
  // Eigenvalues are ascending, so the retained ones are the trailing block.
  Matrix points(n, std::max<Eigen::Index>(rank, 1));
  points.setZero();
  for (Eigen::Index c = 0; c < rank; ++c) {
    const Eigen::Index src = n - rank + c;
    points.col(c) = es.eigenvectors().col(src) * std::sqrt(lambda(src));
  }
  // Round-off can leave ||x_i||^2 a hair above A_ii <= 1; rescale those rows
  // so the unit-ball invariant holds exactly.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = points.row(i).norm();
    if (norm > 1.0) points.row(i) /= norm;
  }
  return WeightedCloud::uniform(std::move(points));
}

}  // namespace gramcut
