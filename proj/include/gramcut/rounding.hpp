#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gramcut/covariance.hpp"
#include "gramcut/linalg.hpp"
#include "gramcut/partition.hpp"

namespace gramcut {

// Sign pattern of one point against r directions, packed little-endian into
// 64-bit words. Hashable map key for cells and parts.
struct BitPattern {
  std::vector<std::uint64_t> words;
  std::int32_t bits = 0;

  bool operator==(const BitPattern&) const = default;
  bool get(std::int32_t k) const {
    return (words[static_cast<std::size_t>(k) / 64] >> (k % 64)) & 1u;
  }
  void set(std::int32_t k, bool v) {
    if (v) words[static_cast<std::size_t>(k) / 64] |= (1ULL << (k % 64));
  }
  // Lexicographic on (bits, words); deterministic iteration order for maps.
  bool operator<(const BitPattern& other) const;
};

struct BitPatternHash {
  std::size_t operator()(const BitPattern& p) const noexcept;
};

// r seeded Gaussian directions in R^d, plus optional per-point lift scalars
// (the extra coordinate randomness used when serving a lifted cloud).
struct DirectionSet {
  std::int32_t r = 0;
  std::int32_t d = 0;
  std::uint64_t seed = 0;
  Matrix values;                       // r x d, iid standard normal
  std::optional<Matrix> lift_scalars;  // r x n when present
};

// Ball-valued cloud together with the norm of the lift coordinate that makes
// each point a unit vector: lift^2 = 1 - ||x||^2.
struct LiftedCloud {
  WeightedCloud base;
  Vector lift_norms;
};

// Value of the hyperplane-rounding estimator together with the r sign
// products it averaged.
struct GrothendieckEstimate {
  double value = 0.0;
  std::vector<std::int8_t> sign_products;

  double mean_sign_product() const;
};

struct TrialStats {
  std::uint64_t seed = 0;
  std::int32_t k = 0;
  double increment = 0.0;  // exact pair statistic E(<X,X'> - <Y,Y'>)^2
  double loss = 0.0;       // ||E XX^T - E YY^T||_F
};

struct BestPartitionResult {
  Partition partition;
  CondExp cond_exp;
  std::size_t best_trial = 0;
  std::vector<TrialStats> trials;

  const TrialStats& best() const { return trials[best_trial]; }
};

// r x d iid standard normals, reproducible from (seed, r, d). When lift_count
// is set, also draws r x lift_count lift scalars from the same stream.
DirectionSet sample_directions(std::int32_t r, std::int32_t d, std::uint64_t seed,
                               std::optional<Eigen::Index> lift_count = std::nullopt);

// sin((pi/2) * mean_k sign<x,g_k> sign<x2,g_k>) for unit vectors; sign(0) = +1.
GrothendieckEstimate grothendieck_estimate(const Vector& x, const Vector& x2,
                                           const DirectionSet& dirs);

LiftedCloud lift(const WeightedCloud& cloud);

// Partition by identical sign patterns of the lifted points: bit k of point i
// is sign(<x_i, g_k> + lift_norms[i] * lift_scalars(k, i)). Part ids are dense
// in first-occurrence order; k <= min(n, 2^r).
Partition sign_partition(const LiftedCloud& lifted, const DirectionSet& dirs);

// Raw sign patterns of the same rounding, for callers that need the cells.
std::vector<BitPattern> sign_patterns(const LiftedCloud& lifted, const DirectionSet& dirs);

// Runs `trials` independent rounding realizations with seeds derived from the
// master seed and keeps the partition minimizing the covariance increment
// pair statistic. Trials may execute in parallel (GRAMCUT_THREADS caps it);
// the reduction is a stable min over trial index.
BestPartitionResult best_partition(const WeightedCloud& cloud, std::int32_t r,
                                   std::int32_t trials, std::uint64_t seed);

}  // namespace gramcut
