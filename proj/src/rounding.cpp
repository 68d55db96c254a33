#include "gramcut/rounding.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "gramcut/parallel.hpp"
#include "gramcut/rng.hpp"

namespace gramcut {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline double sign_plus(double v) { return v >= 0.0 ? 1.0 : -1.0; }

BitPattern make_pattern(std::int32_t bits) {
  BitPattern p;
  p.bits = bits;
  p.words.assign(static_cast<std::size_t>((bits + 63) / 64), 0);
  return p;
}

// Per-point rounding scores: scores(k, i) = <x_i, g_k> + lift_i * scalar(k, i).
Matrix rounding_scores(const LiftedCloud& lifted, const DirectionSet& dirs) {
  require(dirs.d == lifted.base.dim(), "sign rounding: dimension mismatch");
  require(dirs.lift_scalars.has_value(), "sign rounding: lift scalars missing");
  require(dirs.lift_scalars->rows() == dirs.r && dirs.lift_scalars->cols() == lifted.base.size(),
          "sign rounding: lift scalar shape mismatch");
  Matrix scores = dirs.values * lifted.base.points.transpose();
  scores += *dirs.lift_scalars * lifted.lift_norms.asDiagonal();
  return scores;
}

}  // namespace

bool BitPattern::operator<(const BitPattern& other) const {
  if (bits != other.bits) return bits < other.bits;
  for (std::size_t w = words.size(); w-- > 0;) {
    if (words[w] != other.words[w]) return words[w] < other.words[w];
  }
  return false;
}

std::size_t BitPatternHash::operator()(const BitPattern& p) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(p.bits);
  for (auto w : p.words) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h = mix64(h);
  }
  return static_cast<std::size_t>(h);
}

double GrothendieckEstimate::mean_sign_product() const {
  std::int64_t sum = 0;
  for (auto s : sign_products) sum += s;
  return static_cast<double>(sum) / static_cast<double>(sign_products.size());
}

DirectionSet sample_directions(std::int32_t r, std::int32_t d, std::uint64_t seed,
                               std::optional<Eigen::Index> lift_count) {
  require(r >= 1, "sample_directions: r must be positive");
  require(d >= 1, "sample_directions: d must be positive");
  const std::int64_t cells = static_cast<std::int64_t>(r) * d;
  const std::int64_t lift_cells =
      lift_count ? static_cast<std::int64_t>(r) * *lift_count : 0;
  if (cells > (1LL << 31) || lift_cells > (1LL << 31))
    throw std::invalid_argument("sample_directions: r*d too large");

  CounterRng rng(seed);
  DirectionSet dirs;
  dirs.r = r;
  dirs.d = d;
  dirs.seed = seed;
  dirs.values.resize(r, d);
  for (std::int32_t k = 0; k < r; ++k)
    for (std::int32_t j = 0; j < d; ++j) dirs.values(k, j) = rng.next_normal();
  if (lift_count) {
    // Same stream continued, so `values` is unchanged by the lift request.
    Matrix scalars(r, *lift_count);
    for (std::int32_t k = 0; k < r; ++k)
      for (Eigen::Index i = 0; i < *lift_count; ++i) scalars(k, i) = rng.next_normal();
    dirs.lift_scalars = std::move(scalars);
  }
  return dirs;
}

GrothendieckEstimate grothendieck_estimate(const Vector& x, const Vector& x2,
                                           const DirectionSet& dirs) {
  require(x.size() == dirs.d && x2.size() == dirs.d, "grothendieck_estimate: dimension mismatch");
  require(std::fabs(x.norm() - 1.0) <= 1e-9 && std::fabs(x2.norm() - 1.0) <= 1e-9,
          "grothendieck_estimate: inputs must be unit vectors");
  const Vector s1 = dirs.values * x;
  const Vector s2 = dirs.values * x2;
  GrothendieckEstimate est;
  est.sign_products.resize(static_cast<std::size_t>(dirs.r));
  std::int64_t sum = 0;
  for (std::int32_t k = 0; k < dirs.r; ++k) {
    const double xi = sign_plus(s1(k)) * sign_plus(s2(k));
    est.sign_products[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(xi);
    sum += static_cast<std::int64_t>(xi);
  }
  est.value = std::sin(M_PI_2 * static_cast<double>(sum) / static_cast<double>(dirs.r));
  return est;
}

LiftedCloud lift(const WeightedCloud& cloud) {
  Vector lift_norms(cloud.size());
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    lift_norms(i) = std::sqrt(std::max(0.0, 1.0 - cloud.points.row(i).squaredNorm()));
  }
  return LiftedCloud{cloud, std::move(lift_norms)};
}

std::vector<BitPattern> sign_patterns(const LiftedCloud& lifted, const DirectionSet& dirs) {
  const Matrix scores = rounding_scores(lifted, dirs);
  const Eigen::Index n = lifted.base.size();
  std::vector<BitPattern> patterns(static_cast<std::size_t>(n), make_pattern(dirs.r));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::int32_t k = 0; k < dirs.r; ++k) {
      patterns[static_cast<std::size_t>(i)].set(k, scores(k, i) >= 0.0);
    }
  }
  return patterns;
}

Partition sign_partition(const LiftedCloud& lifted, const DirectionSet& dirs) {
  const auto patterns = sign_patterns(lifted, dirs);
  std::unordered_map<BitPattern, std::int32_t, BitPatternHash> ids;
  std::vector<std::int32_t> assignments(patterns.size());
  std::int32_t next = 0;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(patterns[i], next);
    if (inserted) ++next;
    assignments[i] = it->second;
  }
  return Partition{std::move(assignments), next};
}

BestPartitionResult best_partition(const WeightedCloud& cloud, std::int32_t r,
                                   std::int32_t trials, std::uint64_t seed) {
  require(trials >= 1, "best_partition: trials must be positive");
  const LiftedCloud lifted = lift(cloud);
  // The point Gram matrix is trial-independent; amortize it across trials.
  const Matrix gram = cloud.points * cloud.points.transpose();

  std::vector<TrialStats> stats(static_cast<std::size_t>(trials));
  std::vector<Partition> partitions(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    const DirectionSet dirs = sample_directions(r, cloud.dim(), trial_seed, cloud.size());
    Partition p = sign_partition(lifted, dirs);
    const CondExp ce = conditional_expectation(cloud, p);
    stats[t] = TrialStats{trial_seed, p.k, increment_via_pairs_gram(gram, cloud.weights, ce),
                          covariance_loss(cloud, ce)};
    partitions[t] = std::move(p);
  });

  std::size_t best = 0;
  for (std::size_t t = 1; t < stats.size(); ++t) {
    if (stats[t].increment < stats[best].increment) best = t;
  }
  BestPartitionResult result{std::move(partitions[best]), CondExp{}, best, std::move(stats)};
  result.cond_exp = conditional_expectation(cloud, result.partition);
  return result;
}

}  // namespace gramcut
