#pragma once

#include <cstdint>

namespace gramcut {

// 64-bit finalizer used everywhere we need to turn a counter or a
// (seed, index) pair into an independent-looking stream.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Seed for sub-stream `index` of a master seed. Trial t of a seeded
// experiment uses derive_seed(master, t).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Counter-based uniform stream: draw i is mix64(seed + (i+1)*GAMMA), so the
// stream is a pure function of (seed, counter) and can be skipped ahead.
// Gaussians come from the inverse normal CDF applied to one uniform each
// (Acklam's rational approximation polished by one Halley step), so normal
// draw i is also a pure function of (seed, i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1).
  double next_unit() noexcept;
  // Standard normal.
  double next_normal() noexcept;
  // Laplace with location 0 and the given scale.
  double next_laplace(double scale) noexcept;

  void skip(std::uint64_t n) noexcept { counter_ += n; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Inverse standard normal CDF, accurate to ~1 ulp after refinement.
double normal_quantile(double p) noexcept;

}  // namespace gramcut
