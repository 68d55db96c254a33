#pragma once

#include <cstdint>
#include <vector>

namespace gramcut {

// Assignment of n points to k nonempty parts with dense ids 0..k-1.
struct Partition {
  std::vector<std::int32_t> assignments;
  std::int32_t k = 0;

  std::size_t size() const { return assignments.size(); }

  // Validates density: every id in 0..k-1 occurs at least once.
  static Partition from(std::vector<std::int32_t> assignments);
  // Relabels arbitrary labels into dense ids in first-occurrence order.
  static Partition relabel(const std::vector<std::int32_t>& labels);
};

}  // namespace gramcut
