#include "gramcut/partition.hpp"

#include <stdexcept>
#include <unordered_map>

namespace gramcut {

Partition Partition::from(std::vector<std::int32_t> assignments) {
  if (assignments.empty()) throw std::invalid_argument("Partition: empty assignment");
  std::int32_t k = 0;
  for (auto id : assignments) k = std::max(k, id + 1);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (auto id : assignments) {
    if (id < 0) throw std::invalid_argument("Partition: negative part id");
    seen[static_cast<std::size_t>(id)] = true;
  }
  for (std::int32_t id = 0; id < k; ++id) {
    if (!seen[static_cast<std::size_t>(id)])
      throw std::invalid_argument("Partition: part ids are not dense");
  }
  return Partition{std::move(assignments), k};
}

Partition Partition::relabel(const std::vector<std::int32_t>& labels) {
  std::unordered_map<std::int32_t, std::int32_t> remap;
  std::vector<std::int32_t> dense(labels.size());
  std::int32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], next);
    if (inserted) ++next;
    dense[i] = it->second;
  }
  return Partition{std::move(dense), next};
}

}  // namespace gramcut
