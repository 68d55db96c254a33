#pragma once

#include <cstddef>
#include <functional>

namespace gramcut {

// Thread budget: GRAMCUT_THREADS when set (min 1), hardware concurrency otherwise.
int thread_cap();

// Runs body(i) for i in [0, count) across at most thread_cap() threads.
// Iterations must be independent; results keyed by i stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gramcut
