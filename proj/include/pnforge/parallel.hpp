#pragma once

#include <cstddef>
#include <functional>

namespace pnforge {

/// Worker count: hardware concurrency, capped by PNFORGE_THREADS if set.
unsigned thread_count();

/// Runs body(k) for k in [0, n) on up to thread_count() threads. Iterations
/// must be independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pnforge
