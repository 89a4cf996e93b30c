#pragma once

#include <functional>

namespace bgg {

/// Upper bound on worker threads. Initialized from BGG_FORGE_THREADS when set,
/// otherwise from the hardware concurrency.
int max_threads();
void set_max_threads(int n);

/// Runs body(i) for i in [0, count) on up to max_threads() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace bgg
