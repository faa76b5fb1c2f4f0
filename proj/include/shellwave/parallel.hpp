#pragma once

#include <functional>

namespace shellwave {

/// Worker count used by parallel_for; 0 or negative selects 1.
void set_num_threads(int n);
int num_threads();

/// Reads SHELLWAVE_THREADS if set; returns the resulting worker count.
int init_threads_from_env();

/// Calls fn(i) for i in [0, n). Each index is handled by exactly one worker, so results written
/// to index-owned slots are independent of the worker count. Nested calls run serially.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace shellwave
