#pragma once

#include <cstddef>
#include <functional>

namespace fracp {

/// Process-wide default worker count used by kernel assembly and operator
/// apply when no explicit count is passed. Starts at 1.
int default_threads();
void set_default_threads(int threads);

/// Runs body(begin, end) over a static partition of [0, count) into at most
/// `threads` contiguous chunks. The partition depends only on (count, threads).
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fracp
