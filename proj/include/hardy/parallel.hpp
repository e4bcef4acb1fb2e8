#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count: HARDY_THREADS if set to a positive integer, else all hardware threads.
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Callers write results
/// into slot i so the assembled output is independent of scheduling. The first exception
/// thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hardy
