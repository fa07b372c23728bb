#pragma once

#include <cstddef>
#include <functional>

namespace floqsim {

/// Sets the worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n). Each index is handled by exactly one
/// worker; callers write results into preallocated slots so output does not
/// depend on the number of threads. The first exception thrown is rethrown.
/// Calls made from inside a worker run inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace floqsim
