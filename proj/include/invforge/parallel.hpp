#ifndef INVFORGE_PARALLEL_HPP
#define INVFORGE_PARALLEL_HPP

#include <cstddef>

namespace invforge {

// Worker-count control for the OpenMP kernels.  The INVFORGE_THREADS
// environment variable caps parallelism; unset means "use all cores".
// A value of 1 forces the serial paths everywhere.
namespace parallel {

int thread_count();

// True when OpenMP is compiled in and more than one worker is allowed.
bool enabled();

} // namespace parallel
} // namespace invforge

#endif
