#include "invforge/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace invforge {
namespace parallel {

namespace {

int detect_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("INVFORGE_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
            if (cap >= 1 && cap > n) n = cap;
        } catch (...) {
            // unparsable value: keep the default
        }
    }
    return n < 1 ? 1 : n;
}

} // namespace

int thread_count() {
    static const int n = detect_threads();
    return n;
}

bool enabled() {
#ifdef _OPENMP
    return thread_count() > 1;
#else
    return false;
#endif
}

} // namespace parallel
} // namespace invforge
