#include "ample/linalg/parallel.hpp"

#include <atomic>

#include <omp.h>

namespace ample::linalg {

namespace {
std::atomic<std::size_t> g_threshold{std::size_t{1} << 15};
}

std::size_t parallel_threshold() { return g_threshold.load(std::memory_order_relaxed); }

void set_parallel_threshold(std::size_t work) { g_threshold.store(work, std::memory_order_relaxed); }

int available_threads() { return omp_get_max_threads(); }

}  // namespace ample::linalg
