#pragma once

#include <cstddef>

namespace ample::linalg {

// Work-size cutoff below which the OpenMP kernels run on the calling thread.
// Counted in scalar entry updates; small boundary matrices dominate in
// practice and thread startup outweighs the work for them.
std::size_t parallel_threshold();
void set_parallel_threshold(std::size_t work);

inline bool worth_parallelizing(std::size_t work) { return work >= parallel_threshold(); }

int available_threads();

}  // namespace ample::linalg
