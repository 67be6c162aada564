#pragma once

// Serial, deliberately plain versions of the parallel kernels. Tests compare
// the library against these; bench/ measures the gap.

#include <cstddef>
#include <vector>

#include "ample/linalg/smith.hpp"
#include "ample/models/finite_groupoid.hpp"

namespace ample::reference {

using linalg::IntMatrix;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Textbook Smith normal form: repeated row/column Euclid on the leading
/// entry, no pivot selection heuristics, no parallelism.
linalg::SnfDecomposition smith_normal_form(const IntMatrix& m);

/// All arrow n-tuples in lexicographic order, filtered for composability.
models::NerveLevel nerve_level(const models::FiniteGroupoid& g, std::size_t n);

/// d_i through a std::map lookup of the face tuple.
std::vector<std::size_t> face_map(const models::FiniteGroupoid& g, const models::NerveLevel& level,
                                  const models::NerveLevel& below, std::size_t i);

/// Dense alternating-sum boundary from level n to level n-1.
IntMatrix bar_boundary(const models::FiniteGroupoid& g, const models::NerveLevel& level,
                       const models::NerveLevel& below);

}  // namespace ample::reference
