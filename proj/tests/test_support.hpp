#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "ample/abelian/fg_group.hpp"
#include "ample/linalg/int_matrix.hpp"

namespace ample::testing {

inline abelian::FgAbelianGroup G(const std::string& text) { return abelian::parse_group(text); }

inline linalg::IntMatrix M(const std::vector<std::vector<long>>& rows) { return linalg::IntMatrix::from_rows(rows); }

inline linalg::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  linalg::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

// Product of random elementary operations; determinant +-1 by construction.
inline linalg::IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  linalg::IntMatrix u = linalg::IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> mult(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const long q = mult(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += q * u(j, c);
  }
  return u;
}

inline std::filesystem::path model_path(const std::string& name) {
  const char* dir = std::getenv("AMPLE_MODELS");
  return std::filesystem::path(dir ? dir : "models") / name;
}

}  // namespace ample::testing
