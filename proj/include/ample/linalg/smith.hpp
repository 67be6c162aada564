#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ample/abelian/fg_group.hpp"
#include "ample/linalg/int_matrix.hpp"

namespace ample::linalg {

/// U * M * V = D with U, V unimodular and D diagonal in Smith form:
/// d_1 | d_2 | ... | d_r, all d_i > 0, zeros after position r.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  // Present only when requested through SnfOptions::track_inverses.
  std::optional<IntMatrix> U_inverse;
  std::optional<IntMatrix> V_inverse;

  std::size_t rank() const;
  /// The nonzero diagonal entries d_1..d_r.
  std::vector<Integer> invariant_factors() const;
};

struct SnfOptions {
  bool track_inverses = false;
};

SnfDecomposition smith_normal_form(const IntMatrix& m, SnfOptions options = {});

/// Z^rows / (column span of m).
abelian::FgAbelianGroup cokernel(const IntMatrix& m);

/// Columns form a Z-basis of {v : m v = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Z-basis of the column span of m (full column rank result).
IntMatrix column_span_basis(const IntMatrix& m);

/// Z-basis of the saturation (Q-span intersected with Z^rows) of the column span.
IntMatrix saturation_basis(const IntMatrix& m);

/// Rank of m reduced modulo the prime p.
std::size_t rank_mod_p(const IntMatrix& m, unsigned long p);

/// Solves m x = b over the integers using one precomputed Smith form.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& m);

  std::optional<std::vector<Integer>> solve(std::span<const Integer> b) const;
  /// Solves column by column; throws std::domain_error if some column is not in the span.
  IntMatrix solve_columns(const IntMatrix& b) const;
  bool in_span(std::span<const Integer> b) const { return solve(b).has_value(); }
  bool columns_in_span(const IntMatrix& b) const;

 private:
  SnfDecomposition snf_;
  std::vector<Integer> factors_;
};

}  // namespace ample::linalg
