#include <algorithm>
#include <exception>

#include "ample/homology/homology.hpp"
#include "ample/linalg/parallel.hpp"

namespace ample::homology {

namespace {

using models::FiniteGroupoid;
using models::NerveLevel;

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;

void combine(SparseColumn& col) {
  std::sort(col.begin(), col.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < col.size();) {
    std::int64_t sum = 0;
    const std::uint32_t row = col[i].first;
    for (; i < col.size() && col[i].first == row; ++i) sum += col[i].second;
    if (sum != 0) col[out++] = {row, sum};
  }
  col.resize(out);
}

// Chain group in degree n with Z-module generators indexed by nerve cells.
abelian::PresentedGroup chain_group(std::size_t cells, const FgAbelianGroup& c) {
  return abelian::tensor_lattice(cells, c);
}

}  // namespace

SparseBoundary bar_boundary(const FiniteGroupoid& g, const NerveLevel& level, const NerveLevel& below) {
  const std::size_t n = level.degree;
  std::vector<std::vector<std::size_t>> faces(n + 1);
  for (std::size_t i = 0; i <= n; ++i) faces[i] = models::face_map(g, level, below, i);

  SparseBoundary d;
  d.rows = below.count;
  d.columns.resize(level.count);
  const bool go = linalg::worth_parallelizing(level.count * (n + 1));
#pragma omp parallel for schedule(static) if (go)
  for (std::size_t y = 0; y < level.count; ++y) {
    SparseColumn col;
    col.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      col.emplace_back(static_cast<std::uint32_t>(faces[i][y]), i % 2 == 0 ? 1 : -1);
    combine(col);
    d.columns[y] = std::move(col);
  }
  return d;
}

bool composite_is_zero(const SparseBoundary& lower, const SparseBoundary& upper) {
  if (upper.rows != lower.cols()) return false;
  bool ok = true;
  const bool go = linalg::worth_parallelizing(upper.cols() * 8);
#pragma omp parallel for schedule(static) reduction(&& : ok) if (go)
  for (std::size_t z = 0; z < upper.cols(); ++z) {
    SparseColumn acc;
    for (const auto& [mid, a] : upper.columns[z])
      for (const auto& [row, b] : lower.columns[mid]) acc.emplace_back(row, a * b);
    combine(acc);
    ok = ok && acc.empty();
  }
  return ok;
}

HomologyResult bar_homology(const FiniteGroupoid& g, const FgAbelianGroup& coefficients, std::size_t max_degree,
                            const EngineOptions& options) {
  std::vector<NerveLevel> levels;
  try {
    levels = models::nerve_levels(g, max_degree + 1, options.nerve);
  } catch (const models::NerveBudgetExceeded& e) {
    throw TruncationError(std::string("nerve too large for degree ") + std::to_string(max_degree) + ": " + e.what());
  }

  // sparse[n-1] is the boundary from level n to level n-1.
  std::vector<SparseBoundary> sparse;
  for (std::size_t n = 1; n <= max_degree + 1; ++n) sparse.push_back(bar_boundary(g, levels[n], levels[n - 1]));
  for (std::size_t n = 1; n < sparse.size(); ++n)
    if (!composite_is_zero(sparse[n - 1], sparse[n]))
      throw abelian::MalformedComplex("bar complex: d_" + std::to_string(n) + " o d_" + std::to_string(n + 1) +
                                      " is not zero");

  const std::size_t s = coefficients.cyclic_orders().size();
  for (const auto& d : sparse)
    if (d.rows * d.cols() * s * s > options.max_dense_entries)
      throw TruncationError("bar complex: boundary of size " + std::to_string(d.rows * s) + " x " +
                            std::to_string(d.cols() * s) + " exceeds the dense limit");

  ChainComplexWindow window;
  for (std::size_t n = 0; n <= max_degree + 1; ++n) window.chains.push_back(chain_group(levels[n].count, coefficients));
  for (const auto& d : sparse) window.boundaries.push_back(abelian::tensor_lift(d.to_dense(), coefficients));

  HomologyResult result;
  result.model_kind = "finite";
  result.coefficients = coefficients;
  result.degrees.resize(max_degree + 1);
  result.reliable_up_to = max_degree;
  result.metadata = models::GroupoidMetadata{g.is_principal(), true, true};

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (max_degree > 0 && linalg::available_threads() > 1)
  for (std::size_t p = 0; p <= max_degree; ++p) {
    try {
      const FgAbelianGroup h = abelian::canonicalize(window.homology_at(p).group);
      result.degrees[p] = HomologyValue{h, "bar complex, " + std::to_string(levels[p].count) + " cells in degree " +
                                               std::to_string(p)};
    } catch (...) {
#pragma omp critical(ample_bar_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (g.is_principal()) {
    // A principal finite groupoid is Morita equivalent to its orbit set.
    for (std::size_t p = 1; p <= max_degree; ++p)
      if (!as_group(*result.degrees[p])->is_trivial())
        throw std::logic_error("bar complex of a principal groupoid has nonzero H_" + std::to_string(p));
    result.tail = TailKind::zero;
    result.tail_reason = "principal finite groupoid: homology vanishes above degree 0";
  } else {
    result.tail = TailKind::unknown;
    result.tail_reason = "isotropy present: degrees above " + std::to_string(max_degree) + " were not computed";
  }
  return result;
}

}  // namespace ample::homology
