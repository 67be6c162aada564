#include "ample/models/finite_groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ample/linalg/parallel.hpp"

namespace ample::models {

bool FiniteGroupoid::is_principal() const {
  for (std::size_t a = 0; a < arrows(); ++a)
    if (source[a] == range[a] && a != units[source[a]]) return false;
  return true;
}

FiniteGroupoid FiniteGroupoid::equivalence_relation(std::span<const std::size_t> classes) {
  FiniteGroupoid g;
  g.objects = classes.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t r = 0; r < classes.size(); ++r)
    for (std::size_t s = 0; s < classes.size(); ++s)
      if (classes[r] == classes[s]) {
        index[{r, s}] = g.source.size();
        g.range.push_back(r);
        g.source.push_back(s);
      }
  const std::size_t n = g.arrows();
  g.inverse.resize(n);
  g.units.resize(g.objects);
  g.products.assign(n * n, kNoArrow);
  for (std::size_t a = 0; a < n; ++a) {
    g.inverse[a] = index.at({g.source[a], g.range[a]});
    if (g.source[a] == g.range[a]) g.units[g.source[a]] = a;
    for (std::size_t b = 0; b < n; ++b)
      if (g.source[a] == g.range[b]) g.products[a * n + b] = index.at({g.range[a], g.source[b]});
  }
  return g;
}

FiniteGroupoid FiniteGroupoid::trivial() {
  const std::size_t one[] = {0};
  return equivalence_relation(one);
}

FiniteGroupoid FiniteGroupoid::pair(std::size_t points) {
  const std::vector<std::size_t> classes(points, 0);
  return equivalence_relation(classes);
}

FiniteGroupoid FiniteGroupoid::cyclic_group(std::size_t order) {
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  return group(table);
}

FiniteGroupoid FiniteGroupoid::group(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  FiniteGroupoid g;
  g.objects = 1;
  g.source.assign(n, 0);
  g.range.assign(n, 0);
  g.products.assign(n * n, kNoArrow);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw std::invalid_argument("group table is not square");
    for (std::size_t b = 0; b < n; ++b) g.products[a * n + b] = table[a][b];
  }
  std::size_t identity = kNoArrow;
  for (std::size_t e = 0; e < n && identity == kNoArrow; ++e) {
    bool is_identity = true;
    for (std::size_t x = 0; x < n && is_identity; ++x) is_identity = table[e][x] == x && table[x][e] == x;
    if (is_identity) identity = e;
  }
  g.units = {identity};
  g.inverse.assign(n, kNoArrow);
  if (identity != kNoArrow)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] == identity && table[b][a] == identity) g.inverse[a] = b;
  return g;
}

NerveLevel object_level(const FiniteGroupoid& g) {
  NerveLevel level;
  level.degree = 0;
  level.count = g.objects;
  level.cells.resize(g.objects);
  std::iota(level.cells.begin(), level.cells.end(), 0U);
  return level;
}

NerveLevel next_nerve_level(const FiniteGroupoid& g, const NerveLevel& below, const NerveOptions& options) {
  NerveLevel level;
  level.degree = below.degree + 1;
  if (below.degree == 0) {
    level.count = g.arrows();
    if (level.count > options.max_cells) throw NerveBudgetExceeded("nerve level 1 exceeds the cell budget");
    level.cells.resize(level.count);
    std::iota(level.cells.begin(), level.cells.end(), 0U);
    return level;
  }

  std::vector<std::vector<std::uint32_t>> by_range(g.objects);
  for (std::size_t a = 0; a < g.arrows(); ++a) by_range[g.range[a]].push_back(static_cast<std::uint32_t>(a));

  const std::size_t d = below.degree;
  std::vector<std::size_t> offsets(below.count + 1, 0);
  for (std::size_t i = 0; i < below.count; ++i)
    offsets[i + 1] = offsets[i] + by_range[g.source[below.cell(i)[d - 1]]].size();
  level.count = offsets.back();
  if (level.count > options.max_cells)
    throw NerveBudgetExceeded("nerve level " + std::to_string(level.degree) + " has " + std::to_string(level.count) +
                              " cells, over the budget of " + std::to_string(options.max_cells));
  level.cells.resize(level.count * level.degree);

  const auto n = static_cast<std::ptrdiff_t>(below.count);
  const bool go = linalg::worth_parallelizing(level.count * level.degree);
#pragma omp parallel for schedule(static) if (go)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto prefix = below.cell(i);
    const auto& tails = by_range[g.source[prefix[d - 1]]];
    std::uint32_t* out = level.cells.data() + offsets[i] * level.degree;
    for (std::uint32_t h : tails) {
      std::copy(prefix.begin(), prefix.end(), out);
      out[d] = h;
      out += level.degree;
    }
  }
  return level;
}

std::vector<NerveLevel> nerve_levels(const FiniteGroupoid& g, std::size_t max_degree, const NerveOptions& options) {
  std::vector<NerveLevel> levels;
  levels.reserve(max_degree + 1);
  levels.push_back(object_level(g));
  for (std::size_t n = 1; n <= max_degree; ++n) levels.push_back(next_nerve_level(g, levels.back(), options));
  return levels;
}

std::vector<std::size_t> face_map(const FiniteGroupoid& g, const NerveLevel& level, const NerveLevel& below,
                                  std::size_t i) {
  const std::size_t n = level.degree;
  if (n == 0 || i > n || below.degree + 1 != n) throw std::invalid_argument("face_map: bad degree or face index");
  std::vector<std::size_t> out(level.count);
  if (n == 1) {
    for (std::size_t k = 0; k < level.count; ++k) out[k] = i == 0 ? g.source[level.cells[k]] : g.range[level.cells[k]];
    return out;
  }

  const auto count = static_cast<std::ptrdiff_t>(level.count);
  const bool go = linalg::worth_parallelizing(level.count * n * 8);
#pragma omp parallel if (go)
  {
    std::vector<std::uint32_t> face(n - 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t kk = 0; kk < count; ++kk) {
      const auto k = static_cast<std::size_t>(kk);
      const auto cell = level.cell(k);
      if (i == 0) {
        std::copy(cell.begin() + 1, cell.end(), face.begin());
      } else if (i == n) {
        std::copy(cell.begin(), cell.end() - 1, face.begin());
      } else {
        std::copy(cell.begin(), cell.begin() + (i - 1), face.begin());
        face[i - 1] = static_cast<std::uint32_t>(g.product(cell[i - 1], cell[i]));
        std::copy(cell.begin() + (i + 1), cell.end(), face.begin() + i);
      }
      // Binary search in the lexicographically sorted level below.
      std::size_t lo = 0, hi = below.count;
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto probe = below.cell(mid);
        if (std::lexicographical_compare(probe.begin(), probe.end(), face.begin(), face.end())) lo = mid + 1;
        else hi = mid;
      }
      out[k] = lo;
    }
  }
  return out;
}

Nerve nerve(const FiniteGroupoid& g, std::size_t n, const NerveOptions& options) {
  std::vector<NerveLevel> levels = nerve_levels(g, n, options);
  Nerve result;
  if (n > 0) {
    for (std::size_t i = 0; i <= n; ++i) result.faces.push_back(face_map(g, levels[n], levels[n - 1], i));
  }
  result.level = std::move(levels[n]);
  return result;
}

std::optional<std::string> simplicial_identity_violation(const FiniteGroupoid& g, std::size_t max_degree,
                                                         const NerveOptions& options) {
  if (max_degree < 2) return std::nullopt;
  const std::vector<NerveLevel> levels = nerve_levels(g, max_degree, options);
  std::vector<std::vector<std::size_t>> lower;  // faces from level n-1 to n-2
  for (std::size_t i = 0; i <= 1; ++i) lower.push_back(face_map(g, levels[1], levels[0], i));
  for (std::size_t n = 2; n <= max_degree; ++n) {
    std::vector<std::vector<std::size_t>> upper;
    for (std::size_t i = 0; i <= n; ++i) upper.push_back(face_map(g, levels[n], levels[n - 1], i));
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (std::size_t x = 0; x < levels[n].count; ++x)
          if (lower[i][upper[j][x]] != lower[j - 1][upper[i][x]])
            return "level " + std::to_string(n) + ", cell " + std::to_string(x) + ": d_" + std::to_string(i) + " d_" +
                   std::to_string(j) + " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i);
    lower = std::move(upper);
  }
  return std::nullopt;
}

}  // namespace ample::models
