#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ample::models {

inline constexpr std::size_t kNoArrow = std::numeric_limits<std::size_t>::max();

/// A groupoid with finitely many objects and arrows, given by explicit tables.
///
/// Arrows g, h are composable (product g h) when source(g) == range(h); the
/// product then has range(g) and source(h).
struct FiniteGroupoid {
  std::size_t objects = 0;
  std::vector<std::size_t> source;
  std::vector<std::size_t> range;
  std::vector<std::size_t> inverse;   // kNoArrow where missing
  std::vector<std::size_t> units;     // one per object
  std::vector<std::size_t> products;  // arrows x arrows, kNoArrow where undefined

  std::size_t arrows() const { return source.size(); }
  bool composable(std::size_t g, std::size_t h) const { return source[g] == range[h]; }
  std::size_t product(std::size_t g, std::size_t h) const { return products[g * arrows() + h]; }

  /// All isotropy groups trivial.
  bool is_principal() const;

  /// Principal groupoid of an equivalence relation; classes[i] labels point i.
  static FiniteGroupoid equivalence_relation(std::span<const std::size_t> classes);
  static FiniteGroupoid trivial();
  static FiniteGroupoid pair(std::size_t points);
  static FiniteGroupoid cyclic_group(std::size_t order);
  /// One-object groupoid from a Cayley table; element 0 need not be the identity.
  static FiniteGroupoid group(const std::vector<std::vector<std::size_t>>& table);

  friend bool operator==(const FiniteGroupoid&, const FiniteGroupoid&) = default;
};

/// Composable n-tuples (g_1, ..., g_n) in lexicographic order of arrow
/// indices. Level 0 holds the objects.
struct NerveLevel {
  std::size_t degree = 0;
  std::size_t count = 0;
  std::vector<std::uint32_t> cells;  // count * max(degree, 1) entries

  std::size_t stride() const { return degree == 0 ? 1 : degree; }
  std::span<const std::uint32_t> cell(std::size_t i) const { return {cells.data() + i * stride(), stride()}; }
};

class NerveBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NerveOptions {
  std::size_t max_cells = std::size_t{1} << 22;
};

/// Builds level `degree` from the level below (degree >= 1).
NerveLevel next_nerve_level(const FiniteGroupoid& g, const NerveLevel& below, const NerveOptions& options = {});
NerveLevel object_level(const FiniteGroupoid& g);

/// Levels 0..max_degree.
std::vector<NerveLevel> nerve_levels(const FiniteGroupoid& g, std::size_t max_degree, const NerveOptions& options = {});

/// Face map d_i: level -> below as an index map. d_0 drops the first arrow,
/// d_i (0 < i < n) composes slots i and i+1, d_n drops the last; on level 1,
/// d_0 = source and d_1 = range.
std::vector<std::size_t> face_map(const FiniteGroupoid& g, const NerveLevel& level, const NerveLevel& below,
                                  std::size_t i);

/// One nerve level with all of its face maps.
struct Nerve {
  NerveLevel level;
  std::vector<std::vector<std::size_t>> faces;  // faces[i] = d_i, empty at level 0
};

Nerve nerve(const FiniteGroupoid& g, std::size_t n, const NerveOptions& options = {});

/// Checks d_i d_j = d_{j-1} d_i (i < j) on levels 2..max_degree; returns a
/// description of the first violation.
std::optional<std::string> simplicial_identity_violation(const FiniteGroupoid& g, std::size_t max_degree,
                                                         const NerveOptions& options = {});

}  // namespace ample::models
