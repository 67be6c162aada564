#include <sstream>

#include "ample/homology/homology.hpp"
#include "ample/linalg/smith.hpp"

namespace ample::homology {

std::optional<FgAbelianGroup> as_group(const HomologyValue& v) {
  if (const auto* g = std::get_if<FgAbelianGroup>(&v.value)) return *g;
  const auto& verdict = std::get<ColimitVerdict>(v.value);
  if (const auto* st = std::get_if<abelian::Stabilized>(&verdict)) return st->group;
  return std::nullopt;
}

std::optional<bool> is_zero(const HomologyValue& v) {
  if (auto g = as_group(v)) return g->is_trivial();
  const auto& f = std::get<abelian::Formal>(std::get<ColimitVerdict>(v.value));
  if (f.unresolved) return std::nullopt;
  // A Formal verdict arises only from a non-surjective injective endomorphism.
  return false;
}

std::optional<std::size_t> rational_rank(const HomologyValue& v) {
  if (auto g = as_group(v)) return g->free_rank();
  const auto& f = std::get<abelian::Formal>(std::get<ColimitVerdict>(v.value));
  return f.rational_rank;
}

std::optional<bool> is_torsion_free(const HomologyValue& v) {
  if (auto g = as_group(v)) return g->is_torsion_free();
  const auto& f = std::get<abelian::Formal>(std::get<ColimitVerdict>(v.value));
  if (!f.torsion_resolved) return std::nullopt;
  return f.torsion_colimit.is_trivial();
}

std::string summary(const HomologyValue& v) {
  if (const auto* g = std::get_if<FgAbelianGroup>(&v.value)) return abelian::to_string(*g);
  return abelian::summary(std::get<ColimitVerdict>(v.value));
}

std::string describe(const HomologyValue& v) {
  std::string out = std::holds_alternative<FgAbelianGroup>(v.value) ? abelian::to_string(std::get<FgAbelianGroup>(v.value))
                                                                   : abelian::to_string(std::get<ColimitVerdict>(v.value));
  if (!v.provenance.empty()) out += "  <" + v.provenance + ">";
  return out;
}

std::optional<HomologyValue> HomologyResult::at(std::size_t p) const {
  if (p < degrees.size()) return degrees[p];
  switch (tail) {
    case TailKind::zero:
      return HomologyValue{FgAbelianGroup::trivial(), tail_reason};
    case TailKind::odd_periodic:
      return HomologyValue{p % 2 == 1 ? odd_tail_group : FgAbelianGroup::trivial(), tail_reason};
    case TailKind::unknown:
      break;
  }
  return std::nullopt;
}

bool HomologyResult::fully_certified() const {
  if (tail == TailKind::unknown) return false;
  for (const auto& d : degrees)
    if (!d) return false;
  return true;
}

IntMatrix SparseBoundary::to_dense() const {
  IntMatrix out(rows, cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns[c]) out(r, c) += static_cast<long>(v);
  return out;
}

void ChainComplexWindow::verify() const {
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    const IntMatrix composite = boundaries[i] * boundaries[i + 1];
    if (composite.is_zero()) continue;
    const IntMatrix& rels = chains[i].relations;
    if (rels.cols() == 0 || !linalg::LatticeSolver(rels).columns_in_span(composite))
      throw abelian::MalformedComplex("boundary composite d_" + std::to_string(p_min + i + 1) + " o d_" +
                                      std::to_string(p_min + i + 2) + " is not zero");
  }
}

abelian::HomologyPresentation ChainComplexWindow::homology_at(std::size_t p) const {
  if (p < p_min || p > p_max()) throw std::out_of_range("homology_at: degree outside the window");
  const std::size_t i = p - p_min;
  const abelian::PresentedGroup& middle = chains[i];
  abelian::GroupHom d_out{middle, abelian::PresentedGroup::free(0), IntMatrix(0, middle.generators)};
  if (i > 0) d_out = abelian::GroupHom{middle, chains[i - 1], boundaries[i - 1]};
  abelian::GroupHom d_in{abelian::PresentedGroup::free(0), middle, IntMatrix(middle.generators, 0)};
  if (i + 1 < chains.size()) d_in = abelian::GroupHom{chains[i + 1], middle, boundaries[i]};
  return abelian::homology_presented(d_in, d_out);
}

}  // namespace ample::homology
