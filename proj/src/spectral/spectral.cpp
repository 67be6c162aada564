#include "ample/spectral/spectral.hpp"

#include <tuple>

namespace ample::spectral {

namespace {

using homology::TailKind;

// Budget for classifying colimits quoted in published K-theory.
constexpr std::size_t kPublishedBudget = 32;

bool certified_zero(const HomologyValue& v) { return homology::is_zero(v).value_or(false); }

struct PublishedRanks {
  std::size_t k0 = 0;
  std::size_t k1 = 0;
  std::string k0_text;
  std::string k1_text;
};

std::pair<std::size_t, std::string> spec_rank(const models::KValueSpec& spec) {
  std::size_t rank = spec.finite_part.free_rank();
  std::vector<std::string> parts;
  for (const auto& c : spec.colimits) {
    const abelian::ColimitVerdict v = abelian::colimit_stabilize(c, kPublishedBudget);
    if (const auto* st = std::get_if<abelian::Stabilized>(&v)) rank += st->group.free_rank();
    else rank += std::get<abelian::Formal>(v).rational_rank;
    parts.push_back(abelian::summary(v));
  }
  if (!spec.finite_part.is_trivial() || parts.empty()) parts.push_back(abelian::to_string(spec.finite_part));
  std::string text = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) text += " + " + parts[i];
  return {rank, text};
}

PublishedRanks published_ranks(const models::PublishedKTheory& p) {
  PublishedRanks out;
  std::tie(out.k0, out.k0_text) = spec_rank(p.k0);
  std::tie(out.k1, out.k1_text) = spec_rank(p.k1);
  return out;
}

HypothesisCertificate base_certificate(const models::GroupoidMetadata& meta) {
  HypothesisCertificate cert;
  cert.stabilizers_torsion_free = *meta.stabilizers_torsion_free;
  cert.strong_baum_connes = *meta.strong_baum_connes;
  cert.amenable = *meta.amenable;
  return cert;
}

// Standing hypotheses; returns notes for each failure.
std::vector<std::string> check_guards(HypothesisCertificate& cert) {
  std::vector<std::string> notes;
  if (!cert.stabilizers_torsion_free) {
    cert.failed.push_back("stabilizers_torsion_free");
    notes.push_back(
        "stabilizers are not torsion-free: the spectral sequence converges to K_*(G x| P_A), not K_*(C*_r G); "
        "refusing to assemble K-theory of the reduced groupoid algebra");
  }
  if (cert.amenable && !cert.strong_baum_connes) {
    cert.failed.push_back("strong_baum_connes");
    notes.push_back("inconsistent metadata: amenable groupoids satisfy the strong Baum-Connes conjecture, "
                    "but strong_baum_connes is false");
  } else if (!cert.strong_baum_connes) {
    cert.failed.push_back("strong_baum_connes");
    notes.push_back("strong Baum-Connes not certified: K_*(G x| P_A) need not agree with K_*(C*_r G)");
  }
  if (!cert.amenable) {
    cert.failed.push_back("amenable");
    notes.push_back("amenability not certified: assembly is offered only for amenable groupoids");
  }
  return notes;
}

E2Page truncated_page(const HomologyResult& h) {
  E2Page page;
  for (const auto& d : h.degrees) {
    if (!d) break;
    page.columns.push_back(*d);
  }
  page.tail = TailKind::unknown;
  page.tail_reason = h.tail_reason;
  page.certified = false;
  return page;
}

}  // namespace

std::optional<HomologyValue> E2Page::entry(std::size_t p, std::size_t q) const {
  if (q % 2 == 1) return HomologyValue{FgAbelianGroup::trivial(), "odd row: K_1 of the coefficients vanishes"};
  if (p < columns.size()) return columns[p];
  if (!certified && tail == TailKind::unknown) return std::nullopt;
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

std::optional<std::size_t> E2Page::vanishing_above() const {
  if (!certified || tail != TailKind::zero) return std::nullopt;
  return columns.empty() ? 0 : columns.size() - 1;
}

std::string to_string(CollapseReason r) {
  switch (r) {
    case CollapseReason::vanishing_above_2:
      return "vanishing_above_2";
    case CollapseReason::vanishing_above_d_le_3:
      return "vanishing_above_d_le_3";
  }
  return "";
}

std::string to_string(RankCheck r) {
  switch (r) {
    case RankCheck::pass:
      return "pass";
    case RankCheck::fail:
      return "fail";
    case RankCheck::inconclusive:
      return "inconclusive";
  }
  return "";
}

std::size_t KGroup::rational_rank() const {
  std::size_t r = finite_part.free_rank();
  for (const auto& f : formal_parts) r += f.rational_rank;
  return r;
}

bool KGroup::resolved() const {
  for (const auto& f : formal_parts)
    if (f.unresolved) return false;
  return true;
}

KGroup direct_sum(const KGroup& a, const KGroup& b) {
  KGroup out{abelian::direct_sum(a.finite_part, b.finite_part), a.formal_parts};
  out.formal_parts.insert(out.formal_parts.end(), b.formal_parts.begin(), b.formal_parts.end());
  return out;
}

KGroup to_kgroup(const HomologyValue& v) {
  if (auto g = homology::as_group(v)) return KGroup{*g, {}};
  return KGroup{FgAbelianGroup::trivial(), {std::get<abelian::Formal>(std::get<abelian::ColimitVerdict>(v.value))}};
}

std::string to_string(const KGroup& k) {
  std::string out;
  for (const auto& f : k.formal_parts) out += (out.empty() ? "" : " + ") + abelian::summary(abelian::ColimitVerdict{f});
  if (!k.finite_part.is_trivial() || out.empty()) out += (out.empty() ? "" : " + ") + abelian::to_string(k.finite_part);
  return out;
}

E2Page build_e2(const HomologyResult& h) {
  if (h.tail == TailKind::unknown)
    throw E2Refused("homology is not certified above degree " + std::to_string(h.reliable_up_to) + " (" + h.tail_reason +
                    "); no vanishing bound or periodic marker");
  E2Page page;
  for (std::size_t p = 0; p < h.degrees.size(); ++p) {
    if (!h.degrees[p]) throw E2Refused("H_" + std::to_string(p) + " is unknown below the claimed vanishing bound");
    page.columns.push_back(*h.degrees[p]);
  }
  page.tail = h.tail;
  page.odd_tail_group = h.odd_tail_group;
  page.tail_reason = h.tail_reason;
  if (page.tail == TailKind::zero)
    while (page.columns.size() > 1 && certified_zero(page.columns.back())) page.columns.pop_back();
  return page;
}

std::optional<long> euler_rank(const HomologyResult& h) {
  if (h.tail == TailKind::unknown) return std::nullopt;
  if (h.tail == TailKind::odd_periodic && h.odd_tail_group.free_rank() != 0) return std::nullopt;
  long total = 0;
  for (std::size_t p = 0; p < h.degrees.size(); ++p) {
    if (!h.degrees[p]) return std::nullopt;
    const auto r = homology::rational_rank(*h.degrees[p]);
    if (!r) return std::nullopt;
    total += (p % 2 == 0 ? 1 : -1) * static_cast<long>(*r);
  }
  return total;
}

std::vector<std::string> published_mismatch(const HomologyResult& h) {
  std::vector<std::string> notes;
  if (!h.published) return notes;
  const PublishedRanks pub = published_ranks(*h.published);
  const std::string quoted = "published K_0 = " + pub.k0_text + ", K_1 = " + pub.k1_text +
                             (h.published->source.empty() ? "" : " (" + h.published->source + ")");
  const long published_difference = static_cast<long>(pub.k0) - static_cast<long>(pub.k1);
  if (const auto constraint = euler_rank(h); constraint && *constraint != published_difference)
    notes.push_back(quoted + " gives rank K_0 - rank K_1 = " + std::to_string(published_difference) +
                    ", but any spectral sequence with this E^2 page converging to it forces " +
                    std::to_string(*constraint) + ": the homology cannot reproduce the published K-theory");

  std::size_t even_rank = 0;
  bool even_known = true;
  for (std::size_t p = 0; p < h.degrees.size(); p += 2) {
    const auto r = h.degrees[p] ? homology::rational_rank(*h.degrees[p]) : std::nullopt;
    if (!r) even_known = false;
    else even_rank += *r;
  }
  if (even_known && h.tail != TailKind::unknown && even_rank != pub.k0)
    notes.push_back("even-degree homology has rational rank " + std::to_string(even_rank) + " while published K_0 has " +
                    std::to_string(pub.k0));
  if (h.tail == TailKind::odd_periodic && pub.k1 == 0 && h.published->k1.finite_part.is_trivial() &&
      h.published->k1.colimits.empty())
    notes.push_back("odd-degree homology is " + abelian::to_string(h.odd_tail_group) +
                    " in infinitely many degrees while published K_1 = 0");
  return notes;
}

KTheoryVerdict assemble_k_theory(const HomologyResult& h, const models::GroupoidMetadata& meta,
                                 const AssemblyOptions& options) {
  std::vector<std::string> missing;
  if (!meta.stabilizers_torsion_free) missing.push_back("stabilizers_torsion_free");
  if (!meta.strong_baum_connes) missing.push_back("strong_baum_connes");
  if (!meta.amenable) missing.push_back("amenable");
  if (!missing.empty()) {
    std::string msg = "groupoid metadata missing:";
    for (const auto& m : missing) msg += " " + m;
    throw MissingMetadata(msg + "; K-theory hypotheses cannot be checked");
  }

  HypothesisCertificate cert = base_certificate(meta);
  Indeterminate ind;
  ind.rank_constraint = euler_rank(h);
  try {
    ind.page = build_e2(h);
  } catch (const E2Refused& e) {
    ind.page = truncated_page(h);
    ind.notes.push_back(std::string("E^2 page refused: ") + e.what());
  }

  auto finish = [&](std::vector<std::string> extra) {
    ind.notes.insert(ind.notes.end(), extra.begin(), extra.end());
    const auto mismatch = published_mismatch(h);
    ind.notes.insert(ind.notes.end(), mismatch.begin(), mismatch.end());
    ind.certificate = cert;
    return KTheoryVerdict{ind};
  };

  auto guard_notes = check_guards(cert);
  if (!guard_notes.empty()) {
    ind.guard_refusal = true;
    return finish(std::move(guard_notes));
  }
  if (!ind.page.certified) return finish({});

  const auto top = ind.page.vanishing_above();
  if (!top)
    return finish({"homology is nonzero in infinitely many degrees; no collapse criterion applies and higher "
                   "differentials are not computed"});

  const auto column = [&](std::size_t p) { return *ind.page.entry(p, 0); };
  const auto h2_free = homology::is_torsion_free(column(2));
  cert.extension_free = h2_free;

  if (*top <= 2) {
    cert.collapse_reason = CollapseReason::vanishing_above_2;
    if (!h2_free) return finish({"torsion of H_2 is not resolved; extension freeness undecided"});
    if (!*h2_free)
      return finish({"collapse holds but H_2 = " + homology::summary(column(2)) +
                     " has torsion: K_0 is an extension 0 -> H_0 -> K_0 -> H_2 -> 0 that may not split; "
                     "K_1 = H_1 = " + homology::summary(column(1)) + " is unaffected"});
    return Assembled{direct_sum(to_kgroup(column(0)), to_kgroup(column(2))), to_kgroup(column(1)), cert};
  }
  if (*top == 3) {
    if (!options.assert_collapse_d3)
      return finish({"H_3 = " + homology::summary(column(3)) +
                     " is nonzero; the d <= 3 collapse rule is opt-in and was not asserted"});
    const auto h3_free = homology::is_torsion_free(column(3));
    if (!h2_free || !*h2_free || !h3_free || !*h3_free)
      return finish({"d <= 3 collapse asserted, but it requires torsion-free H_2 and H_3"});
    cert.collapse_reason = CollapseReason::vanishing_above_d_le_3;
    return Assembled{direct_sum(to_kgroup(column(0)), to_kgroup(column(2))),
                     direct_sum(to_kgroup(column(1)), to_kgroup(column(3))), cert};
  }
  return finish({"homology is nonzero in degree " + std::to_string(*top) +
                 "; higher differentials are not computed, so collapse cannot be certified"});
}

RankCheck euler_rank_check(const HomologyResult& h, const KTheoryVerdict& k) {
  const auto* a = std::get_if<Assembled>(&k);
  if (!a || !a->k0.resolved() || !a->k1.resolved()) return RankCheck::inconclusive;
  for (const auto& d : h.degrees)
    if (d)
      if (const auto* v = std::get_if<abelian::ColimitVerdict>(&d->value))
        if (const auto* f = std::get_if<abelian::Formal>(v); f && f->unresolved) return RankCheck::inconclusive;
  const auto constraint = euler_rank(h);
  if (!constraint) return RankCheck::inconclusive;
  const long lhs = static_cast<long>(a->k0.rational_rank()) - static_cast<long>(a->k1.rational_rank());
  return lhs == *constraint ? RankCheck::pass : RankCheck::fail;
}

}  // namespace ample::spectral
