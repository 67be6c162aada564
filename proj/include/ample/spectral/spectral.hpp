#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ample/homology/homology.hpp"

namespace ample::spectral {

using abelian::FgAbelianGroup;
using homology::HomologyResult;
using homology::HomologyValue;

/// E^2 page for constant coefficients: E^2_{p,q} = H_p for even q and 0 for
/// odd q. Stored as the homology columns plus the tail rule; trailing
/// certified zeros are trimmed.
struct E2Page {
  std::vector<HomologyValue> columns;
  homology::TailKind tail = homology::TailKind::zero;
  FgAbelianGroup odd_tail_group;
  std::string tail_reason;
  // False for a page carried by a verdict after build_e2 refused; such a
  // page lists what was computed and nothing beyond.
  bool certified = true;

  std::optional<HomologyValue> entry(std::size_t p, std::size_t q) const;
  /// Degree above which every column is certified zero; nullopt when the
  /// homology is nonzero in infinitely many degrees or uncertified.
  std::optional<std::size_t> vanishing_above() const;
};

class E2Refused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingMetadata : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CollapseReason { vanishing_above_2, vanishing_above_d_le_3 };
std::string to_string(CollapseReason r);

struct HypothesisCertificate {
  bool stabilizers_torsion_free = false;
  bool strong_baum_connes = false;
  bool amenable = false;
  std::optional<CollapseReason> collapse_reason;
  // H_2 torsion-free; nullopt when not decided.
  std::optional<bool> extension_free;
  std::vector<std::string> failed;
};

/// A K-group as a finitely generated part plus non-finitely-generated colimit summands.
struct KGroup {
  FgAbelianGroup finite_part;
  std::vector<abelian::Formal> formal_parts;

  std::size_t rational_rank() const;
  bool resolved() const;
  friend bool operator==(const KGroup&, const KGroup&) = default;
};
KGroup direct_sum(const KGroup& a, const KGroup& b);
KGroup to_kgroup(const HomologyValue& v);
std::string to_string(const KGroup& k);

struct Assembled {
  KGroup k0;
  KGroup k1;
  HypothesisCertificate certificate;
};

struct Indeterminate {
  E2Page page;
  // rank K0 - rank K1 forced by convergence; nullopt when not finite.
  std::optional<long> rank_constraint;
  std::vector<std::string> notes;
  HypothesisCertificate certificate;
  // A standing hypothesis failed (as opposed to a missing collapse criterion).
  bool guard_refusal = false;
};

using KTheoryVerdict = std::variant<Assembled, Indeterminate>;

struct AssemblyOptions {
  // Opt in to the d <= 3 collapse rule: vanishing above 3 with H_2 and H_3 torsion-free.
  bool assert_collapse_d3 = false;
};

/// Refuses (E2Refused) when some degree is unknown or the tail is not certified.
E2Page build_e2(const HomologyResult& h);

/// Sum over p of (-1)^p rank H_p; nullopt if infinitely many degrees contribute.
std::optional<long> euler_rank(const HomologyResult& h);

KTheoryVerdict assemble_k_theory(const HomologyResult& h, const models::GroupoidMetadata& meta,
                                 const AssemblyOptions& options = {});

enum class RankCheck { pass, fail, inconclusive };
std::string to_string(RankCheck r);

RankCheck euler_rank_check(const HomologyResult& h, const KTheoryVerdict& k);

/// Notes comparing the homology with K-theory quoted in a fixture; empty when
/// none is quoted or no contradiction is found.
std::vector<std::string> published_mismatch(const HomologyResult& h);

}  // namespace ample::spectral
