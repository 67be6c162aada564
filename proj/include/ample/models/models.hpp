#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ample/abelian/colimit.hpp"
#include "ample/abelian/fg_group.hpp"
#include "ample/linalg/int_matrix.hpp"
#include "ample/models/finite_groupoid.hpp"

namespace ample::models {

using abelian::FgAbelianGroup;
using abelian::StationaryColimit;
using linalg::IntMatrix;
using linalg::Integer;

/// Shift of finite type given by a square nonnegative adjacency matrix.
struct SftModel {
  IntMatrix adjacency;

  friend bool operator==(const SftModel&, const SftModel&) = default;
};

/// Rank-k Deaconu-Renault data: k pairwise commuting nonnegative square matrices.
struct DrModel {
  std::vector<IntMatrix> matrices;

  std::size_t rank() const { return matrices.size(); }
  std::size_t size() const { return matrices.empty() ? 0 : matrices.front().rows(); }

  friend bool operator==(const DrModel&, const DrModel&) = default;
};

/// Bratteli diagram. levels[j] maps Z^(vertices at level j) to Z^(vertices at
/// level j+1), so cols(levels[j+1]) == rows(levels[j]). The optional tail block
/// repeats forever after the listed levels.
struct BratteliModel {
  std::vector<IntMatrix> levels;
  std::vector<IntMatrix> tail;

  friend bool operator==(const BratteliModel&, const BratteliModel&) = default;
};

enum class StabilizerType { torsion_free, dihedral };

/// Odometer on lim Z/(q_1 ... q_j); the multiplier sequence is prefix followed
/// by `period` repeated forever.
struct OdometerModel {
  std::vector<Integer> prefix;
  std::vector<Integer> period;
  StabilizerType stabilizers = StabilizerType::torsion_free;

  Integer multiplier(std::size_t index) const;

  friend bool operator==(const OdometerModel&, const OdometerModel&) = default;
};

struct GroupoidMetadata {
  std::optional<bool> stabilizers_torsion_free;
  std::optional<bool> strong_baum_connes;
  std::optional<bool> amenable;

  bool complete() const { return stabilizers_torsion_free && strong_baum_connes && amenable; }

  friend bool operator==(const GroupoidMetadata&, const GroupoidMetadata&) = default;
};

using FixtureValue = std::variant<FgAbelianGroup, StationaryColimit>;

enum class FixtureTail { zero, unknown, odd_periodic };

/// A group given as a finitely generated part plus stationary colimit summands.
struct KValueSpec {
  FgAbelianGroup finite_part;
  std::vector<StationaryColimit> colimits;

  friend bool operator==(const KValueSpec&, const KValueSpec&) = default;
};

/// K-theory quoted from the literature for a fixture, kept for comparison only.
struct PublishedKTheory {
  KValueSpec k0;
  KValueSpec k1;
  std::string source;

  friend bool operator==(const PublishedKTheory&, const PublishedKTheory&) = default;
};

/// Homology supplied directly: degrees 0..groups.size()-1 are explicit; beyond
/// them the tail rule applies (odd_periodic: odd degrees are odd_group, even
/// degrees vanish).
struct HomologyFixture {
  std::string name;
  std::vector<FixtureValue> groups;
  FixtureTail tail = FixtureTail::zero;
  FgAbelianGroup odd_group;
  GroupoidMetadata metadata;
  std::optional<PublishedKTheory> published;

  friend bool operator==(const HomologyFixture&, const HomologyFixture&) = default;
};

using Model = std::variant<FiniteGroupoid, SftModel, DrModel, BratteliModel, OdometerModel, HomologyFixture>;

/// "finite", "sft", "dr", "bratteli", "odometer", "fixture".
std::string kind_name(const Model& m);

struct ValidationIssue {
  std::string location;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

std::vector<ValidationIssue> check(const Model& m);
/// Throws ValidationError listing every violated invariant.
void validate(const Model& m);

/// Irreducibility of the adjacency graph (recorded, never required).
bool is_irreducible(const SftModel& m);
DrModel as_dr(const SftModel& m);

/// Hypothesis flags that follow from the kind of presentation. Fixtures carry
/// their own metadata.
GroupoidMetadata derived_metadata(const Model& m);

}  // namespace ample::models
