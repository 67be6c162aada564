#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ample/abelian/colimit.hpp"
#include "ample/abelian/presented.hpp"
#include "ample/models/models.hpp"

namespace ample::homology {

using abelian::ColimitVerdict;
using abelian::FgAbelianGroup;
using linalg::IntMatrix;

/// H_p as either a finitely generated group or the verdict on a colimit.
struct HomologyValue {
  std::variant<FgAbelianGroup, ColimitVerdict> value;
  std::string provenance;
};

/// The finitely generated group when the value is one (directly or stabilized).
std::optional<FgAbelianGroup> as_group(const HomologyValue& v);
/// nullopt when an unresolved colimit prevents an answer.
std::optional<bool> is_zero(const HomologyValue& v);
std::optional<std::size_t> rational_rank(const HomologyValue& v);
std::optional<bool> is_torsion_free(const HomologyValue& v);
std::string summary(const HomologyValue& v);
std::string describe(const HomologyValue& v);

enum class TailKind { unknown, zero, odd_periodic };

/// Homology in degrees 0..degrees.size()-1 plus a rule for the degrees beyond.
/// A nullopt entry, or any degree past the explicit ones under an unknown
/// tail, is "unknown"; it is never read as zero.
struct HomologyResult {
  std::string model_kind;
  std::vector<std::optional<HomologyValue>> degrees;
  std::size_t reliable_up_to = 0;
  TailKind tail = TailKind::unknown;
  FgAbelianGroup odd_tail_group;
  std::string tail_reason;
  FgAbelianGroup coefficients = FgAbelianGroup::free(1);
  models::GroupoidMetadata metadata;
  std::optional<models::PublishedKTheory> published;

  /// Value at degree p, honoring the tail rule; nullopt if unknown.
  std::optional<HomologyValue> at(std::size_t p) const;
  /// True when every degree is determined (explicitly or by the tail).
  bool fully_certified() const;
};

/// Chain groups C_{p_min..p_max} (presented, so they may carry coefficient
/// relations) and boundaries[i]: C_{p_min+i+1} -> C_{p_min+i}.
struct ChainComplexWindow {
  std::size_t p_min = 0;
  std::vector<abelian::PresentedGroup> chains;
  std::vector<IntMatrix> boundaries;

  std::size_t p_max() const { return p_min + chains.size() - 1; }
  /// Exact check of d o d = 0 modulo relations; throws MalformedComplex.
  void verify() const;
  /// Homology at degree p; chains outside the window are taken to be zero.
  abelian::HomologyPresentation homology_at(std::size_t p) const;
};

/// Column-sparse boundary with small integer coefficients.
struct SparseBoundary {
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  std::size_t cols() const { return columns.size(); }
  IntMatrix to_dense() const;
};

/// The size limits were hit before the requested degrees could be built.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The engine cannot compute homology for this presentation.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  std::size_t max_degree = 4;
  std::size_t stab_budget = 32;
  abelian::ColimitOptions colimit;
  models::NerveOptions nerve;
  // Largest dense boundary (rows * cols) handed to Smith normal form.
  std::size_t max_dense_entries = std::size_t{1} << 22;
};

/// Bar (Moore) boundary of the nerve: sum_i (-1)^i (d_i)_* from level n to n-1.
SparseBoundary bar_boundary(const models::FiniteGroupoid& g, const models::NerveLevel& level,
                            const models::NerveLevel& below);
bool composite_is_zero(const SparseBoundary& lower, const SparseBoundary& upper);

HomologyResult bar_homology(const models::FiniteGroupoid& g, const FgAbelianGroup& coefficients,
                            std::size_t max_degree, const EngineOptions& options = {});

/// Koszul complex of the commuting maps A_i^t on Z^N (x) C, degrees 0..k.
ChainComplexWindow koszul_complex(const models::DrModel& m, const FgAbelianGroup& coefficients);

HomologyResult koszul_colimit_homology(const models::DrModel& m, const FgAbelianGroup& coefficients,
                                       std::size_t budget, const EngineOptions& options = {});

HomologyResult af_homology(const models::BratteliModel& b, const FgAbelianGroup& coefficients,
                           const EngineOptions& options = {});

HomologyResult odometer_homology(const models::OdometerModel& o, const FgAbelianGroup& coefficients,
                                 std::size_t budget, const EngineOptions& options = {});

HomologyResult fixture_homology(const models::HomologyFixture& f, const EngineOptions& options = {});

/// Validates the model and runs the engine that matches its kind.
HomologyResult compute_homology(const models::Model& m, const FgAbelianGroup& coefficients,
                                const EngineOptions& options = {});

}  // namespace ample::homology
