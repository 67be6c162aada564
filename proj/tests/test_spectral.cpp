#include <gtest/gtest.h>

#include <algorithm>

#include "ample/models/serialization.hpp"
#include "ample/spectral/spectral.hpp"
#include "test_support.hpp"

namespace {

using namespace ample::spectral;
using ample::homology::TailKind;
using ample::models::GroupoidMetadata;
using ample::testing::G;
namespace models = ample::models;
namespace homology = ample::homology;

const GroupoidMetadata kAllTrue{true, true, true};

HomologyResult make(std::vector<const char*> groups, TailKind tail = TailKind::zero, const char* odd = "0") {
  HomologyResult h;
  h.model_kind = "test";
  for (const char* g : groups) h.degrees.push_back(HomologyValue{G(g), "given"});
  h.reliable_up_to = groups.size() - 1;
  h.tail = tail;
  h.odd_tail_group = G(odd);
  h.tail_reason = "given";
  h.metadata = kAllTrue;
  return h;
}

HomologyResult load(const std::string& file) {
  return homology::compute_homology(models::load_model_file(ample::testing::model_path(file)), G("Z"));
}

bool contains(const std::vector<std::string>& notes, const std::string& needle) {
  for (const auto& n : notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

TEST(E2, TrimsTrailingZerosAndReadsTail) {
  const E2Page page = build_e2(make({"Z", "Z/2", "0", "0"}));
  EXPECT_EQ(page.columns.size(), 2u);
  EXPECT_EQ(page.vanishing_above(), 1u);
  EXPECT_EQ(homology::as_group(*page.entry(1, 0)), G("Z/2"));
  EXPECT_EQ(homology::as_group(*page.entry(1, 1)), G("0"));
  EXPECT_EQ(homology::as_group(*page.entry(7, 2)), G("0"));
}

TEST(E2, OddPeriodicTail) {
  const E2Page page = build_e2(make({"Z", "Z/2", "0"}, TailKind::odd_periodic, "Z/2"));
  EXPECT_EQ(page.vanishing_above(), std::nullopt);
  EXPECT_EQ(homology::as_group(*page.entry(5, 0)), G("Z/2"));
  EXPECT_EQ(homology::as_group(*page.entry(6, 4)), G("0"));
}

TEST(E2, RefusesUnknownTailOrMissingDegree) {
  EXPECT_THROW((void)build_e2(make({"Z", "Z/2"}, TailKind::unknown)), E2Refused);
  HomologyResult gap = make({"Z", "0", "0"});
  gap.degrees[1].reset();
  EXPECT_THROW((void)build_e2(gap), E2Refused);
}

TEST(Assembly, CuntzAlgebras) {
  for (long n = 2; n <= 6; ++n) {
    const HomologyResult h =
        homology::compute_homology(models::SftModel{ample::testing::M({{n}})}, G("Z"));
    const KTheoryVerdict v = assemble_k_theory(h, h.metadata);
    ASSERT_TRUE(std::holds_alternative<Assembled>(v));
    const auto& a = std::get<Assembled>(v);
    EXPECT_EQ(a.k0, (KGroup{FgAbelianGroup::cyclic(n - 1), {}}));
    EXPECT_EQ(a.k1, KGroup{});
    EXPECT_EQ(a.certificate.collapse_reason, CollapseReason::vanishing_above_2);
    EXPECT_EQ(a.certificate.extension_free, true);
    EXPECT_EQ(euler_rank_check(h, v), RankCheck::pass);
  }
}

TEST(Assembly, RankTwoTensorProduct) {
  const HomologyResult h = load("dr_3_3.json");
  const KTheoryVerdict v = assemble_k_theory(h, h.metadata);
  ASSERT_TRUE(std::holds_alternative<Assembled>(v));
  EXPECT_EQ(std::get<Assembled>(v).k0.finite_part, G("Z/2"));
  EXPECT_EQ(std::get<Assembled>(v).k1.finite_part, G("Z/2"));
}

TEST(Assembly, OdometerGivesLocalizedK0) {
  const HomologyResult h = load("odometer2.json");
  const KTheoryVerdict v = assemble_k_theory(h, h.metadata);
  ASSERT_TRUE(std::holds_alternative<Assembled>(v));
  const auto& a = std::get<Assembled>(v);
  ASSERT_EQ(a.k0.formal_parts.size(), 1u);
  EXPECT_EQ(a.k0.formal_parts[0].inverted_primes, std::vector<ample::abelian::Integer>{2});
  EXPECT_EQ(a.k1.finite_part, G("Z"));
  EXPECT_EQ(to_string(a.k0), "Z localized away from {2}");
  EXPECT_EQ(euler_rank_check(h, v), RankCheck::pass);
}

TEST(Assembly, DihedralFixtureIsRefusedWithMismatchNotes) {
  const HomologyResult h = load("dihedral_odometer_even.json");
  const KTheoryVerdict v = assemble_k_theory(h, h.metadata);
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(v));
  const auto& ind = std::get<Indeterminate>(v);
  EXPECT_TRUE(ind.guard_refusal);
  EXPECT_EQ(ind.certificate.failed, std::vector<std::string>{"stabilizers_torsion_free"});
  EXPECT_TRUE(contains(ind.notes, "not torsion-free"));
  EXPECT_TRUE(contains(ind.notes, "published K_0"));
  EXPECT_TRUE(contains(ind.notes, "published K_1 = 0"));
  EXPECT_EQ(euler_rank_check(h, v), RankCheck::inconclusive);
  EXPECT_FALSE(published_mismatch(h).empty());
}

TEST(Assembly, FlagExhaustion) {
  for (int mask = 0; mask < 8; ++mask) {
    const GroupoidMetadata meta{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
    const HomologyResult h = make({"Z", "Z"});
    const KTheoryVerdict v = assemble_k_theory(h, meta);
    if (mask == 7) {
      ASSERT_TRUE(std::holds_alternative<Assembled>(v));
      continue;
    }
    ASSERT_TRUE(std::holds_alternative<Indeterminate>(v)) << "mask " << mask;
    const auto& ind = std::get<Indeterminate>(v);
    EXPECT_TRUE(ind.guard_refusal);
    const auto& failed = ind.certificate.failed;
    const auto has = [&](const char* f) { return std::find(failed.begin(), failed.end(), f) != failed.end(); };
    EXPECT_EQ(has("stabilizers_torsion_free"), !*meta.stabilizers_torsion_free);
    EXPECT_EQ(has("strong_baum_connes"), !*meta.strong_baum_connes);
    EXPECT_EQ(has("amenable"), !*meta.amenable);
    EXPECT_EQ(contains(ind.notes, "inconsistent metadata"), *meta.amenable && !*meta.strong_baum_connes);
  }
}

TEST(Assembly, MissingMetadataIsAnError) {
  GroupoidMetadata partial{true, std::nullopt, true};
  EXPECT_THROW((void)assemble_k_theory(make({"Z"}), partial), MissingMetadata);
}

TEST(Assembly, PaddingWithZerosChangesNothing) {
  const KTheoryVerdict short_v = assemble_k_theory(make({"Z^2", "Z"}), kAllTrue);
  const KTheoryVerdict long_v = assemble_k_theory(make({"Z^2", "Z", "0", "0", "0", "0"}), kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Assembled>(short_v));
  ASSERT_TRUE(std::holds_alternative<Assembled>(long_v));
  EXPECT_EQ(std::get<Assembled>(short_v).k0, std::get<Assembled>(long_v).k0);
  EXPECT_EQ(std::get<Assembled>(short_v).k1, std::get<Assembled>(long_v).k1);
}

TEST(Assembly, TorsionInH2BlocksAssembly) {
  const KTheoryVerdict v = assemble_k_theory(make({"Z", "0", "Z/2"}), kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(v));
  const auto& ind = std::get<Indeterminate>(v);
  EXPECT_FALSE(ind.guard_refusal);
  EXPECT_EQ(ind.certificate.extension_free, false);
  EXPECT_TRUE(contains(ind.notes, "extension"));
  EXPECT_EQ(ind.rank_constraint, 1);
}

TEST(Assembly, TorsionFreeH2Splits) {
  const KTheoryVerdict v = assemble_k_theory(make({"Z", "Z^3", "Z"}), kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Assembled>(v));
  EXPECT_EQ(std::get<Assembled>(v).k0.finite_part, G("Z^2"));
  EXPECT_EQ(std::get<Assembled>(v).k1.finite_part, G("Z^3"));
}

TEST(Assembly, DegreeThreeRuleIsOptIn) {
  const HomologyResult torus3 = make({"Z", "Z^3", "Z^3", "Z"});
  const KTheoryVerdict plain = assemble_k_theory(torus3, kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(plain));
  EXPECT_EQ(std::get<Indeterminate>(plain).rank_constraint, 0);

  const KTheoryVerdict asserted = assemble_k_theory(torus3, kAllTrue, AssemblyOptions{true});
  ASSERT_TRUE(std::holds_alternative<Assembled>(asserted));
  const auto& a = std::get<Assembled>(asserted);
  EXPECT_EQ(a.k0.finite_part, G("Z^4"));
  EXPECT_EQ(a.k1.finite_part, G("Z^4"));
  EXPECT_EQ(a.certificate.collapse_reason, CollapseReason::vanishing_above_d_le_3);

  const KTheoryVerdict torsion = assemble_k_theory(make({"Z", "0", "0", "Z/2"}), kAllTrue, AssemblyOptions{true});
  EXPECT_TRUE(std::holds_alternative<Indeterminate>(torsion));
}

TEST(Assembly, HigherDegreesStayIndeterminate) {
  const KTheoryVerdict v = assemble_k_theory(make({"Z", "0", "0", "0", "Z"}), kAllTrue, AssemblyOptions{true});
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(v));
  EXPECT_EQ(std::get<Indeterminate>(v).rank_constraint, 2);
  EXPECT_EQ(euler_rank_check(make({"Z", "0", "0", "0", "Z"}), v), RankCheck::inconclusive);

  const KTheoryVerdict periodic = assemble_k_theory(make({"Z", "Z/2"}, TailKind::odd_periodic, "Z/2"), kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(periodic));
  EXPECT_TRUE(contains(std::get<Indeterminate>(periodic).notes, "infinitely many degrees"));
}

TEST(Assembly, UnknownTailKeepsTruncatedPage) {
  const HomologyResult h = make({"Z", "Z/2", "0"}, TailKind::unknown);
  const KTheoryVerdict v = assemble_k_theory(h, kAllTrue);
  ASSERT_TRUE(std::holds_alternative<Indeterminate>(v));
  const auto& ind = std::get<Indeterminate>(v);
  EXPECT_FALSE(ind.page.certified);
  EXPECT_EQ(ind.page.columns.size(), 3u);
  EXPECT_FALSE(ind.page.entry(3, 0).has_value());
  EXPECT_EQ(ind.rank_constraint, std::nullopt);
}

TEST(EulerRank, AlternatingSum) {
  EXPECT_EQ(euler_rank(make({"Z^2", "Z^3", "Z + Z/2"})), 0);
  EXPECT_EQ(euler_rank(make({"Z"}, TailKind::odd_periodic, "Z/2")), 1);
  EXPECT_EQ(euler_rank(make({"Z"}, TailKind::odd_periodic, "Z")), std::nullopt);
  EXPECT_EQ(euler_rank(make({"Z"}, TailKind::unknown)), std::nullopt);
}

TEST(Assembly, TorusFixture) {
  const HomologyResult h = load("fixture_torus.json");
  const KTheoryVerdict v = assemble_k_theory(h, h.metadata);
  ASSERT_TRUE(std::holds_alternative<Assembled>(v));
  EXPECT_EQ(std::get<Assembled>(v).k0.finite_part, G("Z^2"));
  EXPECT_EQ(std::get<Assembled>(v).k1.finite_part, G("Z^2"));
}

}  // namespace
