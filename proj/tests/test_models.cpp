#include <gtest/gtest.h>

#include <algorithm>

#include "ample/models/serialization.hpp"
#include "ample/reference/reference.hpp"
#include "test_support.hpp"

namespace {

using namespace ample::models;
using ample::testing::M;

std::vector<std::vector<std::size_t>> s3_table() {
  // Permutations of {0,1,2} in lexicographic order; entry = index of p∘q.
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<std::size_t, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return table;
}

std::vector<FiniteGroupoid> sample_groupoids() {
  const std::vector<std::size_t> classes{0, 1, 0, 1, 1};
  return {FiniteGroupoid::trivial(),      FiniteGroupoid::pair(2),         FiniteGroupoid::pair(3),
          FiniteGroupoid::cyclic_group(2), FiniteGroupoid::cyclic_group(3), FiniteGroupoid::group(s3_table()),
          FiniteGroupoid::equivalence_relation(classes)};
}

std::string issues_text(const Model& m) {
  std::string s;
  for (const auto& i : check(m)) s += i.location + ": " + i.message + "\n";
  return s;
}

TEST(FiniteGroupoid, PresetsAreValid) {
  for (const auto& g : sample_groupoids()) EXPECT_TRUE(check(Model{g}).empty()) << issues_text(Model{g});
  EXPECT_TRUE(FiniteGroupoid::pair(3).is_principal());
  EXPECT_FALSE(FiniteGroupoid::cyclic_group(2).is_principal());
}

TEST(FiniteGroupoid, MissingInverseIsReported) {
  FiniteGroupoid g = FiniteGroupoid::pair(2);
  std::size_t a = 0;
  while (g.source[a] == g.range[a]) ++a;
  g.inverse[a] = kNoArrow;
  const std::string text = issues_text(Model{g});
  EXPECT_NE(text.find("arrow " + std::to_string(a) + ": has no inverse"), std::string::npos) << text;
  EXPECT_THROW(validate(Model{g}), ValidationError);
}

TEST(FiniteGroupoid, BrokenAssociativityIsReported) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(3);
  // Swap two products so the table stops being a group.
  std::swap(g.products[1 * 3 + 1], g.products[1 * 3 + 2]);
  EXPECT_FALSE(check(Model{g}).empty());
}

TEST(Validation, NonCommutingMatrices) {
  const DrModel dr{{M({{1, 1}, {0, 1}}), M({{1, 0}, {1, 1}})}};
  const std::string text = issues_text(Model{dr});
  EXPECT_NE(text.find("matrices 1,2 do not commute"), std::string::npos) << text;
}

TEST(Validation, ShapeAndSignErrors) {
  EXPECT_FALSE(check(Model{SftModel{M({{1, -1}, {0, 1}})}}).empty());
  EXPECT_FALSE(check(Model{SftModel{M({{1, 1}})}}).empty());
  EXPECT_FALSE(check(Model{DrModel{}}).empty());
  EXPECT_FALSE(check(Model{BratteliModel{{M({{1, 1}}), M({{1, 1}})}, {}}}).empty());
  OdometerModel odo;
  EXPECT_FALSE(check(Model{odo}).empty());
  odo.period = {1};
  EXPECT_FALSE(check(Model{odo}).empty());
  odo.period = {2};
  EXPECT_TRUE(check(Model{odo}).empty());
}

TEST(Validation, ErrorMessageListsEveryIssue) {
  const DrModel dr{{M({{1, 1}, {0, 1}}), M({{1, 0}, {1, 1}}), M({{-1, 0}, {0, 1}})}};
  try {
    validate(Model{dr});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.issues().size(), 2u);
  }
}

TEST(Sft, IrreducibilityAndRankOneView) {
  EXPECT_TRUE(is_irreducible(SftModel{M({{1, 1}, {1, 0}})}));
  EXPECT_FALSE(is_irreducible(SftModel{M({{1, 1}, {0, 1}})}));
  EXPECT_EQ(as_dr(SftModel{M({{3}})}).rank(), 1u);
}

TEST(Nerve, DocumentedCounts) {
  EXPECT_EQ(nerve_levels(FiniteGroupoid::trivial(), 4)[4].count, 1u);
  const auto z2 = nerve_levels(FiniteGroupoid::cyclic_group(2), 3);
  EXPECT_EQ(z2[1].count, 2u);
  EXPECT_EQ(z2[2].count, 4u);
  EXPECT_EQ(z2[3].count, 8u);
  const auto pair2 = nerve_levels(FiniteGroupoid::pair(2), 2);
  EXPECT_EQ(pair2[0].count, 2u);
  EXPECT_EQ(pair2[1].count, 4u);
  EXPECT_EQ(pair2[2].count, 8u);
}

TEST(Nerve, BudgetIsEnforced) {
  NerveOptions tight;
  tight.max_cells = 10;
  EXPECT_THROW((void)nerve_levels(FiniteGroupoid::cyclic_group(3), 4, tight), NerveBudgetExceeded);
}

TEST(Nerve, LevelsAndFacesMatchReference) {
  for (const auto& g : sample_groupoids()) {
    const auto levels = nerve_levels(g, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      const NerveLevel brute = ample::reference::nerve_level(g, n);
      ASSERT_EQ(levels[n].count, brute.count);
      EXPECT_EQ(levels[n].cells, brute.cells);
      for (std::size_t i = 0; i <= n; ++i)
        EXPECT_EQ(face_map(g, levels[n], levels[n - 1], i),
                  ample::reference::face_map(g, levels[n], levels[n - 1], i))
            << "n=" << n << " i=" << i;
    }
  }
}

TEST(Nerve, LevelOneFacesAreSourceAndRange) {
  const FiniteGroupoid g = FiniteGroupoid::pair(3);
  const Nerve n1 = nerve(g, 1);
  ASSERT_EQ(n1.faces.size(), 2u);
  for (std::size_t a = 0; a < g.arrows(); ++a) {
    EXPECT_EQ(n1.faces[0][a], g.source[a]);
    EXPECT_EQ(n1.faces[1][a], g.range[a]);
  }
}

TEST(Nerve, SimplicialIdentitiesHold) {
  for (const auto& g : sample_groupoids()) EXPECT_EQ(simplicial_identity_violation(g, 5), std::nullopt);
}

TEST(Serialization, RoundTripsEveryExampleModel) {
  for (const auto& entry : std::filesystem::directory_iterator(ample::testing::model_path(""))) {
    if (entry.path().extension() != ".json") continue;
    const Model m = load_model_file(entry.path());
    EXPECT_EQ(parse_model(to_json(m)), m) << entry.path();
  }
}

TEST(Serialization, PresetsParse) {
  EXPECT_EQ(std::get<FiniteGroupoid>(parse_model_text(R"({"kind":"finite","preset":{"type":"pair","points":3}})")),
            FiniteGroupoid::pair(3));
  EXPECT_EQ(std::get<FiniteGroupoid>(parse_model_text(R"({"kind":"finite","preset":{"type":"cyclic_group","order":2}})")),
            FiniteGroupoid::cyclic_group(2));
}

TEST(Serialization, ExplicitTablesMatchPresets) {
  const Model m = load_model_file(ample::testing::model_path("pair2_explicit.json"));
  EXPECT_TRUE(check(m).empty()) << issues_text(m);
  EXPECT_EQ(std::get<FiniteGroupoid>(m).arrows(), 4u);
}

TEST(Serialization, ParseErrors) {
  EXPECT_THROW((void)parse_model_text("{"), ParseError);
  EXPECT_THROW((void)parse_model_text("[]"), ParseError);
  EXPECT_THROW((void)parse_model_text(R"({"kind":"torus"})"), ParseError);
  EXPECT_THROW((void)parse_model_text(R"({"kind":"sft"})"), ParseError);
  EXPECT_THROW((void)parse_model_text(R"({"kind":"sft","adjacency":[[1,2],[3]]})"), ParseError);
  EXPECT_THROW((void)parse_model_text(R"({"kind":"odometer","prefix":[],"period":[2],"stabilizers":"cyclic"})"),
               ParseError);
  EXPECT_THROW((void)load_model_file(ample::testing::model_path("does_not_exist.json")), ParseError);
}

TEST(Serialization, BigIntegersSurvive) {
  const Model m = parse_model_text(R"({"kind":"sft","adjacency":[["123456789012345678901234567890"]]})");
  EXPECT_EQ(std::get<SftModel>(m).adjacency(0, 0), Integer("123456789012345678901234567890"));
  EXPECT_EQ(parse_model(to_json(m)), m);
}

TEST(Metadata, DerivedFromKind) {
  EXPECT_EQ(derived_metadata(Model{FiniteGroupoid::pair(2)}).stabilizers_torsion_free, true);
  EXPECT_EQ(derived_metadata(Model{FiniteGroupoid::cyclic_group(2)}).stabilizers_torsion_free, false);
  EXPECT_TRUE(derived_metadata(Model{SftModel{M({{2}})}}).complete());
}

}  // namespace
