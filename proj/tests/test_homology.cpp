#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ample/homology/homology.hpp"
#include "ample/models/serialization.hpp"
#include "ample/reference/reference.hpp"
#include "test_support.hpp"

namespace {

using namespace ample::homology;
using ample::abelian::Formal;
using ample::abelian::Stabilized;
using ample::abelian::tensor_with;
using ample::abelian::tor;
using ample::models::FiniteGroupoid;
using ample::testing::G;
using ample::testing::M;
namespace models = ample::models;

FgAbelianGroup group_at(const HomologyResult& h, std::size_t p) {
  const auto v = h.at(p);
  EXPECT_TRUE(v.has_value()) << "H_" << p << " unknown";
  if (!v) return {};
  const auto g = as_group(*v);
  EXPECT_TRUE(g.has_value()) << "H_" << p << " is " << describe(*v);
  return g.value_or(FgAbelianGroup{});
}

const Formal& formal_at(const HomologyResult& h, std::size_t p) {
  const auto& verdict = std::get<ColimitVerdict>(h.degrees.at(p)->value);
  return std::get<Formal>(verdict);
}

std::size_t stage_at(const HomologyResult& h, std::size_t p) {
  const auto& verdict = std::get<ColimitVerdict>(h.degrees.at(p)->value);
  return std::get<Stabilized>(verdict).stage;
}

HomologyResult load_and_compute(const std::string& file, const FgAbelianGroup& c = G("Z")) {
  return compute_homology(models::load_model_file(ample::testing::model_path(file)), c);
}

std::vector<FiniteGroupoid> sample_groupoids() {
  const std::vector<std::size_t> classes{0, 1, 0, 2};
  const std::vector<std::vector<std::size_t>> klein{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return {FiniteGroupoid::trivial(),        FiniteGroupoid::pair(2),
          FiniteGroupoid::pair(3),          FiniteGroupoid::cyclic_group(2),
          FiniteGroupoid::cyclic_group(3),  FiniteGroupoid::group(klein),
          FiniteGroupoid::equivalence_relation(classes)};
}

TEST(Bar, PrincipalExamples) {
  for (const auto& g : {FiniteGroupoid::trivial(), FiniteGroupoid::pair(2), FiniteGroupoid::pair(3)}) {
    const HomologyResult h = bar_homology(g, G("Z"), 3);
    EXPECT_EQ(group_at(h, 0), G("Z"));
    for (std::size_t p = 1; p <= 3; ++p) EXPECT_TRUE(group_at(h, p).is_trivial());
    EXPECT_EQ(h.tail, TailKind::zero);
    EXPECT_TRUE(h.fully_certified());
  }
  const std::vector<std::size_t> classes{0, 0, 1};
  EXPECT_EQ(group_at(bar_homology(FiniteGroupoid::equivalence_relation(classes), G("Z"), 2), 0), G("Z^2"));
}

TEST(Bar, CyclicGroupHomology) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const HomologyResult h = bar_homology(FiniteGroupoid::cyclic_group(n), G("Z"), 4);
    const FgAbelianGroup zn = FgAbelianGroup::cyclic(static_cast<long>(n));
    EXPECT_EQ(group_at(h, 0), G("Z"));
    EXPECT_EQ(group_at(h, 1), zn);
    EXPECT_TRUE(group_at(h, 2).is_trivial());
    EXPECT_EQ(group_at(h, 3), zn);
    EXPECT_EQ(h.tail, TailKind::unknown);
    EXPECT_FALSE(h.at(5).has_value());
    EXPECT_EQ(h.reliable_up_to, 4u);
  }
}

TEST(Bar, KleinFourGroup) {
  const HomologyResult h = bar_homology(sample_groupoids()[5], G("Z"), 3);
  EXPECT_EQ(group_at(h, 1), G("Z/2 + Z/2"));
  EXPECT_EQ(group_at(h, 2), G("Z/2"));
  EXPECT_EQ(group_at(h, 3), G("Z/2 + Z/2 + Z/2"));
}

TEST(Bar, SparseBoundaryMatchesReferenceAndSquaresToZero) {
  for (const auto& g : sample_groupoids()) {
    const auto levels = models::nerve_levels(g, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      const SparseBoundary d = bar_boundary(g, levels[n], levels[n - 1]);
      EXPECT_EQ(d.to_dense(), ample::reference::bar_boundary(g, levels[n], levels[n - 1]));
      if (n >= 2) {
        const SparseBoundary lower = bar_boundary(g, levels[n - 1], levels[n - 2]);
        EXPECT_TRUE(composite_is_zero(lower, d));
        EXPECT_TRUE((lower.to_dense() * d.to_dense()).is_zero());
      }
    }
  }
}

TEST(Bar, UniversalCoefficients) {
  for (const auto& g : sample_groupoids()) {
    const HomologyResult integral = bar_homology(g, G("Z"), 4);
    for (const char* cs : {"Z/2", "Z/3", "Z/4"}) {
      const FgAbelianGroup c = G(cs);
      const HomologyResult h = bar_homology(g, c, 3);
      for (std::size_t p = 0; p <= 3; ++p) {
        FgAbelianGroup expected = tensor_with(group_at(integral, p), c);
        if (p > 0) expected = direct_sum(expected, tor(group_at(integral, p - 1), c));
        EXPECT_EQ(group_at(h, p), expected) << cs << " p=" << p;
      }
    }
  }
}

TEST(Bar, TruncatesInsteadOfExhaustingMemory) {
  EngineOptions tight;
  tight.nerve.max_cells = 50;
  EXPECT_THROW((void)bar_homology(FiniteGroupoid::cyclic_group(3), G("Z"), 6, tight), TruncationError);
  EngineOptions small_dense;
  small_dense.max_dense_entries = 10;
  EXPECT_THROW((void)bar_homology(FiniteGroupoid::cyclic_group(3), G("Z"), 3, small_dense), TruncationError);
}

TEST(Koszul, FullShiftExamples) {
  for (long n = 2; n <= 6; ++n) {
    const models::DrModel m{{M({{n}})}};
    const HomologyResult h = koszul_colimit_homology(m, G("Z"), 8);
    EXPECT_EQ(h.model_kind, "sft");
    EXPECT_EQ(group_at(h, 0), FgAbelianGroup::cyclic(n - 1));
    EXPECT_TRUE(group_at(h, 1).is_trivial());
    EXPECT_EQ(h.tail, TailKind::zero);
  }
}

TEST(Koszul, SftMatchesCokernelAndKernelAtStageZero) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> entry(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    ample::linalg::IntMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = entry(rng);
    const ample::linalg::IntMatrix d = a.transpose() - ample::linalg::IntMatrix::identity(n);
    const HomologyResult h = koszul_colimit_homology(models::DrModel{{a}}, G("Z"), 16);
    EXPECT_EQ(group_at(h, 0), ample::linalg::cokernel(d)) << to_string(a);
    EXPECT_EQ(group_at(h, 1), G("Z^" + std::to_string(ample::linalg::kernel_basis(d).cols())));
    EXPECT_EQ(stage_at(h, 0), 0u);
    EXPECT_EQ(stage_at(h, 1), 0u);
  }
}

TEST(Koszul, RankTwoExamples) {
  for (long n = 2; n <= 6; ++n) {
    const HomologyResult h = koszul_colimit_homology(models::DrModel{{M({{n}}), M({{n}})}}, G("Z"), 8);
    EXPECT_EQ(h.model_kind, "dr");
    EXPECT_EQ(group_at(h, 0), FgAbelianGroup::cyclic(n - 1));
    EXPECT_EQ(group_at(h, 1), FgAbelianGroup::cyclic(n - 1));
    EXPECT_TRUE(group_at(h, 2).is_trivial());
  }
  const HomologyResult coprime = load_and_compute("dr_2_3.json");
  for (std::size_t p = 0; p <= 2; ++p) EXPECT_TRUE(group_at(coprime, p).is_trivial());
}

TEST(Koszul, VanishesAboveRank) {
  const HomologyResult h = koszul_colimit_homology(models::DrModel{{M({{2}}), M({{3}}), M({{5}})}}, G("Z"), 8);
  EXPECT_EQ(h.degrees.size(), 4u);
  EXPECT_EQ(h.tail, TailKind::zero);
  for (std::size_t p = 4; p < 10; ++p) EXPECT_EQ(is_zero(*h.at(p)), true);
}

TEST(Koszul, ComplexSquaresToZeroWithCoefficients) {
  const models::DrModel m{{M({{1, 1}, {1, 0}}), M({{2, 1}, {1, 1}})}};
  for (const char* c : {"Z", "Z/2", "Z + Z/3"}) EXPECT_NO_THROW(koszul_complex(m, G(c)).verify()) << c;
}

TEST(Koszul, PermutationSftAgreesWithOrbitCountInDegreeZero) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ample::linalg::IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, perm[i]) = 1;
    std::vector<std::size_t> label(n, n);
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] != n) continue;
      for (std::size_t j = i; label[j] == n; j = perm[j]) label[j] = orbits;
      ++orbits;
    }
    const HomologyResult h = koszul_colimit_homology(models::DrModel{{a}}, G("Z"), 8);
    const HomologyResult orbit = bar_homology(FiniteGroupoid::equivalence_relation(label), G("Z"), 1);
    EXPECT_EQ(group_at(h, 0), group_at(orbit, 0));
    EXPECT_EQ(group_at(h, 0), G("Z^" + std::to_string(orbits)));
  }
}

TEST(Af, ExampleDiagrams) {
  const HomologyResult car = load_and_compute("bratteli_car.json");
  const Formal& f = formal_at(car, 0);
  EXPECT_EQ(f.rational_rank, 1u);
  EXPECT_EQ(f.inverted_primes, std::vector<ample::abelian::Integer>{2});
  EXPECT_EQ(is_zero(*car.at(1)), true);
  EXPECT_EQ(car.tail, TailKind::zero);

  const HomologyResult finite = load_and_compute("bratteli_finite.json");
  EXPECT_EQ(group_at(finite, 0), G("Z^3"));
  EXPECT_EQ(stage_at(finite, 0), 2u);

  const HomologyResult fib = load_and_compute("bratteli_fibonacci.json");
  EXPECT_EQ(group_at(fib, 0), G("Z^2"));
}

TEST(Odometer, LocalizedZeroAndZInDegreeOne) {
  const HomologyResult h = load_and_compute("odometer2.json");
  EXPECT_EQ(formal_at(h, 0).inverted_primes, std::vector<ample::abelian::Integer>{2});
  EXPECT_EQ(group_at(h, 1), G("Z"));
  EXPECT_EQ(h.tail, TailKind::zero);
  EXPECT_EQ(is_zero(*h.at(2)), true);

  const HomologyResult h23 = load_and_compute("odometer23.json");
  EXPECT_EQ(formal_at(h23, 0).inverted_primes, (std::vector<ample::abelian::Integer>{2, 3}));
}

TEST(Odometer, ModTwoCoefficients) {
  // Z[1/2] (x) Z/2 = 0 and Tor(Z[1/2], Z/2) = 0, so only H_1 (x) Z/2 survives.
  const HomologyResult h = load_and_compute("odometer2.json", G("Z/2"));
  EXPECT_EQ(is_zero(*h.at(0)), true);
  EXPECT_EQ(group_at(h, 1), G("Z/2"));
}

TEST(Odometer, DihedralStabilizersAreUnsupported) {
  EXPECT_THROW((void)load_and_compute("odometer_dihedral.json"), Unsupported);
}

TEST(Fixture, OddPeriodicTail) {
  const HomologyResult h = load_and_compute("dihedral_odometer_even.json");
  EXPECT_EQ(h.model_kind, "fixture");
  EXPECT_EQ(h.tail, TailKind::odd_periodic);
  EXPECT_EQ(group_at(h, 1), G("Z/2"));
  EXPECT_TRUE(group_at(h, 2).is_trivial());
  for (std::size_t p = 3; p < 12; p += 2) EXPECT_EQ(group_at(h, p), G("Z/2"));
  for (std::size_t p = 4; p < 12; p += 2) EXPECT_TRUE(group_at(h, p).is_trivial());
  EXPECT_EQ(h.metadata.stabilizers_torsion_free, false);
  EXPECT_TRUE(h.published.has_value());
  EXPECT_THROW((void)load_and_compute("dihedral_odometer_even.json", G("Z/2")), Unsupported);
}

TEST(Dispatch, ValidatesBeforeComputing) {
  const models::Model bad = models::DrModel{{M({{1, 1}, {0, 1}}), M({{1, 0}, {1, 1}})}};
  EXPECT_THROW((void)compute_homology(bad, G("Z")), models::ValidationError);
}

TEST(Values, UnknownIsNeverZero) {
  const HomologyResult h = bar_homology(FiniteGroupoid::cyclic_group(2), G("Z"), 2);
  EXPECT_FALSE(h.at(3).has_value());
  EXPECT_FALSE(h.fully_certified());
}

TEST(Window, HomologyOutsideWindowRejected) {
  const ChainComplexWindow w = koszul_complex(models::DrModel{{M({{2}})}}, G("Z"));
  EXPECT_EQ(w.p_max(), 1u);
  EXPECT_TRUE(ample::abelian::canonicalize(w.homology_at(0).group).is_trivial());
  EXPECT_THROW((void)w.homology_at(2), std::out_of_range);
}

}  // namespace
