#include "ample/homology/homology.hpp"

#include "ample/linalg/smith.hpp"

namespace ample::homology {

namespace {

using linalg::Integer;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Levels of an odometer small enough to check the refinement maps explicitly.
constexpr std::size_t kOdometerCheckCells = 64;

IntMatrix cycle_permutation(std::size_t n) {
  IntMatrix p(n, n);
  for (std::size_t c = 0; c < n; ++c) p((c + 1) % n, c) = 1;
  return p;
}

// e_c -> sum over t < q of e_{c + t n}, from Z^n to Z^{q n}.
IntMatrix refinement(std::size_t n, std::size_t q) {
  IntMatrix r(q * n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t t = 0; t < q; ++t) r(c + t * n, c) = 1;
  return r;
}

// Checks that refinement is a chain map between consecutive level complexes
// Z^n --(I - P)--> Z^n and that it acts on H_0 = Z as multiplication by q and
// on H_1 = Z as the identity.
void check_odometer_levels(const models::OdometerModel& o) {
  std::size_t n = 1;
  for (std::size_t j = 0;; ++j) {
    const Integer q_big = o.multiplier(j);
    if (!q_big.fits_ulong_p() || q_big.get_ui() * n > kOdometerCheckCells) return;
    const std::size_t q = q_big.get_ui();
    const std::size_t m = q * n;
    const IntMatrix d_small = IntMatrix::identity(n) - cycle_permutation(n);
    const IntMatrix d_large = IntMatrix::identity(m) - cycle_permutation(m);
    const IntMatrix r = refinement(n, q);
    if (!(r * d_small == d_large * r)) throw std::logic_error("odometer refinement is not a chain map at level " + std::to_string(j));

    if (!(linalg::cokernel(d_large) == FgAbelianGroup::free(1)) || linalg::kernel_basis(d_large).cols() != 1)
      throw std::logic_error("odometer level " + std::to_string(j + 1) + " does not have H_0 = H_1 = Z");

    IntMatrix eps_small(1, n), eps_large(1, m), ones_small(n, 1), ones_large(m, 1);
    for (std::size_t c = 0; c < n; ++c) eps_small(0, c) = ones_small(c, 0) = 1;
    for (std::size_t c = 0; c < m; ++c) eps_large(0, c) = ones_large(c, 0) = 1;
    if (!(eps_large * r == Integer(static_cast<unsigned long>(q)) * eps_small) || !(r * ones_small == ones_large))
      throw std::logic_error("odometer refinement acts incorrectly on homology at level " + std::to_string(j));
    n = m;
  }
}

HomologyValue stationary_value(const abelian::PresentedGroup& base, const IntMatrix& endo, std::size_t budget,
                               const EngineOptions& options, std::string provenance) {
  const abelian::StationaryColimit system(base, endo);
  return HomologyValue{abelian::colimit_stabilize(system, budget, options.colimit), std::move(provenance)};
}

}  // namespace

HomologyResult af_homology(const models::BratteliModel& b, const FgAbelianGroup& coefficients,
                           const EngineOptions& options) {
  HomologyResult result;
  result.model_kind = "bratteli";
  result.coefficients = coefficients;
  result.reliable_up_to = 0;
  result.tail = TailKind::zero;
  result.tail_reason = "AF groupoid: homology vanishes above degree 0";
  result.metadata = models::GroupoidMetadata{true, true, true};

  if (b.tail.empty()) {
    const std::size_t last = b.levels.back().rows();
    const FgAbelianGroup h0 = abelian::canonicalize(abelian::tensor_lattice(last, coefficients));
    result.degrees.push_back(HomologyValue{abelian::ColimitVerdict{abelian::Stabilized{h0, b.levels.size()}},
                                           "finite diagram: last level"});
    return result;
  }
  IntMatrix block = IntMatrix::identity(b.tail.front().cols());
  for (const auto& e : b.tail) block = e * block;
  const std::size_t n = b.tail.front().cols();
  result.degrees.push_back(stationary_value(abelian::tensor_lattice(n, coefficients), abelian::tensor_lift(block, coefficients),
                                            options.stab_budget, options,
                                            "colimit of the repeating block after " + std::to_string(b.levels.size()) +
                                                " listed levels"));
  return result;
}

HomologyResult odometer_homology(const models::OdometerModel& o, const FgAbelianGroup& coefficients, std::size_t budget,
                                 const EngineOptions& options) {
  if (o.stabilizers == models::StabilizerType::dihedral)
    throw Unsupported("unsupported: torsion stabilizers; supply the homology as a fixture");
  check_odometer_levels(o);

  Integer period_product = 1;
  for (const auto& q : o.period) period_product *= q;
  const abelian::PresentedGroup base = abelian::PresentedGroup::of(coefficients);

  HomologyResult result;
  result.model_kind = "odometer";
  result.coefficients = coefficients;
  result.reliable_up_to = 1;
  result.tail = TailKind::zero;
  result.tail_reason = "free Z-action: homology vanishes above degree 1";
  result.metadata = models::GroupoidMetadata{true, true, true};
  result.degrees.push_back(stationary_value(base, period_product * IntMatrix::identity(base.generators), budget, options,
                                            "colimit of coker(I - P_j) under multiplication by the period product"));
  result.degrees.push_back(stationary_value(base, IntMatrix::identity(base.generators), budget, options,
                                            "colimit of ker(I - P_j) under the identity"));
  return result;
}

HomologyResult fixture_homology(const models::HomologyFixture& f, const EngineOptions& options) {
  HomologyResult result;
  result.model_kind = "fixture";
  result.reliable_up_to = f.groups.size() - 1;
  result.metadata = f.metadata;
  result.published = f.published;
  for (const auto& g : f.groups) {
    if (const auto* fg = std::get_if<FgAbelianGroup>(&g)) {
      result.degrees.push_back(HomologyValue{*fg, "fixture " + f.name});
      continue;
    }
    const auto& sys = std::get<abelian::StationaryColimit>(g);
    result.degrees.push_back(HomologyValue{abelian::colimit_stabilize(sys, options.stab_budget, options.colimit),
                                           "fixture " + f.name + ", colimit system"});
  }
  switch (f.tail) {
    case models::FixtureTail::zero:
      result.tail = TailKind::zero;
      result.tail_reason = "fixture: higher homology declared zero";
      break;
    case models::FixtureTail::odd_periodic:
      result.tail = TailKind::odd_periodic;
      result.odd_tail_group = f.odd_group;
      result.tail_reason = "fixture: odd degrees repeat " + abelian::to_string(f.odd_group) + ", even degrees vanish";
      break;
    case models::FixtureTail::unknown:
      result.tail = TailKind::unknown;
      result.tail_reason = "fixture: higher homology not supplied";
      break;
  }
  return result;
}

HomologyResult compute_homology(const models::Model& m, const FgAbelianGroup& coefficients, const EngineOptions& options) {
  models::validate(m);
  return std::visit(
      overloaded{
          [&](const models::FiniteGroupoid& g) { return bar_homology(g, coefficients, options.max_degree, options); },
          [&](const models::SftModel& s) {
            return koszul_colimit_homology(models::as_dr(s), coefficients, options.stab_budget, options);
          },
          [&](const models::DrModel& d) { return koszul_colimit_homology(d, coefficients, options.stab_budget, options); },
          [&](const models::BratteliModel& b) { return af_homology(b, coefficients, options); },
          [&](const models::OdometerModel& o) { return odometer_homology(o, coefficients, options.stab_budget, options); },
          [&](const models::HomologyFixture& f) {
            if (!(coefficients == FgAbelianGroup::free(1)))
              throw Unsupported("fixtures carry integral homology only; coefficients must be Z");
            return fixture_homology(f, options);
          },
      },
      m);
}

}  // namespace ample::homology
