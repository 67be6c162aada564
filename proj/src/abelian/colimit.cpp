#include "ample/abelian/colimit.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "ample/linalg/smith.hpp"

namespace ample::abelian {

using linalg::LatticeSolver;

StationaryColimit::StationaryColimit(PresentedGroup base_group, IntMatrix endo_lift)
    : base(base_group), endo{base_group, base_group, std::move(endo_lift)} {
  if (!is_well_defined(endo)) throw std::invalid_argument("StationaryColimit: endomorphism is not well defined on the base group");
}

std::vector<Integer> ColimitOptions::default_probe_primes() { return primes_up_to(97); }

std::vector<Integer> primes_up_to(unsigned long bound) {
  std::vector<Integer> out;
  for (unsigned long n = 2; n <= bound; ++n) {
    bool prime = true;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.emplace_back(n);
  }
  return out;
}

namespace {

constexpr unsigned long kTrialDivisionBound = 100000;

void add_small_prime_factors(Integer n, std::vector<Integer>& primes) {
  n = abs(n);
  if (n < 2) return;
  for (unsigned long d = 2; d <= kTrialDivisionBound && n > 1; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      primes.emplace_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  if (n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) primes.push_back(n);
}

// Generators of ker(phi^power) on Z^g / R, as columns in Z^g.
IntMatrix kernel_of_power(const IntMatrix& relations, const IntMatrix& lift_power) {
  const std::size_t g = lift_power.cols();
  if (relations.cols() == 0) return linalg::kernel_basis(lift_power);
  return linalg::kernel_basis(hconcat(lift_power, relations)).rows_block(0, g);
}

struct KernelChain {
  std::optional<std::size_t> stage;  // first j with ker phi^j = ker phi^(j+1)
  IntMatrix quotient_relations;      // relations of base / ker phi^stage
};

// ker phi^j increases with j; once two consecutive quotients have the same
// canonical form the surjection between them is an isomorphism and the chain
// is constant from there on.
KernelChain stabilize_kernels(const IntMatrix& relations, const IntMatrix& lift, std::size_t budget) {
  const std::size_t g = lift.cols();
  IntMatrix current = relations;
  FgAbelianGroup current_form = linalg::cokernel(current);
  IntMatrix lift_power = IntMatrix::identity(g);
  for (std::size_t j = 0; j < budget; ++j) {
    lift_power = lift * lift_power;
    IntMatrix next = hconcat(relations, kernel_of_power(relations, lift_power));
    FgAbelianGroup next_form = linalg::cokernel(next);
    if (next_form == current_form) return {j, std::move(current)};
    current = std::move(next);
    current_form = std::move(next_form);
  }
  return {std::nullopt, std::move(current)};
}

bool surjective(const IntMatrix& lift, const IntMatrix& relations) {
  return linalg::cokernel(hconcat(lift, relations)).is_trivial();
}

std::size_t eventual_rank_mod(const IntMatrix& lift, const IntMatrix& relations, const Integer& p) {
  const std::size_t g = lift.cols();
  const IntMatrix eventual = power(lift, g);
  const unsigned long prime = p.get_ui();
  const std::size_t rel_rank = relations.cols() == 0 ? 0 : linalg::rank_mod_p(relations, prime);
  return linalg::rank_mod_p(hconcat(eventual, relations), prime) - rel_rank;
}

std::vector<Integer> probe_set(const StationaryColimit& s, const ColimitOptions& options) {
  std::vector<Integer> primes = options.probe_primes;
  if (options.probe_entry_primes) {
    for (const auto& e : s.endo.lift.entries()) add_small_prime_factors(e, primes);
    if (s.endo.lift.is_square() && s.endo.lift.rows() > 0) add_small_prime_factors(linalg::determinant(s.endo.lift), primes);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  // Residue arithmetic in rank_mod_p is word-sized.
  std::erase_if(primes, [](const Integer& p) { return !p.fits_ulong_p() || p < 2; });
  return primes;
}

}  // namespace

ColimitVerdict colimit_stabilize(const StationaryColimit& s, std::size_t budget, const ColimitOptions& options) {
  if (budget == 0) throw std::invalid_argument("colimit_stabilize: budget must be at least 1");
  const IntMatrix& rels = s.base.relations;
  const IntMatrix& lift = s.endo.lift;
  const std::size_t g = s.base.generators;

  const KernelChain chain = stabilize_kernels(rels, lift, budget);
  if (chain.stage && surjective(lift, chain.quotient_relations))
    return Stabilized{linalg::cokernel(chain.quotient_relations), *chain.stage};

  Formal formal;
  formal.system = s;
  formal.unresolved = !chain.stage.has_value();

  if (g > 0) {
    const std::size_t rel_rank = rels.cols() == 0 ? 0 : linalg::rank(rels);
    formal.rational_rank = linalg::rank(hconcat(power(lift, g), rels)) - rel_rank;
  }

  // Torsion subgroup: saturation of the relation lattice modulo the relations.
  const IntMatrix sat = rels.cols() == 0 ? IntMatrix(g, 0) : linalg::saturation_basis(rels);
  if (sat.cols() > 0) {
    const LatticeSolver in_sat(sat);
    const IntMatrix torsion_rels = in_sat.solve_columns(rels);
    const IntMatrix torsion_lift = in_sat.solve_columns(lift * sat);
    const KernelChain torsion_chain = stabilize_kernels(torsion_rels, torsion_lift, budget);
    formal.torsion_colimit = linalg::cokernel(torsion_chain.quotient_relations);
    formal.torsion_resolved = torsion_chain.stage.has_value();
  }
  formal.unresolved = formal.unresolved || !formal.torsion_resolved;

  if (formal.torsion_resolved && formal.rational_rank > 0) {
    for (const Integer& p : probe_set(s, options)) {
      const std::size_t total = eventual_rank_mod(lift, rels, p);
      std::size_t torsion_part = 0;
      for (const auto& t : formal.torsion_colimit.torsion())
        if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++torsion_part;
      const std::size_t free_part = total - torsion_part;
      if (free_part == 0) formal.inverted_primes.push_back(p);
      else if (free_part < formal.rational_rank) formal.partially_inverted.push_back({p, free_part});
    }
  }
  return formal;
}

bool is_resolved(const ColimitVerdict& v) {
  if (const auto* f = std::get_if<Formal>(&v)) return !f->unresolved;
  return true;
}

namespace {

std::string prime_list(const std::vector<Integer>& primes) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i].get_str();
  os << '}';
  return os.str();
}

std::string formal_summary(const Formal& f) {
  std::ostringstream os;
  if (f.rational_rank == 0) {
    os << "0";
  } else {
    const std::string local = f.inverted_primes.empty() ? std::string("Z")
                                                        : "Z localized away from " + prime_list(f.inverted_primes);
    if (f.rational_rank == 1) os << local;
    else os << "rank-" << f.rational_rank << " subgroup of Q^" << f.rational_rank << " containing (" << local << ")^" << f.rational_rank;
    for (const auto& pr : f.partially_inverted)
      os << ", " << pr.prime.get_str() << "-rank " << pr.rank;
  }
  if (!f.torsion_colimit.is_trivial()) os << " + torsion " << to_string(f.torsion_colimit);
  if (f.unresolved) os << " (unresolved within budget)";
  return os.str();
}

}  // namespace

std::string summary(const ColimitVerdict& v) {
  if (const auto* st = std::get_if<Stabilized>(&v)) return to_string(st->group);
  return formal_summary(std::get<Formal>(v));
}

std::string to_string(const ColimitVerdict& v) {
  if (const auto* st = std::get_if<Stabilized>(&v))
    return to_string(st->group) + " (stabilized at stage " + std::to_string(st->stage) + ")";
  const Formal& f = std::get<Formal>(v);
  std::ostringstream os;
  os << formal_summary(f) << " [colimit of Z^" << f.system.base.generators;
  if (f.system.base.relations.cols() > 0) os << " / colspan " << linalg::to_string(f.system.base.relations);
  os << " under " << linalg::to_string(f.system.endo.lift) << "]";
  return os.str();
}

}  // namespace ample::abelian
