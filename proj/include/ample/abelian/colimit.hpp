#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ample/abelian/fg_group.hpp"
#include "ample/abelian/presented.hpp"

namespace ample::abelian {

/// colim(base --endo--> base --endo--> ...). Represents groups such as Z[1/n]
/// that are not finitely generated.
struct StationaryColimit {
  PresentedGroup base;
  GroupHom endo;

  StationaryColimit() = default;
  StationaryColimit(PresentedGroup base_group, IntMatrix endo_lift);

  friend bool operator==(const StationaryColimit&, const StationaryColimit&) = default;
};

/// The colimit is canonically isomorphic to `group` from stage `stage` on.
struct Stabilized {
  FgAbelianGroup group;
  std::size_t stage = 0;

  friend bool operator==(const Stabilized&, const Stabilized&) = default;
};

struct PrimeRank {
  Integer prime;
  // dim over F_p of F / pF, F the torsion-free quotient of the colimit.
  std::size_t rank = 0;

  friend bool operator==(const PrimeRank&, const PrimeRank&) = default;
};

/// A non-finitely-generated colimit, kept as its defining system plus
/// invariants extracted from it. No isomorphism test between two Formal
/// values is offered.
struct Formal {
  StationaryColimit system;
  std::size_t rational_rank = 0;
  // Probe primes p with F / pF = 0 (F nonzero).
  std::vector<Integer> inverted_primes;
  // Probe primes with 0 < dim F / pF < rational_rank.
  std::vector<PrimeRank> partially_inverted;
  FgAbelianGroup torsion_colimit;
  bool torsion_resolved = true;
  // The kernel chain or the torsion colimit did not settle within the budget.
  bool unresolved = false;

  // Compares the stored data only; equal values are isomorphic, not conversely.
  friend bool operator==(const Formal&, const Formal&) = default;
};

using ColimitVerdict = std::variant<Stabilized, Formal>;

struct ColimitOptions {
  std::vector<Integer> probe_primes = default_probe_primes();
  // Also probe the primes dividing entries (and the determinant) of the endomorphism.
  bool probe_entry_primes = true;

  static std::vector<Integer> default_probe_primes();
};

/// Classifies colim(S) within `budget` iterations (budget >= 1).
ColimitVerdict colimit_stabilize(const StationaryColimit& s, std::size_t budget, const ColimitOptions& options = {});

bool is_resolved(const ColimitVerdict& v);
/// "Z localized away from {2}" style rendering with the raw system appended for Formal values.
std::string to_string(const ColimitVerdict& v);
/// Short name: the group for Stabilized, "Z[1/2]"-style summary for Formal.
std::string summary(const ColimitVerdict& v);

std::vector<Integer> primes_up_to(unsigned long bound);

}  // namespace ample::abelian
