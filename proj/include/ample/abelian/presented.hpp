#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "ample/abelian/fg_group.hpp"
#include "ample/linalg/int_matrix.hpp"

namespace ample::abelian {

using linalg::IntMatrix;

/// Z^generators / (column span of relations). relations has `generators` rows.
struct PresentedGroup {
  std::size_t generators = 0;
  IntMatrix relations;

  PresentedGroup() = default;
  PresentedGroup(std::size_t gens, IntMatrix rels);

  static PresentedGroup free(std::size_t rank);
  /// The canonical presentation of g: one generator per cyclic summand.
  static PresentedGroup of(const FgAbelianGroup& g);

  friend bool operator==(const PresentedGroup&, const PresentedGroup&) = default;
};

/// Homomorphism given by its action on generator lattices: lift maps
/// Z^source.generators -> Z^target.generators.
struct GroupHom {
  PresentedGroup source;
  PresentedGroup target;
  IntMatrix lift;

  friend bool operator==(const GroupHom&, const GroupHom&) = default;
};

/// A chain complex was fed to homology with a nonzero composite.
class MalformedComplex : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

FgAbelianGroup canonicalize(const PresentedGroup& p);

/// lift maps source relations into the span of target relations.
bool is_well_defined(const GroupHom& h);

GroupHom compose(const GroupHom& second, const GroupHom& first);
GroupHom identity_hom(const PresentedGroup& p);

/// Homology at the middle term, together with cycle representatives.
///
/// group.generators == cycles.cols(); column k of `cycles` is a chain in the
/// generator lattice of the middle term representing generator k.
struct HomologyPresentation {
  PresentedGroup group;
  IntMatrix cycles;
};

/// ker(d_out) / im(d_in) for d_in: C_{p+1} -> C_p and d_out: C_p -> C_{p-1}.
/// Chain groups may carry relations (coefficient modules); the composite must
/// vanish modulo the relations of C_{p-1}, otherwise MalformedComplex.
HomologyPresentation homology_presented(const GroupHom& d_in, const GroupHom& d_out);

/// Canonical form of homology_presented.
FgAbelianGroup homology_pair(const GroupHom& d_in, const GroupHom& d_out);

/// Map on homology induced by a chain map whose degree-p component is chain_lift
/// (target chain lattice x source chain lattice).
GroupHom induced_map(const HomologyPresentation& source, const HomologyPresentation& target,
                     const IntMatrix& chain_lift);

/// Chain group Z^n (x) C presented with n * (number of cyclic summands of C) generators.
PresentedGroup tensor_lattice(std::size_t n, const FgAbelianGroup& coefficients);
/// lift (x) id_C for a lattice map between Z^cols and Z^rows.
IntMatrix tensor_lift(const IntMatrix& lift, const FgAbelianGroup& coefficients);

FgAbelianGroup tensor_with(const FgAbelianGroup& g, const FgAbelianGroup& c);
/// Tor_1(g, c) from the two-step free resolution of g.
FgAbelianGroup tor(const FgAbelianGroup& g, const FgAbelianGroup& c);

}  // namespace ample::abelian
