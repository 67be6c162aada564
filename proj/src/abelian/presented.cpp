#include "ample/abelian/presented.hpp"

#include <utility>

#include "ample/linalg/smith.hpp"

namespace ample::abelian {

using linalg::LatticeSolver;

PresentedGroup::PresentedGroup(std::size_t gens, IntMatrix rels) : generators(gens), relations(std::move(rels)) {
  if (relations.rows() != generators) {
    if (relations.rows() == 0 && relations.cols() == 0) {
      relations = IntMatrix(generators, 0);
    } else {
      throw std::invalid_argument("PresentedGroup: relation matrix height differs from generator count");
    }
  }
}

PresentedGroup PresentedGroup::free(std::size_t rank) { return PresentedGroup(rank, IntMatrix(rank, 0)); }

PresentedGroup PresentedGroup::of(const FgAbelianGroup& g) {
  const std::size_t gens = g.free_rank() + g.torsion().size();
  IntMatrix rels(gens, g.torsion().size());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) rels(g.free_rank() + i, i) = g.torsion()[i];
  return PresentedGroup(gens, std::move(rels));
}

FgAbelianGroup canonicalize(const PresentedGroup& p) { return linalg::cokernel(p.relations); }

bool is_well_defined(const GroupHom& h) {
  if (h.lift.rows() != h.target.generators || h.lift.cols() != h.source.generators) return false;
  if (h.source.relations.cols() == 0) return true;
  const IntMatrix image = h.lift * h.source.relations;
  if (image.is_zero()) return true;
  return LatticeSolver(h.target.relations).columns_in_span(image);
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (first.target.generators != second.source.generators)
    throw std::invalid_argument("compose: intermediate groups differ");
  return GroupHom{first.source, second.target, second.lift * first.lift};
}

GroupHom identity_hom(const PresentedGroup& p) { return GroupHom{p, p, IntMatrix::identity(p.generators)}; }

HomologyPresentation homology_presented(const GroupHom& d_in, const GroupHom& d_out) {
  const std::size_t n = d_out.source.generators;
  if (d_in.target.generators != n) throw std::invalid_argument("homology: middle chain groups differ");
  if (d_in.lift.rows() != n || d_in.lift.cols() != d_in.source.generators || d_out.lift.cols() != n ||
      d_out.lift.rows() != d_out.target.generators)
    throw std::invalid_argument("homology: boundary lift has the wrong shape");

  const IntMatrix& target_rels = d_out.target.relations;
  const IntMatrix composite = d_out.lift * d_in.lift;
  if (!composite.is_zero()) {
    if (target_rels.cols() == 0 || !LatticeSolver(target_rels).columns_in_span(composite))
      throw MalformedComplex("homology: composite of consecutive boundaries is not zero");
  }

  // Cycles: x with d_out x in the span of the relations of C_{p-1}.
  IntMatrix cycles;
  if (target_rels.cols() == 0) {
    cycles = linalg::kernel_basis(d_out.lift);
  } else {
    const IntMatrix joint = linalg::kernel_basis(hconcat(d_out.lift, target_rels));
    cycles = linalg::column_span_basis(joint.rows_block(0, n));
  }

  // Boundaries plus the relations of C_p, in cycle coordinates.
  const IntMatrix boundaries = hconcat(d_in.lift, d_out.source.relations);
  IntMatrix coords(cycles.cols(), 0);
  if (boundaries.cols() > 0) {
    if (cycles.cols() == 0) {
      if (!boundaries.is_zero()) throw MalformedComplex("homology: boundaries are not cycles");
      coords = IntMatrix(0, boundaries.cols());
    } else {
      try {
        coords = LatticeSolver(cycles).solve_columns(boundaries);
      } catch (const std::domain_error&) {
        throw MalformedComplex("homology: boundaries are not cycles");
      }
    }
  }
  return HomologyPresentation{PresentedGroup(cycles.cols(), std::move(coords)), std::move(cycles)};
}

FgAbelianGroup homology_pair(const GroupHom& d_in, const GroupHom& d_out) {
  return canonicalize(homology_presented(d_in, d_out).group);
}

GroupHom induced_map(const HomologyPresentation& source, const HomologyPresentation& target,
                     const IntMatrix& chain_lift) {
  if (chain_lift.cols() != source.cycles.rows() || chain_lift.rows() != target.cycles.rows())
    throw std::invalid_argument("induced_map: chain map has the wrong shape");
  const IntMatrix image = chain_lift * source.cycles;
  IntMatrix coords(target.group.generators, source.group.generators);
  if (target.cycles.cols() > 0) {
    try {
      coords = LatticeSolver(target.cycles).solve_columns(image);
    } catch (const std::domain_error&) {
      throw MalformedComplex("induced_map: chain map does not send cycles to cycles");
    }
  } else if (!image.is_zero()) {
    throw MalformedComplex("induced_map: chain map does not send cycles to cycles");
  }
  return GroupHom{source.group, target.group, std::move(coords)};
}

PresentedGroup tensor_lattice(std::size_t n, const FgAbelianGroup& coefficients) {
  const std::vector<Integer> orders = coefficients.cyclic_orders();
  const std::size_t s = orders.size();
  std::size_t torsion_summands = 0;
  for (const auto& o : orders)
    if (sgn(o) != 0) ++torsion_summands;
  IntMatrix rels(n * s, n * torsion_summands);
  std::size_t col = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < s; ++k)
      if (sgn(orders[k]) != 0) rels(a * s + k, col++) = orders[k];
  return PresentedGroup(n * s, std::move(rels));
}

IntMatrix tensor_lift(const IntMatrix& lift, const FgAbelianGroup& coefficients) {
  const std::size_t s = coefficients.free_rank() + coefficients.torsion().size();
  return kronecker(lift, IntMatrix::identity(s));
}

FgAbelianGroup tensor_with(const FgAbelianGroup& g, const FgAbelianGroup& c) {
  const PresentedGroup pg = PresentedGroup::of(g);
  const PresentedGroup pc = PresentedGroup::of(c);
  const IntMatrix rels = hconcat(kronecker(pg.relations, IntMatrix::identity(pc.generators)),
                                 kronecker(IntMatrix::identity(pg.generators), pc.relations));
  return linalg::cokernel(rels);
}

FgAbelianGroup tor(const FgAbelianGroup& g, const FgAbelianGroup& c) {
  // 0 -> Z^m --R--> Z^gens -> g -> 0, tensored with c; Tor_1 is the homology at Z^m (x) c.
  const PresentedGroup pg = PresentedGroup::of(g);
  const std::size_t m = pg.relations.cols();
  const PresentedGroup top = tensor_lattice(m, c);
  const GroupHom d_out{top, tensor_lattice(pg.generators, c), tensor_lift(pg.relations, c)};
  const GroupHom d_in{PresentedGroup::free(0), top, IntMatrix(top.generators, 0)};
  return homology_pair(d_in, d_out);
}

}  // namespace ample::abelian
