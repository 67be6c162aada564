#include <exception>
#include <map>

#include "ample/homology/homology.hpp"
#include "ample/linalg/parallel.hpp"

namespace ample::homology {

namespace {

using Subset = std::vector<std::size_t>;

// All p-element subsets of {0..k-1} in lexicographic order.
std::vector<Subset> combinations(std::size_t k, std::size_t p) {
  std::vector<Subset> out;
  Subset cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  if (p > k) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = p;
    while (i > 0 && cur[i - 1] == k - p + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

void add_block(IntMatrix& into, std::size_t row0, std::size_t col0, const IntMatrix& block, long sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c)
      if (sgn(block(r, c)) != 0) into(row0 + r, col0 + c) += sign * block(r, c);
}

}  // namespace

ChainComplexWindow koszul_complex(const models::DrModel& m, const FgAbelianGroup& coefficients) {
  const std::size_t k = m.rank();
  const std::size_t n = m.size();
  std::vector<IntMatrix> phi_minus_one;
  for (const auto& a : m.matrices) phi_minus_one.push_back(a.transpose() - IntMatrix::identity(n));

  std::vector<std::vector<Subset>> subsets(k + 1);
  for (std::size_t p = 0; p <= k; ++p) subsets[p] = combinations(k, p);

  ChainComplexWindow window;
  for (std::size_t p = 0; p <= k; ++p) window.chains.push_back(abelian::tensor_lattice(subsets[p].size() * n, coefficients));

  for (std::size_t p = 1; p <= k; ++p) {
    std::map<Subset, std::size_t> lower_index;
    for (std::size_t i = 0; i < subsets[p - 1].size(); ++i) lower_index[subsets[p - 1][i]] = i;
    IntMatrix d(subsets[p - 1].size() * n, subsets[p].size() * n);
    for (std::size_t col = 0; col < subsets[p].size(); ++col) {
      const Subset& s = subsets[p][col];
      for (std::size_t j = 0; j < s.size(); ++j) {
        Subset face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        // (-1)^(j+1) with j counted from 1.
        add_block(d, lower_index.at(face) * n, col * n, phi_minus_one[s[j]], j % 2 == 0 ? 1 : -1);
      }
    }
    window.boundaries.push_back(abelian::tensor_lift(d, coefficients));
  }
  return window;
}

HomologyResult koszul_colimit_homology(const models::DrModel& m, const FgAbelianGroup& coefficients, std::size_t budget,
                                       const EngineOptions& options) {
  const std::size_t k = m.rank();
  const std::size_t n = m.size();
  const ChainComplexWindow window = koszul_complex(m, coefficients);
  window.verify();

  IntMatrix product = IntMatrix::identity(n);
  for (const auto& a : m.matrices) product = product * a;
  const IntMatrix connecting = product.transpose();

  HomologyResult result;
  result.model_kind = k == 1 ? "sft" : "dr";
  result.coefficients = coefficients;
  result.degrees.resize(k + 1);
  result.reliable_up_to = k;
  result.tail = TailKind::zero;
  result.tail_reason = "Koszul complex has length " + std::to_string(k);
  result.metadata = models::GroupoidMetadata{true, true, true};

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (k > 0 && linalg::available_threads() > 1)
  for (std::size_t p = 0; p <= k; ++p) {
    try {
      const abelian::HomologyPresentation h = window.homology_at(p);
      const IntMatrix chain_map =
          abelian::tensor_lift(kronecker(IntMatrix::identity(combinations(k, p).size()), connecting), coefficients);
      const abelian::GroupHom endo = abelian::induced_map(h, h, chain_map);
      const abelian::StationaryColimit system(h.group, endo.lift);
      ColimitVerdict verdict = abelian::colimit_stabilize(system, budget, options.colimit);
      result.degrees[p] = HomologyValue{std::move(verdict), "Koszul stage homology, colimit under (A_1...A_k)^t"};
    } catch (...) {
#pragma omp critical(ample_koszul_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace ample::homology
