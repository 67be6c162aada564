#include "ample/linalg/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "ample/linalg/parallel.hpp"

namespace ample::linalg {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Working state for the elimination. Row operations act on A and U, column
// operations on A and V; the inverses, when tracked, absorb the inverse
// elementary matrices from the other side so that U_inv * U = I throughout.
class SmithWorkspace {
 public:
  SmithWorkspace(const IntMatrix& m, bool track_inverses)
      : a_(m),
        u_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        track_(track_inverses) {
    if (track_) {
      u_inv_ = IntMatrix::identity(m.rows());
      v_inv_ = IntMatrix::identity(m.cols());
    }
  }

  void run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!select_pivot(t)) break;
      reduce_pivot(t);
      if (sgn(a_(t, t)) < 0) negate_row(t);
    }
  }

  SnfDecomposition result() && {
    SnfDecomposition out{std::move(u_), std::move(a_), std::move(v_), std::nullopt, std::nullopt};
    if (track_) {
      out.U_inverse = std::move(u_inv_);
      out.V_inverse = std::move(v_inv_);
    }
    return out;
  }

 private:
  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool select_pivot(std::size_t t) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    for (std::size_t r = t; r < a_.rows(); ++r)
      for (std::size_t c = t; c < a_.cols(); ++c) {
        if (sgn(a_(r, c)) == 0) continue;
        if (!found || cmpabs(a_(r, c), a_(best_r, best_c)) < 0) {
          best_r = r;
          best_c = c;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      eliminate_below(t);
      eliminate_right(t);

      // Remainders smaller than the pivot may survive; promote the smallest.
      std::size_t best = 0;
      bool in_column = false, found = false;
      for (std::size_t r = t + 1; r < a_.rows(); ++r)
        if (sgn(a_(r, t)) != 0 && (!found || cmpabs(a_(r, t), best_value(t, best, in_column)) < 0)) {
          best = r;
          in_column = true;
          found = true;
        }
      for (std::size_t c = t + 1; c < a_.cols(); ++c)
        if (sgn(a_(t, c)) != 0 && (!found || cmpabs(a_(t, c), best_value(t, best, in_column)) < 0)) {
          best = c;
          in_column = false;
          found = true;
        }
      if (found) {
        if (in_column) swap_rows(t, best);
        else swap_cols(t, best);
        continue;
      }

      // Row and column are clear; enforce divisibility on the trailing block.
      const std::size_t offender = find_non_divisible_row(t);
      if (offender == a_.rows()) return;
      add_row(t, offender);
    }
  }

  const Integer& best_value(std::size_t t, std::size_t idx, bool in_column) const {
    return in_column ? a_(idx, t) : a_(t, idx);
  }

  std::size_t find_non_divisible_row(std::size_t t) const {
    const Integer& p = a_(t, t);
    for (std::size_t r = t + 1; r < a_.rows(); ++r)
      for (std::size_t c = t + 1; c < a_.cols(); ++c)
        if (sgn(a_(r, c)) != 0 && !mpz_divisible_p(a_(r, c).get_mpz_t(), p.get_mpz_t())) return r;
    return a_.rows();
  }

  // row_i -= q_i * row_t for every i > t.
  void eliminate_below(std::size_t t) {
    const std::size_t m = a_.rows();
    if (t + 1 >= m) return;
    std::vector<Integer> q(m);
    bool any = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (sgn(a_(i, t)) == 0) continue;
      mpz_tdiv_q(q[i].get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
      any = any || sgn(q[i]) != 0;
    }
    if (!any) return;

    const std::vector<std::size_t> a_support = row_support(a_, t, t);
    const std::vector<std::size_t> u_support = row_support(u_, t, 0);
    const auto n_rows = static_cast<std::ptrdiff_t>(m);
    const bool go = worth_parallelizing((m - t) * (a_support.size() + u_support.size()));
#pragma omp parallel for schedule(dynamic, 8) if (go)
    for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(t) + 1; ii < n_rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      if (sgn(q[i]) == 0) continue;
      for (std::size_t c : a_support) a_(i, c) -= q[i] * a_(t, c);
      for (std::size_t c : u_support) u_(i, c) -= q[i] * u_(t, c);
    }
    if (track_) {
      // U_inv column t += sum_i q_i * column i.
      const auto n = static_cast<std::ptrdiff_t>(u_inv_.rows());
#pragma omp parallel for if (go)
      for (std::ptrdiff_t rr = 0; rr < n; ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(q[i]) != 0 && sgn(u_inv_(r, i)) != 0) u_inv_(r, t) += q[i] * u_inv_(r, i);
      }
    }
  }

  // col_j -= q_j * col_t for every j > t.
  void eliminate_right(std::size_t t) {
    const std::size_t n = a_.cols();
    if (t + 1 >= n) return;
    std::vector<Integer> q(n);
    bool any = false;
    for (std::size_t j = t + 1; j < n; ++j) {
      if (sgn(a_(t, j)) == 0) continue;
      mpz_tdiv_q(q[j].get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
      any = any || sgn(q[j]) != 0;
    }
    if (!any) return;

    std::vector<std::size_t> targets;
    for (std::size_t j = t + 1; j < n; ++j)
      if (sgn(q[j]) != 0) targets.push_back(j);

    const bool go = worth_parallelizing((a_.rows() + v_.rows()) * targets.size());
    apply_column_update(a_, t, q, targets, go);
    apply_column_update(v_, t, q, targets, go);
    if (track_) {
      // V_inv row t += sum_j q_j * row j.
      const auto cols = static_cast<std::ptrdiff_t>(v_inv_.cols());
#pragma omp parallel for if (go)
      for (std::ptrdiff_t cc = 0; cc < cols; ++cc) {
        const auto c = static_cast<std::size_t>(cc);
        for (std::size_t j : targets)
          if (sgn(v_inv_(j, c)) != 0) v_inv_(t, c) += q[j] * v_inv_(j, c);
      }
    }
  }

  static void apply_column_update(IntMatrix& mat, std::size_t t, const std::vector<Integer>& q,
                                  const std::vector<std::size_t>& targets, bool go) {
    const auto n_rows = static_cast<std::ptrdiff_t>(mat.rows());
#pragma omp parallel for schedule(dynamic, 8) if (go)
    for (std::ptrdiff_t rr = 0; rr < n_rows; ++rr) {
      const auto r = static_cast<std::size_t>(rr);
      if (sgn(mat(r, t)) == 0) continue;
      for (std::size_t j : targets) mat(r, j) -= q[j] * mat(r, t);
    }
  }

  static std::vector<std::size_t> row_support(const IntMatrix& mat, std::size_t row, std::size_t from) {
    std::vector<std::size_t> support;
    for (std::size_t c = from; c < mat.cols(); ++c)
      if (sgn(mat(row, c)) != 0) support.push_back(c);
    return support;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap_ranges(a_.row(i).begin(), a_.row(i).end(), a_.row(j).begin());
    std::swap_ranges(u_.row(i).begin(), u_.row(i).end(), u_.row(j).begin());
    if (track_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    if (track_) std::swap_ranges(v_inv_.row(i).begin(), v_inv_.row(i).end(), v_inv_.row(j).begin());
  }

  // row_t += row_i
  void add_row(std::size_t t, std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(t, c) += a_(i, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(t, c) += u_(i, c);
    if (track_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) -= u_inv_(r, t);
  }

  void negate_row(std::size_t t) {
    for (auto& e : a_.row(t)) e = -e;
    for (auto& e : u_.row(t)) e = -e;
    if (track_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, t) = -u_inv_(r, t);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix v_;
  IntMatrix u_inv_;
  IntMatrix v_inv_;
  bool track_;
};

}  // namespace

std::size_t SnfDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t limit = std::min(D.rows(), D.cols());
  while (r < limit && sgn(D(r, r)) != 0) ++r;
  return r;
}

std::vector<Integer> SnfDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  const std::size_t r = rank();
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.push_back(D(i, i));
  return out;
}

SnfDecomposition smith_normal_form(const IntMatrix& m, SnfOptions options) {
  SmithWorkspace ws(m, options.track_inverses);
  ws.run();
  return std::move(ws).result();
}

abelian::FgAbelianGroup cokernel(const IntMatrix& m) {
  const SnfDecomposition snf = smith_normal_form(m);
  const std::vector<Integer> factors = snf.invariant_factors();
  std::vector<Integer> torsion;
  for (const auto& d : factors)
    if (d > 1) torsion.push_back(d);
  return abelian::FgAbelianGroup::from_canonical(m.rows() - factors.size(), std::move(torsion));
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const SnfDecomposition snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  return snf.V.columns(r, m.cols() - r);
}

std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

IntMatrix column_span_basis(const IntMatrix& m) {
  const SnfDecomposition snf = smith_normal_form(m, {.track_inverses = true});
  const std::size_t r = snf.rank();
  IntMatrix basis = snf.U_inverse->columns(0, r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t row = 0; row < basis.rows(); ++row) basis(row, c) *= snf.D(c, c);
  return basis;
}

IntMatrix saturation_basis(const IntMatrix& m) {
  const SnfDecomposition snf = smith_normal_form(m, {.track_inverses = true});
  return snf.U_inverse->columns(0, snf.rank());
}

std::size_t rank_mod_p(const IntMatrix& m, unsigned long p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: modulus must be a prime >= 2");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<unsigned long> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const Integer& e = m.entries()[i];
    a[i] = mpz_fdiv_ui(e.get_mpz_t(), p);
  }
  auto at = [&](std::size_t r, std::size_t c) -> unsigned long& { return a[r * cols + c]; };
  auto mulmod = [p](unsigned long x, unsigned long y) {
    return static_cast<unsigned long>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto inverse = [&](unsigned long x) {
    // Fermat: x^(p-2)
    unsigned long result = 1, base = x, e = p - 2;
    while (e > 0) {
      if (e & 1UL) result = mulmod(result, base);
      base = mulmod(base, base);
      e >>= 1UL;
    }
    return result;
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(at(rank, k), at(pivot, k));
    const unsigned long inv = inverse(at(rank, c));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (at(r, c) == 0) continue;
      const unsigned long f = mulmod(at(r, c), inv);
      for (std::size_t k = c; k < cols; ++k) at(r, k) = (at(r, k) + p - mulmod(f, at(rank, k))) % p;
    }
    ++rank;
  }
  return rank;
}

LatticeSolver::LatticeSolver(const IntMatrix& m) : snf_(smith_normal_form(m)), factors_(snf_.invariant_factors()) {}

std::optional<std::vector<Integer>> LatticeSolver::solve(std::span<const Integer> b) const {
  if (b.size() != snf_.U.cols()) throw std::invalid_argument("LatticeSolver::solve: right-hand side has wrong length");
  // D y = U b, x = V y.
  const std::vector<Integer> ub = snf_.U * b;
  const std::size_t r = factors_.size();
  std::vector<Integer> y(snf_.V.rows());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), factors_[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), factors_[i].get_mpz_t());
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * std::span<const Integer>(y);
}

IntMatrix LatticeSolver::solve_columns(const IntMatrix& b) const {
  if (b.rows() != snf_.U.cols()) throw std::invalid_argument("LatticeSolver::solve_columns: right-hand side has wrong height");
  const IntMatrix ub = snf_.U * b;
  const std::size_t r = factors_.size();
  IntMatrix y(snf_.V.rows(), b.cols());
  for (std::size_t i = 0; i < ub.rows(); ++i)
    for (std::size_t c = 0; c < ub.cols(); ++c) {
      if (i < r) {
        if (!mpz_divisible_p(ub(i, c).get_mpz_t(), factors_[i].get_mpz_t()))
          throw std::domain_error("LatticeSolver: column is not in the lattice span");
        mpz_divexact(y(i, c).get_mpz_t(), ub(i, c).get_mpz_t(), factors_[i].get_mpz_t());
      } else if (sgn(ub(i, c)) != 0) {
        throw std::domain_error("LatticeSolver: column is not in the lattice span");
      }
    }
  return snf_.V * y;
}

bool LatticeSolver::columns_in_span(const IntMatrix& b) const {
  for (std::size_t c = 0; c < b.cols(); ++c)
    if (!in_span(b.column_vector(c))) return false;
  return true;
}

}  // namespace ample::linalg
