#include "ample/reference/reference.hpp"

#include <map>
#include <utility>

namespace ample::reference {

namespace {

using linalg::Integer;

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row_dst -= q * row_src
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

// Position of a nonzero entry of smallest absolute value in the block [t.., t..].
bool smallest_entry(const IntMatrix& d, std::size_t t, std::size_t& row, std::size_t& col) {
  bool found = false;
  for (std::size_t r = t; r < d.rows(); ++r)
    for (std::size_t c = t; c < d.cols(); ++c)
      if (sgn(d(r, c)) != 0 && (!found || abs(d(r, c)) < abs(d(row, col)))) {
        row = r;
        col = c;
        found = true;
      }
  return found;
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

linalg::SnfDecomposition smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!smallest_entry(d, t, pr, pc)) break;
    swap_rows(d, t, pr);
    swap_rows(u, t, pr);
    swap_cols(d, t, pc);
    swap_cols(v, t, pc);
    while (true) {
      // Smallest nonzero entry of column t and row t becomes the pivot.
      std::size_t br = t, bc = t;
      for (std::size_t r = t; r < d.rows(); ++r)
        if (sgn(d(r, t)) != 0 && (sgn(d(br, bc)) == 0 || abs(d(r, t)) < abs(d(br, bc)))) {
          br = r;
          bc = t;
        }
      for (std::size_t c = t; c < d.cols(); ++c)
        if (sgn(d(t, c)) != 0 && (sgn(d(br, bc)) == 0 || abs(d(t, c)) < abs(d(br, bc)))) {
          br = t;
          bc = c;
        }
      swap_rows(d, t, br);
      swap_rows(u, t, br);
      swap_cols(d, t, bc);
      swap_cols(v, t, bc);
      bool changed = false;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (sgn(d(r, t)) == 0) continue;
        const Integer q = d(r, t) / d(t, t);
        add_row_multiple(d, r, t, q);
        add_row_multiple(u, r, t, q);
        changed |= sgn(d(r, t)) != 0;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (sgn(d(t, c)) == 0) continue;
        const Integer q = d(t, c) / d(t, t);
        add_col_multiple(d, c, t, q);
        add_col_multiple(v, c, t, q);
        changed |= sgn(d(t, c)) != 0;
      }
      if (changed) continue;
      // Row t and column t are clear; enforce divisibility of the remainder.
      bool divisible = true;
      for (std::size_t r = t + 1; r < d.rows() && divisible; ++r)
        for (std::size_t c = t + 1; c < d.cols(); ++c)
          if (sgn(d(r, c) % d(t, t)) != 0) {
            add_row_multiple(d, t, r, -1);
            add_row_multiple(u, t, r, -1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (sgn(d(t, t)) < 0) {
      for (std::size_t c = 0; c < d.cols(); ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
    }
  }
  return linalg::SnfDecomposition{std::move(u), std::move(d), std::move(v), std::nullopt, std::nullopt};
}

models::NerveLevel nerve_level(const models::FiniteGroupoid& g, std::size_t n) {
  models::NerveLevel level;
  level.degree = n;
  if (n == 0) {
    for (std::size_t x = 0; x < g.objects; ++x) level.cells.push_back(static_cast<std::uint32_t>(x));
    level.count = g.objects;
    return level;
  }
  const std::size_t arrows = g.arrows();
  std::vector<std::size_t> tuple(n, 0);
  if (arrows == 0) return level;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = g.composable(tuple[i], tuple[i + 1]);
    if (ok) {
      for (auto a : tuple) level.cells.push_back(static_cast<std::uint32_t>(a));
      ++level.count;
    }
    std::size_t pos = n;
    while (pos > 0 && tuple[pos - 1] == arrows - 1) tuple[--pos] = 0;
    if (pos == 0) break;
    ++tuple[pos - 1];
  }
  return level;
}

std::vector<std::size_t> face_map(const models::FiniteGroupoid& g, const models::NerveLevel& level,
                                  const models::NerveLevel& below, std::size_t i) {
  const std::size_t n = level.degree;
  std::vector<std::size_t> out(level.count);
  if (n == 1) {
    for (std::size_t y = 0; y < level.count; ++y) {
      const std::size_t a = level.cell(y)[0];
      out[y] = i == 0 ? g.source[a] : g.range[a];
    }
    return out;
  }
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t x = 0; x < below.count; ++x) {
    const auto c = below.cell(x);
    index.emplace(std::vector<std::uint32_t>(c.begin(), c.end()), x);
  }
  for (std::size_t y = 0; y < level.count; ++y) {
    const auto c = level.cell(y);
    std::vector<std::uint32_t> face;
    for (std::size_t k = 0; k < n; ++k) {
      if (i == 0 && k == 0) continue;
      if (i == n && k == n - 1) continue;
      if (i > 0 && i < n && k == i) continue;
      if (i > 0 && i < n && k == i - 1) {
        face.push_back(static_cast<std::uint32_t>(g.product(c[i - 1], c[i])));
        continue;
      }
      face.push_back(c[k]);
    }
    out[y] = index.at(face);
  }
  return out;
}

IntMatrix bar_boundary(const models::FiniteGroupoid& g, const models::NerveLevel& level,
                       const models::NerveLevel& below) {
  IntMatrix d(below.count, level.count);
  for (std::size_t i = 0; i <= level.degree; ++i) {
    const auto f = reference::face_map(g, level, below, i);
    for (std::size_t y = 0; y < level.count; ++y) d(f[y], y) += i % 2 == 0 ? 1 : -1;
  }
  return d;
}

}  // namespace ample::reference
