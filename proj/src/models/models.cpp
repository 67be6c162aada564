#include "ample/models/models.hpp"

#include <sstream>

namespace ample::models {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string format_issues(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "model validation failed";
  for (const auto& i : issues) os << "\n  " << i.location << ": " << i.message;
  return os.str();
}

void check_nonnegative(const IntMatrix& m, const std::string& where, std::vector<ValidationIssue>& out) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) < 0) {
        out.push_back({where, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is negative"});
        return;
      }
}

void check_finite(const FiniteGroupoid& g, std::vector<ValidationIssue>& out) {
  const std::size_t n = g.arrows();
  auto fail = [&out](std::string where, std::string what) { out.push_back({std::move(where), std::move(what)}); };
  if (g.range.size() != n) return fail("arrows", "source and range tables differ in length");
  if (g.inverse.size() != n) return fail("inverse", "expected " + std::to_string(n) + " entries");
  if (g.units.size() != g.objects) return fail("units", "expected one unit per object");
  if (g.products.size() != n * n) return fail("products", "product table has the wrong size");
  for (std::size_t a = 0; a < n; ++a)
    if (g.source[a] >= g.objects || g.range[a] >= g.objects)
      return fail("arrow " + std::to_string(a), "endpoint is not an object");

  const std::size_t before = out.size();
  for (std::size_t x = 0; x < g.objects; ++x) {
    const std::size_t u = g.units[x];
    if (u >= n || g.source[u] != x || g.range[u] != x)
      fail("unit " + std::to_string(x), "unit arrow is missing or not a loop at its object");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = g.product(a, b);
      const std::string where = "product (" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (!g.composable(a, b)) {
        if (ab != kNoArrow) fail(where, "defined on a non-composable pair");
        continue;
      }
      if (ab == kNoArrow || ab >= n) fail(where, "missing for a composable pair");
      else if (g.range[ab] != g.range[a] || g.source[ab] != g.source[b]) fail(where, "has wrong endpoints");
    }
  if (out.size() != before) return;

  for (std::size_t a = 0; a < n; ++a) {
    const std::string where = "arrow " + std::to_string(a);
    if (g.product(g.units[g.range[a]], a) != a || g.product(a, g.units[g.source[a]]) != a)
      fail(where, "unit law fails");
    const std::size_t inv = g.inverse[a];
    if (inv == kNoArrow || inv >= n) {
      fail(where, "has no inverse");
      continue;
    }
    if (g.source[inv] != g.range[a] || g.range[inv] != g.source[a]) {
      fail(where, "inverse has wrong endpoints");
      continue;
    }
    if (g.product(a, inv) != g.units[g.range[a]] || g.product(inv, a) != g.units[g.source[a]])
      fail(where, "inverse law fails");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        if (g.product(g.product(a, b), c) != g.product(a, g.product(b, c))) {
          fail("triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")",
               "associativity fails");
          return;
        }
      }
    }
}

void check_dr(const DrModel& m, std::vector<ValidationIssue>& out) {
  if (m.matrices.empty()) {
    out.push_back({"matrices", "rank k must be at least 1"});
    return;
  }
  const std::size_t n = m.matrices.front().rows();
  for (std::size_t i = 0; i < m.matrices.size(); ++i) {
    const auto& a = m.matrices[i];
    const std::string where = "matrix " + std::to_string(i + 1);
    if (!a.is_square() || a.rows() != n) {
      out.push_back({where, "must be square of size " + std::to_string(n)});
      return;
    }
    check_nonnegative(a, where, out);
  }
  for (std::size_t i = 0; i < m.matrices.size(); ++i)
    for (std::size_t j = i + 1; j < m.matrices.size(); ++j)
      if (!(m.matrices[i] * m.matrices[j] == m.matrices[j] * m.matrices[i]))
        out.push_back({"matrices", "matrices " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " do not commute"});
}

void check_bratteli(const BratteliModel& m, std::vector<ValidationIssue>& out) {
  if (m.levels.empty() && m.tail.empty()) {
    out.push_back({"levels", "diagram has no levels"});
    return;
  }
  auto chain = [&out](const std::vector<IntMatrix>& mats, const std::string& name) {
    for (std::size_t j = 0; j < mats.size(); ++j) {
      check_nonnegative(mats[j], name + " " + std::to_string(j), out);
      if (j > 0 && mats[j].cols() != mats[j - 1].rows())
        out.push_back({name + " " + std::to_string(j), "columns do not match rows of the previous level"});
    }
  };
  chain(m.levels, "level");
  chain(m.tail, "tail");
  if (!m.tail.empty()) {
    if (!m.levels.empty() && m.tail.front().cols() != m.levels.back().rows())
      out.push_back({"tail 0", "columns do not match rows of the last level"});
    if (m.tail.back().rows() != m.tail.front().cols())
      out.push_back({"tail", "block does not close up: rows of its last matrix must equal columns of its first"});
  }
}

void check_odometer(const OdometerModel& m, std::vector<ValidationIssue>& out) {
  if (m.period.empty()) out.push_back({"period", "the periodic tail of multipliers must be nonempty"});
  auto each = [&out](const std::vector<Integer>& qs, const std::string& name) {
    for (std::size_t i = 0; i < qs.size(); ++i)
      if (qs[i] < 2) out.push_back({name + " " + std::to_string(i), "multiplier must be at least 2"});
  };
  each(m.prefix, "prefix");
  each(m.period, "period");
}

void check_fixture(const HomologyFixture& f, std::vector<ValidationIssue>& out) {
  if (f.groups.empty()) out.push_back({"groups", "at least H_0 must be given"});
  if (f.tail != FixtureTail::odd_periodic && !f.odd_group.is_trivial())
    out.push_back({"tail", "odd_group is only meaningful with an odd_periodic tail"});
  if (f.tail == FixtureTail::odd_periodic && f.odd_group.is_trivial())
    out.push_back({"tail", "odd_periodic tail needs a nonzero odd_group"});
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(format_issues(issues)), issues_(std::move(issues)) {}

Integer OdometerModel::multiplier(std::size_t index) const {
  if (index < prefix.size()) return prefix[index];
  return period[(index - prefix.size()) % period.size()];
}

std::string kind_name(const Model& m) {
  return std::visit(overloaded{
                        [](const FiniteGroupoid&) { return std::string("finite"); },
                        [](const SftModel&) { return std::string("sft"); },
                        [](const DrModel&) { return std::string("dr"); },
                        [](const BratteliModel&) { return std::string("bratteli"); },
                        [](const OdometerModel&) { return std::string("odometer"); },
                        [](const HomologyFixture&) { return std::string("fixture"); },
                    },
                    m);
}

std::vector<ValidationIssue> check(const Model& m) {
  std::vector<ValidationIssue> out;
  std::visit(overloaded{
                 [&](const FiniteGroupoid& g) { check_finite(g, out); },
                 [&](const SftModel& s) {
                   if (!s.adjacency.is_square() || s.adjacency.rows() == 0) out.push_back({"adjacency", "must be a nonempty square matrix"});
                   check_nonnegative(s.adjacency, "adjacency", out);
                 },
                 [&](const DrModel& d) { check_dr(d, out); },
                 [&](const BratteliModel& b) { check_bratteli(b, out); },
                 [&](const OdometerModel& o) { check_odometer(o, out); },
                 [&](const HomologyFixture& f) { check_fixture(f, out); },
             },
             m);
  return out;
}

void validate(const Model& m) {
  auto issues = check(m);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

bool is_irreducible(const SftModel& m) {
  const std::size_t n = m.adjacency.rows();
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w)
        if (sgn(m.adjacency(v, w)) > 0 && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    for (std::size_t w = 0; w < n; ++w)
      if (!seen[w]) return false;
  }
  return true;
}

DrModel as_dr(const SftModel& m) { return DrModel{{m.adjacency}}; }

GroupoidMetadata derived_metadata(const Model& m) {
  return std::visit(overloaded{
                        [](const FiniteGroupoid& g) { return GroupoidMetadata{g.is_principal(), true, true}; },
                        [](const OdometerModel& o) {
                          return GroupoidMetadata{o.stabilizers == StabilizerType::torsion_free, true, true};
                        },
                        [](const HomologyFixture& f) { return f.metadata; },
                        [](const auto&) { return GroupoidMetadata{true, true, true}; },
                    },
                    m);
}

}  // namespace ample::models
