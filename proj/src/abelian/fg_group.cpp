#include "ample/abelian/fg_group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ample/linalg/smith.hpp"

namespace ample::abelian {

FgAbelianGroup FgAbelianGroup::free(std::size_t rank) { return from_canonical(rank, {}); }

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  const Integer orders[] = {order};
  return from_cyclic_orders(orders);
}

FgAbelianGroup FgAbelianGroup::from_cyclic_orders(std::span<const Integer> orders) {
  std::vector<Integer> diag(orders.begin(), orders.end());
  for (auto& d : diag) d = abs(d);
  return linalg::cokernel(linalg::IntMatrix::diagonal(diag));
}

FgAbelianGroup FgAbelianGroup::from_canonical(std::size_t free_rank, std::vector<Integer> torsion) {
  FgAbelianGroup g;
  g.free_rank_ = free_rank;
  g.torsion_ = std::move(torsion);
  return g;
}

Integer FgAbelianGroup::torsion_order() const {
  Integer order = 1;
  for (const auto& t : torsion_) order *= t;
  return order;
}

std::vector<Integer> FgAbelianGroup::cyclic_orders() const {
  std::vector<Integer> orders(free_rank_, Integer(0));
  orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  return orders;
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Integer> torsion = a.torsion();
  torsion.insert(torsion.end(), b.torsion().begin(), b.torsion().end());
  FgAbelianGroup t = FgAbelianGroup::from_cyclic_orders(torsion);
  return FgAbelianGroup::from_canonical(a.free_rank() + b.free_rank(), t.torsion());
}

std::string to_string(const FgAbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (g.free_rank() > 0) {
    os << 'Z';
    if (g.free_rank() > 1) os << '^' << g.free_rank();
    first = false;
  }
  // Repeated factors are collapsed: Z/2 + Z/2 -> (Z/2)^2.
  const auto& t = g.torsion();
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (!first) os << " + ";
    first = false;
    if (j - i == 1) os << "Z/" << t[i].get_str();
    else os << "(Z/" << t[i].get_str() << ")^" << (j - i);
    i = j;
  }
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

std::size_t parse_exponent(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '^') return 1;
  ++pos;
  const std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (start == pos) throw std::invalid_argument("group: missing exponent after '^'");
  return std::stoul(text.substr(start, pos - start));
}

// One summand: "0", "Z", "Z^k", "Z/n", "(Z/n)^k".
void parse_summand(const std::string& raw, std::vector<Integer>& orders) {
  const std::string s = strip(raw);
  if (s == "0") return;
  std::size_t pos = 0;
  bool paren = false;
  if (!s.empty() && s[0] == '(') {
    paren = true;
    ++pos;
  }
  if (pos >= s.size() || s[pos] != 'Z') throw std::invalid_argument("group: cannot parse summand '" + s + "'");
  ++pos;
  Integer order = 0;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("group: missing modulus in '" + s + "'");
    order = Integer(s.substr(start, pos - start));
  }
  if (paren) {
    if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("group: unbalanced parenthesis in '" + s + "'");
    ++pos;
  }
  const std::size_t times = parse_exponent(s, pos);
  if (pos != s.size()) throw std::invalid_argument("group: trailing characters in '" + s + "'");
  for (std::size_t i = 0; i < times; ++i) orders.push_back(order);
}

}  // namespace

FgAbelianGroup parse_group(const std::string& text) {
  std::vector<Integer> orders;
  std::size_t start = 0;
  for (;;) {
    const std::size_t plus = text.find('+', start);
    parse_summand(text.substr(start, plus == std::string::npos ? std::string::npos : plus - start), orders);
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return FgAbelianGroup::from_cyclic_orders(orders);
}

}  // namespace ample::abelian
