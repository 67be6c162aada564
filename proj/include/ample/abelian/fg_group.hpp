#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ample::abelian {

using Integer = mpz_class;

/// Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_m with 2 <= t_1 | t_2 | ... | t_m.
///
/// The representation is canonical, so equality of groups is equality of the
/// stored data.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;

  static FgAbelianGroup trivial() { return {}; }
  static FgAbelianGroup free(std::size_t rank);
  static FgAbelianGroup cyclic(const Integer& order);  // order 0 means Z
  /// Canonicalizes an arbitrary list of cyclic orders (0 = infinite cyclic, 1 = trivial).
  static FgAbelianGroup from_cyclic_orders(std::span<const Integer> orders);
  /// Trusts the caller: torsion must already form a divisibility chain of entries >= 2.
  static FgAbelianGroup from_canonical(std::size_t free_rank, std::vector<Integer> torsion);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion_free() const { return torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  /// Order of the torsion subgroup.
  Integer torsion_order() const;

  /// Orders of the cyclic summands: free_rank zeros followed by the torsion list.
  std::vector<Integer> cyclic_orders() const;

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);

/// "0", "Z", "Z^2 + Z/2 + Z/6".
std::string to_string(const FgAbelianGroup& g);

/// Parses the to_string format; also accepts "Z/n" with n in {0, 1}.
FgAbelianGroup parse_group(const std::string& text);

}  // namespace ample::abelian
