#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcc/diagnostic.hpp"

namespace wcc {

using Permutation = std::vector<int>;  // one-line notation, 0-based images

/// Finite group given by its Cayley table. Elements are indices 0..order-1.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Validates the table (Latin square, associativity, two-sided identity)
  /// and derives identity and inverses. Throws InvalidInput on failure.
  static FiniteGroup from_table(std::vector<std::vector<int>> cayley);
  static Checked<FiniteGroup> try_from_table(std::vector<std::vector<int>> cayley);

  int order() const { return static_cast<int>(cayley_.size()); }
  int mul(int g, int h) const { return cayley_[g][h]; }
  int inv(int g) const { return inverse_[g]; }
  int identity() const { return identity_; }
  const std::vector<std::vector<int>>& cayley() const { return cayley_; }
  const std::vector<int>& inverses() const { return inverse_; }

  int element_order(int g) const;
  /// Least common multiple of element orders.
  int exponent() const;
  bool is_abelian() const;
  int power(int g, int k) const;

  bool is_subgroup(const std::vector<int>& elements) const;
  /// Smallest subgroup containing `generators`, sorted ascending.
  std::vector<int> generated_subgroup(const std::vector<int>& generators) const;
  /// All subgroups, each sorted ascending; list sorted by (size, elements).
  std::vector<std::vector<int>> subgroups() const;
  /// Restriction of the multiplication to a subgroup, with elements
  /// renumbered by their position in `elements` (which must start with the
  /// identity for the result to have identity 0).
  FiniteGroup restrict_to(const std::vector<int>& elements) const;

 private:
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

namespace groups {

FiniteGroup cyclic(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Closure of permutation generators; elements sorted lexicographically by
/// one-line image so the identity is element 0.
FiniteGroup from_permutations(int degree, const std::vector<Permutation>& generators);
/// Same closure, returning the element permutations in element order.
std::vector<Permutation> permutation_closure(int degree, const std::vector<Permutation>& generators);
FiniteGroup symmetric(int degree);
/// Dihedral group of order 2n acting on the n-gon.
FiniteGroup dihedral(int n);
FiniteGroup quaternion();
/// Every group of order <= 8 up to isomorphism, with a short name.
std::vector<std::pair<std::string, FiniteGroup>> all_of_order_at_most_8();

}  // namespace groups

}  // namespace wcc
