#pragma once

#include <cstdint>
#include <vector>

#include "wcc/diagnostic.hpp"
#include "wcc/group.hpp"

namespace wcc {

/// A partition of X x X into r classes, stored as the n x n color table.
struct Configuration {
  int n = 0;
  int r = 0;
  std::vector<int> color;  // row-major, color[x * n + y] in [0, r)

  int at(int x, int y) const { return color[static_cast<std::size_t>(x) * n + y]; }
  bool operator==(const Configuration&) const = default;
};

/// Checks table shape, class range and that every class is non-empty.
Checked<Configuration> make_configuration(int n, int r, std::vector<int> color);

/// Relabels classes so diagonal classes come first (ordered by first
/// diagonal point), then the rest by first cell in row-major order.
Configuration canonical_relabel(const Configuration& cfg);

class CoherentConfiguration {
 public:
  const Configuration& base() const { return base_; }
  int n() const { return base_.n; }
  int rank() const { return base_.r; }
  int color(int x, int y) const { return base_.at(x, y); }
  int converse(int c) const { return converse_[c]; }
  const std::vector<int>& converse_map() const { return converse_; }
  const std::vector<int>& diagonal_classes() const { return diagonal_; }
  bool is_diagonal(int c) const { return diag_flag_[c] != 0; }
  bool homogeneous() const { return diagonal_.size() == 1; }
  /// Intersection number p_{ij}^k: A_i A_j = sum_k p_{ij}^k A_k.
  std::int64_t p(int i, int j, int k) const {
    return p_[(static_cast<std::size_t>(i) * base_.r + j) * base_.r + k];
  }
  /// Number of cells of class c.
  std::int64_t size_of(int c) const { return size_[c]; }
  /// Row valency of c; well defined in the homogeneous case.
  std::int64_t valency(int c) const { return size_[c] / base_.n; }

 private:
  friend Checked<CoherentConfiguration> verify_coherent(const Configuration& cfg);
  Configuration base_;
  std::vector<int> converse_;
  std::vector<int> diagonal_;
  std::vector<char> diag_flag_;
  std::vector<std::int64_t> p_;
  std::vector<std::int64_t> size_;
};

/// Checks (C1)-(C4). Diagnostics carry the violated axiom as code and a
/// witness class, cell or triple. Class labels are kept as given.
Checked<CoherentConfiguration> verify_coherent(const Configuration& cfg);
/// Same as verify_coherent but throws InvalidInput on failure.
CoherentConfiguration require_coherent(const Configuration& cfg);

struct ThinScheme {
  CoherentConfiguration cc;
  std::vector<int> class_of_element;
  std::vector<int> element_of_class;
};

/// Classes c_g = {(x, y) | xg = y}; the identity's class is 0, the rest
/// follow element order.
ThinScheme thin_scheme(const FiniteGroup& g);

/// Orbitals of the group generated by `generators` on {0..degree-1}.
/// Throws InvalidInput when the action is not transitive.
CoherentConfiguration schurian_scheme(int degree, const std::vector<Permutation>& generators);

struct ClosedSubset {
  std::vector<int> classes;  // sorted ascending
};

/// Converse and product closure of D using the intersection numbers.
Checked<ClosedSubset> closed_subset_check(const CoherentConfiguration& cc, std::vector<int> classes);

/// The partition X = x_1 D u ... u x_m D together with the induced
/// sub-configurations. Blocks are listed by smallest point; inside a block the
/// smallest point x0 comes first and the rest are ordered by the class
/// linking x0 to them, then by point index.
struct BlockPartition {
  std::vector<int> classes;             // D, sorted
  std::vector<std::vector<int>> blocks;  // ordered points
  std::vector<int> block_of;            // point -> block index
  std::vector<int> position;            // point -> index inside its block
  /// Sub-configuration on each block; colors are positions in `classes`.
  std::vector<Configuration> sub;

  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
};

BlockPartition blocks_and_subconfigurations(const CoherentConfiguration& cc, const ClosedSubset& d);

struct FactorData {
  BlockPartition partition;
  std::vector<int> class_quotient;  // class c -> index of c^D
  CoherentConfiguration quotient;
  /// Member classes of each quotient class, ascending.
  std::vector<std::vector<int>> members;
};

FactorData factor_configuration(const CoherentConfiguration& cc, const ClosedSubset& d);

struct AutomorphismBounds {
  int max_points = 16;
  std::size_t max_count = 200000;
};

/// All color-preserving point permutations, in lexicographic order of their
/// image lists. Throws Refusal when either bound is exceeded.
std::vector<Permutation> automorphisms(const CoherentConfiguration& cc, AutomorphismBounds bounds = {});

}  // namespace wcc
