#pragma once

#include <vector>

#include "wcc/roots.hpp"
#include "wcc/smith.hpp"

namespace wcc {

/// Systems  prod_j x_j^{E_ij} = rhs_i  over the multiplicative group C^x,
/// E an integer exponent matrix.
///
/// Taking logarithms turns this into a linear system modulo 2 pi i Z. The
/// integer Smith form of E makes the reduction exact: with U E V = S, any
/// choice z_i = (U log rhs)_i / s_i gives a solution whenever one exists,
/// independent of the branch of log. The form is computed once and reused
/// for many right-hand sides. Solutions are not checked here; callers verify
/// them against the original equations.
class MultiplicativeSystem {
 public:
  explicit MultiplicativeSystem(const IntMatrix& exponents);

  int equations() const { return rows_; }
  int unknowns() const { return cols_; }

  /// Candidate solution. With `unit_modulus` only arguments are matched and
  /// every unknown has modulus one.
  std::vector<Complex> solve(const std::vector<Complex>& rhs, bool unit_modulus = false) const;

 private:
  int rows_;
  int cols_;
  SmithForm form_;
};

}  // namespace wcc
