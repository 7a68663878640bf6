#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace wcc {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<std::int64_t> operator*(const std::vector<std::int64_t>& v) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// U * A * V = diag(d_0, ..., d_{rank-1}, 0, ...), with d_i > 0 and
/// d_i | d_{i+1}. U and V are unimodular; V^{-1} is kept alongside V.
/// Arithmetic is overflow-checked and throws std::overflow_error.
struct SmithForm {
  std::vector<std::int64_t> diagonal;  // the rank non-zero invariant factors
  int rank = 0;
  std::optional<IntMatrix> left;
  std::optional<IntMatrix> right;
  std::optional<IntMatrix> right_inverse;
};

struct SmithOptions {
  bool left = false;
  bool right = true;
};

SmithForm smith_normal_form(IntMatrix a, SmithOptions options = {});

std::int64_t mod(std::int64_t a, std::int64_t m);

/// Generator of a cyclic summand of ker(A mod m): `vector` has order `order`.
struct KernelGenerator {
  std::vector<std::int64_t> vector;
  std::int64_t order = 1;
};

/// ker(A mod m) as a direct sum of cyclic groups, one generator per summand
/// (trivial summands dropped). `form` must carry V.
std::vector<KernelGenerator> kernel_mod(const SmithForm& form, int cols, std::int64_t m);
std::vector<KernelGenerator> kernel_mod(const IntMatrix& a, std::int64_t m);

/// Some x with A x = b (mod m), or nullopt when no solution exists.
/// `form` must carry U and V.
std::optional<std::vector<std::int64_t>> solve_mod(const SmithForm& form, int cols,
                                                   const std::vector<std::int64_t>& b, std::int64_t m);
std::optional<std::vector<std::int64_t>> solve_mod(const IntMatrix& a, const std::vector<std::int64_t>& b,
                                                   std::int64_t m);

/// Z^k / (column span of `relations`) as invariant factors > 1 with one
/// generator (in Z^k coordinates) per factor. Free summands are reported with
/// factor 0.
struct AbelianQuotient {
  std::vector<std::int64_t> factors;
  std::vector<std::vector<std::int64_t>> generators;
};
AbelianQuotient abelian_quotient(const IntMatrix& relations);

/// A particular solution of A x = b over a ring containing the rationals
/// (real or complex b), computed through the integer Smith form.
/// Rows of U b beyond the rank are ignored; callers verify the result.
template <class T>
std::vector<T> particular_solution(const SmithForm& form, int cols, const std::vector<T>& b) {
  const IntMatrix& u = *form.left;
  const IntMatrix& v = *form.right;
  std::vector<T> z(cols, T{});
  for (int i = 0; i < form.rank; ++i) {
    T acc{};
    for (int k = 0; k < u.cols(); ++k)
      if (u(i, k) != 0) acc += static_cast<double>(u(i, k)) * b[k];
    z[i] = acc / static_cast<double>(form.diagonal[i]);
  }
  std::vector<T> x(cols, T{});
  for (int r = 0; r < cols; ++r)
    for (int i = 0; i < form.rank; ++i)
      if (v(r, i) != 0) x[r] += static_cast<double>(v(r, i)) * z[i];
  return x;
}

}  // namespace wcc
