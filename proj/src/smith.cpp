#include "wcc/smith.hpp"

#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace wcc {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

std::int64_t abs64(std::int64_t a) { return a < 0 ? -a : a; }

// row_i -= q * row_j
void row_axpy(IntMatrix& m, int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols(); ++c)
    if (m(j, c) != 0) m(i, c) = checked_sub(m(i, c), checked_mul(q, m(j, c)));
}

// col_i -= q * col_j
void col_axpy(IntMatrix& m, int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows(); ++r)
    if (m(r, j) != 0) m(r, i) = checked_sub(m(r, i), checked_mul(q, m(r, j)));
}

void swap_rows(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

class Reducer {
 public:
  Reducer(IntMatrix a, SmithOptions opt) : a_(std::move(a)) {
    if (opt.left) u_ = IntMatrix::identity(a_.rows());
    if (opt.right) {
      v_ = IntMatrix::identity(a_.cols());
      vinv_ = IntMatrix::identity(a_.cols());
    }
  }

  SmithForm run() {
    const int limit = std::min(a_.rows(), a_.cols());
    int t = 0;
    for (; t < limit; ++t) {
      if (!move_smallest_to(t)) break;
      reduce_pivot(t);
    }
    SmithForm out;
    out.rank = t;
    for (int i = 0; i < t; ++i) out.diagonal.push_back(a_(i, i));
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.right_inverse = std::move(vinv_);
    return out;
  }

 private:
  void row_op(int i, int j, std::int64_t q) {
    row_axpy(a_, i, j, q);
    if (u_) row_axpy(*u_, i, j, q);
  }
  void col_op(int i, int j, std::int64_t q) {
    col_axpy(a_, i, j, q);
    if (v_) {
      col_axpy(*v_, i, j, q);
      row_axpy(*vinv_, j, i, -q);  // inverse of the column operation
    }
  }
  void row_swap(int i, int j) {
    swap_rows(a_, i, j);
    if (u_) swap_rows(*u_, i, j);
  }
  void col_swap(int i, int j) {
    swap_cols(a_, i, j);
    if (v_) {
      swap_cols(*v_, i, j);
      swap_rows(*vinv_, i, j);
    }
  }
  void negate_row(int i) {
    for (int c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    if (u_)
      for (int c = 0; c < u_->cols(); ++c) (*u_)(i, c) = -(*u_)(i, c);
  }

  // Pivot choice: smallest modulus first, then the fewest other nonzeros in
  // its row and column (Markowitz cost), which keeps fill-in and entry
  // growth down on sparse inputs.
  bool move_smallest_to(int t) {
    std::vector<int> row_nnz(a_.rows(), 0), col_nnz(a_.cols(), 0);
    std::int64_t best = 0;
    for (int i = t; i < a_.rows(); ++i)
      for (int j = t; j < a_.cols(); ++j) {
        const std::int64_t v = abs64(a_(i, j));
        if (v == 0) continue;
        ++row_nnz[i];
        ++col_nnz[j];
        if (best == 0 || v < best) best = v;
      }
    if (best == 0) return false;
    int bi = -1, bj = -1;
    std::int64_t cost = -1;
    for (int i = t; i < a_.rows(); ++i)
      for (int j = t; j < a_.cols(); ++j) {
        if (abs64(a_(i, j)) != best) continue;
        const std::int64_t c = static_cast<std::int64_t>(row_nnz[i] - 1) * (col_nnz[j] - 1);
        if (cost < 0 || c < cost) {
          cost = c;
          bi = i;
          bj = j;
        }
      }
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  // Quotient rounded to nearest, so the remainder is at most |b| / 2.
  static std::int64_t nearest_quotient(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    const std::int64_t r = a - q * b;
    if (2 * abs64(r) > abs64(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
  }

  // Brings the smallest nonzero entry of row t and column t to (t, t).
  void smallest_in_cross(int t) {
    int bi = t, bj = t;
    std::int64_t best = abs64(a_(t, t));
    for (int i = t + 1; i < a_.rows(); ++i) {
      const std::int64_t v = abs64(a_(i, t));
      if (v != 0 && (best == 0 || v < best)) best = v, bi = i, bj = t;
    }
    for (int j = t + 1; j < a_.cols(); ++j) {
      const std::int64_t v = abs64(a_(t, j));
      if (v != 0 && (best == 0 || v < best)) best = v, bi = t, bj = j;
    }
    row_swap(t, bi);
    col_swap(t, bj);
  }

  void reduce_pivot(int t) {
    for (;;) {
      smallest_in_cross(t);
      bool dirty = false;
      for (int i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        row_op(i, t, nearest_quotient(a_(i, t), a_(t, t)));
        dirty = dirty || a_(i, t) != 0;
      }
      for (int j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        col_op(j, t, nearest_quotient(a_(t, j), a_(t, t)));
        dirty = dirty || a_(t, j) != 0;
      }
      if (dirty) continue;
      // Divisibility: the pivot must divide the remaining submatrix.
      int bad = -1;
      for (int i = t + 1; i < a_.rows() && bad < 0; ++i)
        for (int j = t + 1; j < a_.cols(); ++j)
          if (a_(i, j) % a_(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(t, bad, -1);
    }
    if (a_(t, t) < 0) negate_row(t);
  }

  IntMatrix a_;
  std::optional<IntMatrix> u_, v_, vinv_;
};

}  // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<std::int64_t> IntMatrix::operator*(const std::vector<std::int64_t>& v) const {
  std::vector<std::int64_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

SmithForm smith_normal_form(IntMatrix a, SmithOptions options) { return Reducer(std::move(a), options).run(); }

std::vector<KernelGenerator> kernel_mod(const SmithForm& form, int cols, std::int64_t m) {
  const IntMatrix& v = *form.right;
  std::vector<KernelGenerator> out;
  for (int i = 0; i < cols; ++i) {
    // Coordinate i of V^{-1} x must satisfy d_i y_i = 0 (mod m).
    const std::int64_t g = i < form.rank ? std::gcd(form.diagonal[i], m) : m;
    if (g == 1) continue;
    const std::int64_t step = m / g;
    KernelGenerator gen;
    gen.order = g;
    gen.vector.resize(cols);
    for (int r = 0; r < cols; ++r) gen.vector[r] = mod(mod(v(r, i), m) * step, m);
    out.push_back(std::move(gen));
  }
  return out;
}

std::vector<KernelGenerator> kernel_mod(const IntMatrix& a, std::int64_t m) {
  return kernel_mod(smith_normal_form(a, {.left = false, .right = true}), a.cols(), m);
}

namespace {

// Inverse of a modulo m, with gcd(a, m) = 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return mod(old_s, m);
}

}  // namespace

std::optional<std::vector<std::int64_t>> solve_mod(const SmithForm& form, int cols,
                                                   const std::vector<std::int64_t>& b, std::int64_t m) {
  const IntMatrix& u = *form.left;
  const IntMatrix& v = *form.right;
  std::vector<std::int64_t> ub(u.rows(), 0);
  for (int i = 0; i < u.rows(); ++i) {
    __int128 acc = 0;
    for (int k = 0; k < u.cols(); ++k) acc += static_cast<__int128>(mod(u(i, k), m)) * mod(b[k], m);
    ub[i] = static_cast<std::int64_t>(acc % m);
  }
  std::vector<std::int64_t> y(cols, 0);
  for (int i = 0; i < u.rows(); ++i) {
    if (i >= form.rank || i >= cols) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    const std::int64_t d = mod(form.diagonal[i], m);
    const std::int64_t g = std::gcd(d, m);
    if (ub[i] % g != 0) return std::nullopt;
    const std::int64_t mg = m / g;
    y[i] = mg == 1 ? 0 : mod(static_cast<std::int64_t>((static_cast<__int128>(ub[i] / g) * inverse_mod(d / g, mg)) % mg), mg);
  }
  std::vector<std::int64_t> x(cols, 0);
  for (int r = 0; r < cols; ++r) {
    __int128 acc = 0;
    for (int i = 0; i < cols; ++i) acc += static_cast<__int128>(mod(v(r, i), m)) * y[i];
    x[r] = static_cast<std::int64_t>(acc % m);
  }
  return x;
}

std::optional<std::vector<std::int64_t>> solve_mod(const IntMatrix& a, const std::vector<std::int64_t>& b,
                                                   std::int64_t m) {
  return solve_mod(smith_normal_form(a, {.left = true, .right = true}), a.cols(), b, m);
}

AbelianQuotient abelian_quotient(const IntMatrix& relations) {
  // U R V = S, so x -> U x maps Z^k / im R onto Z^k / im S; the generator of
  // summand i is U^{-1} e_i, computed from U by solving over the integers.
  const int k = relations.rows();
  SmithForm form = smith_normal_form(relations, {.left = true, .right = false});
  // For unimodular U, its Smith form is U' U V' = I, hence U^{-1} = V' U'.
  SmithForm uf = smith_normal_form(*form.left, {.left = true, .right = true});
  const IntMatrix uinv = (*uf.right) * (*uf.left);
  AbelianQuotient out;
  for (int i = 0; i < k; ++i) {
    const std::int64_t d = i < form.rank ? form.diagonal[i] : 0;
    if (d == 1) continue;
    out.factors.push_back(d);
    std::vector<std::int64_t> g(k);
    for (int r = 0; r < k; ++r) g[r] = uinv(r, i);
    out.generators.push_back(std::move(g));
  }
  return out;
}

}  // namespace wcc
