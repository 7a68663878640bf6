#include "wcc/weight.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "wcc/multiplicative.hpp"

namespace wcc {
namespace {

std::string cell_text(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

std::string complex_text(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

void require_size(const CoherentConfiguration& cc, const WeightMatrix& w) {
  if (w.size() != cc.n())
    throw InvalidInput(Diagnostic{"size", "weight size does not match the configuration", {}}
                           .with("weight", w.size())
                           .with("points", cc.n()));
}

/// Points y with color(z, y) = c, grouped by (z, c).
struct RowIndex {
  int n = 0, r = 0;
  std::vector<std::vector<int>> rows;
  explicit RowIndex(const CoherentConfiguration& cc) : n(cc.n()), r(cc.rank()), rows(static_cast<std::size_t>(n) * r) {
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y) rows[static_cast<std::size_t>(z) * r + cc.color(z, y)].push_back(y);
  }
  const std::vector<int>& at(int z, int c) const { return rows[static_cast<std::size_t>(z) * r + c]; }
};

}  // namespace

WeightMatrix::WeightMatrix(int n, double eps)
    : n_(n), eps_(eps), values_(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0)) {}

WeightMatrix WeightMatrix::from_values(int n, std::vector<Complex> values, double eps) {
  if (values.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("weight needs n*n values");
  WeightMatrix w(n, eps);
  w.values_ = std::move(values);
  return w;
}

WeightMatrix WeightMatrix::from_exact(int n, std::vector<ExactEntry> entries, double eps) {
  if (entries.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("weight needs n*n entries");
  WeightMatrix w(n, eps);
  for (std::size_t i = 0; i < entries.size(); ++i)
    w.values_[i] = entries[i].nonzero ? entries[i].root.value() : Complex(0.0, 0.0);
  w.exact_ = std::move(entries);
  return w;
}

WeightMatrix WeightMatrix::identity(int n, double eps) {
  std::vector<ExactEntry> e(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) e[static_cast<std::size_t>(x) * n + x] = {true, Root(0, 1)};
  return from_exact(n, std::move(e), eps);
}

WeightMatrix WeightMatrix::ones(int n, double eps) {
  return from_exact(n, std::vector<ExactEntry>(static_cast<std::size_t>(n) * n, {true, Root(0, 1)}), eps);
}

void WeightMatrix::set(int x, int y, Complex v) {
  values_[idx(x, y)] = v;
  exact_.clear();
}

std::optional<Diagnostic> WeightMatrix::guard_band_violation() const {
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) {
      const double a = std::abs(values_[idx(x, y)]);
      if (a >= eps_ && a < 10.0 * eps_)
        return Diagnostic{"guard", "entry modulus inside the ambiguous band [eps, 10 eps)", {}}
            .with("cell", cell_text(x, y))
            .with("modulus", a);
    }
  return std::nullopt;
}

double WeightMatrix::max_abs_diff(const WeightMatrix& other) const {
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) d = std::max(d, std::abs(values_[i] - other.values_[i]));
  return d;
}

WeightMatrix standard_weight(const CoherentConfiguration& cc, double eps) { return WeightMatrix::ones(cc.n(), eps); }
WeightMatrix trivial_weight(const CoherentConfiguration& cc, double eps) {
  return WeightMatrix::identity(cc.n(), eps);
}

Checked<WeightVerdict> verify_weight(const CoherentConfiguration& cc, const WeightMatrix& w) {
  require_size(cc, w);
  if (auto g = w.guard_band_violation()) return *g;
  const int n = cc.n(), r = cc.rank();
  const double eps = w.eps();

  // (W1) each class entirely inside or outside the support.
  std::vector<int> state(r, -1);  // -1 unseen, 0 zero, 1 nonzero
  std::vector<std::pair<int, int>> first(r);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int c = cc.color(x, y);
      const int s = w.is_zero(x, y) ? 0 : 1;
      if (state[c] < 0) {
        state[c] = s;
        first[c] = {x, y};
      } else if (state[c] != s) {
        return Diagnostic{"W1", "class is split by the support", {}}
            .with("class", c)
            .with("cells", cell_text(first[c].first, first[c].second) + " " + cell_text(x, y));
      }
    }
  WeightVerdict v;
  for (int c = 0; c < r; ++c)
    if (state[c] == 1) v.support_classes.push_back(c);
  for (int c : v.support_classes)
    if (state[cc.converse(c)] != 1)
      return Diagnostic{"W1", "support is not closed under converse", {}}.with("class", c).with(
          "converse", cc.converse(c));
  v.w1 = true;

  // (W2)
  for (int x = 0; x < n; ++x)
    if (w.is_zero(x, x)) return Diagnostic{"W2", "zero diagonal entry", {}}.with("point", x);
  v.w2 = true;

  // (W3) coordinates of A_i^W A_j^W in the Hadamard basis; the basis
  // elements have disjoint supports, so each coordinate is a cellwise
  // projection.
  std::vector<double> norm2(r, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) norm2[cc.color(x, y)] += std::norm(w(x, y));
  const RowIndex rows(cc);
  v.beta = Tensor3(r);
  std::vector<Complex> prod(static_cast<std::size_t>(n) * n);
  std::vector<Complex> acc(r);
  for (int i : v.support_classes)
    for (int j : v.support_classes) {
      std::fill(prod.begin(), prod.end(), Complex(0.0, 0.0));
      double scale = 1.0;
      for (int x = 0; x < n; ++x)
        for (int z : rows.at(x, i)) {
          const Complex wxz = w(x, z);
          for (int y : rows.at(z, j)) prod[static_cast<std::size_t>(x) * n + y] += wxz * w(z, y);
        }
      std::fill(acc.begin(), acc.end(), Complex(0.0, 0.0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const Complex p = prod[static_cast<std::size_t>(x) * n + y];
          scale = std::max(scale, std::abs(p));
          acc[cc.color(x, y)] += p * std::conj(w(x, y));
        }
      for (int k : v.support_classes) {
        Complex b = acc[k] / norm2[k];
        if (std::abs(b) < eps) b = 0.0;
        v.beta(i, j, k) = b;
      }
      double residual = 0.0;
      int wx = 0, wy = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const double d = std::abs(prod[static_cast<std::size_t>(x) * n + y] - v.beta(i, j, cc.color(x, y)) * w(x, y));
          if (d > residual) {
            residual = d;
            wx = x;
            wy = y;
          }
        }
      if (residual >= eps * scale)
        return Diagnostic{"W3", "product leaves the twisted span", {}}
            .with("pair", "(" + std::to_string(i) + "," + std::to_string(j) + ")")
            .with("residual", residual)
            .with("cell", cell_text(wx, wy));
    }
  v.w3 = true;
  return v;
}

Checked<WeightVerdict> verify_h_weight(const CoherentConfiguration& cc, const WeightMatrix& w) {
  auto base = verify_weight(cc, w);
  if (!base) return base;
  WeightVerdict v = std::move(base).value();
  const int n = cc.n();
  const double eps = w.eps();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (std::abs(w(x, y) - std::conj(w(y, x))) >= eps)
        return Diagnostic{"W4", "not hermitian", {}}
            .with("cell", cell_text(x, y))
            .with("value", complex_text(w(x, y)))
            .with("conjugate_transpose", complex_text(std::conj(w(y, x))));
      const double a = std::abs(w(x, y));
      if (a >= eps && std::abs(a - 1.0) >= eps)
        return Diagnostic{"W4", "entry modulus not in {0, 1}", {}}.with("cell", cell_text(x, y)).with("modulus", a);
    }
  for (int x = 0; x < n; ++x)
    if (std::abs(w(x, x) - 1.0) >= eps)
      return Diagnostic{"W4", "diagonal entry is not 1", {}}.with("point", x).with("value", complex_text(w(x, x)));
  v.w4 = true;
  return v;
}

WeightMatrix apply_witness(const CoherentConfiguration& cc, const WeightMatrix& w, const EquivalenceWitness& wit) {
  const int n = cc.n();
  std::vector<Complex> out(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      out[static_cast<std::size_t>(x) * n + y] =
          wit.gamma[cc.color(x, y)] * w(wit.sigma[x], wit.sigma[y]) * wit.a[y] / wit.a[x];
  return WeightMatrix::from_values(n, std::move(out), w.eps());
}

double witness_residual(const CoherentConfiguration& cc, const WeightMatrix& w, const WeightMatrix& w_prime,
                        const EquivalenceWitness& wit) {
  const WeightMatrix img = apply_witness(cc, w, wit);
  double worst = 0.0;
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y)
      worst = std::max(worst, std::abs(img(x, y) - w_prime(x, y)) / std::max(1.0, std::abs(w_prime(x, y))));
  return worst;
}

namespace {

std::optional<EquivalenceWitness> search_equivalence(const CoherentConfiguration& cc, const WeightMatrix& w,
                                                     const WeightMatrix& w_prime, const WeightVerdict& vw,
                                                     const WeightVerdict& vp, bool hermitian,
                                                     const EquivalenceOptions& options) {
  if (vw.support_classes != vp.support_classes) return std::nullopt;
  const int n = cc.n(), r = cc.rank();
  const auto& support = vw.support_classes;
  std::vector<int> gamma_var(r, -1);
  for (std::size_t i = 0; i < support.size(); ++i) gamma_var[support[i]] = n + static_cast<int>(i);
  const int unknowns = n + static_cast<int>(support.size());

  // One equation per support cell: gamma_c * a_y / a_x = W'_xy / W_{sx,sy}.
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (gamma_var[cc.color(x, y)] >= 0) cells.emplace_back(x, y);
  std::vector<std::pair<int, int>> paired;  // gamma(c) gamma(c*) = 1
  if (hermitian)
    for (int c : support)
      if (c <= cc.converse(c)) paired.emplace_back(c, cc.converse(c));

  IntMatrix eq(static_cast<int>(cells.size() + paired.size()), unknowns);
  for (std::size_t e = 0; e < cells.size(); ++e) {
    auto [x, y] = cells[e];
    const int row = static_cast<int>(e);
    eq(row, gamma_var[cc.color(x, y)]) += 1;
    eq(row, y) += 1;
    eq(row, x) -= 1;
  }
  for (std::size_t e = 0; e < paired.size(); ++e) {
    const int row = static_cast<int>(cells.size() + e);
    eq(row, gamma_var[paired[e].first]) += 1;
    eq(row, gamma_var[paired[e].second]) += 1;
  }
  const MultiplicativeSystem system(eq);

  const double eps = std::max(w.eps(), w_prime.eps());
  for (const auto& sigma : automorphisms(cc, options.bounds)) {
    std::vector<Complex> rhs(eq.rows(), Complex(1.0, 0.0));
    for (std::size_t e = 0; e < cells.size(); ++e) {
      auto [x, y] = cells[e];
      rhs[e] = w_prime(x, y) / w(sigma[x], sigma[y]);
    }
    const auto sol = system.solve(rhs, hermitian);
    EquivalenceWitness wit;
    wit.sigma = sigma;
    wit.a.assign(sol.begin(), sol.begin() + n);
    const Complex a0 = wit.a[0];
    for (auto& a : wit.a) a /= a0;
    wit.gamma.assign(r, Complex(1.0, 0.0));
    for (int c : support) wit.gamma[c] = sol[gamma_var[c]];
    if (witness_residual(cc, w, w_prime, wit) >= eps) continue;
    if (hermitian) {
      bool unit = true;
      for (const auto& a : wit.a) unit = unit && std::abs(std::abs(a) - 1.0) < eps;
      for (int c = 0; c < r; ++c)
        unit = unit && std::abs(std::abs(wit.gamma[c]) - 1.0) < eps &&
               std::abs(wit.gamma[c] * wit.gamma[cc.converse(c)] - 1.0) < eps;
      if (!unit) continue;
    }
    return wit;
  }
  return std::nullopt;
}

WeightVerdict require_verdict(Checked<WeightVerdict> v, const char* which) {
  if (!v) {
    Diagnostic d = v.diagnostic();
    d.message = std::string(which) + ": " + d.message;
    throw InvalidInput(d);
  }
  return std::move(v).value();
}

}  // namespace

std::optional<EquivalenceWitness> weight_equivalent(const CoherentConfiguration& cc, const WeightMatrix& w,
                                                    const WeightMatrix& w_prime, EquivalenceOptions options) {
  const auto vw = require_verdict(verify_weight(cc, w), "first weight");
  const auto vp = require_verdict(verify_weight(cc, w_prime), "second weight");
  return search_equivalence(cc, w, w_prime, vw, vp, false, options);
}

std::optional<EquivalenceWitness> h_weight_equivalent(const CoherentConfiguration& cc, const WeightMatrix& w,
                                                      const WeightMatrix& w_prime, EquivalenceOptions options) {
  const auto vw = require_verdict(verify_h_weight(cc, w), "first weight");
  const auto vp = require_verdict(verify_h_weight(cc, w_prime), "second weight");
  return search_equivalence(cc, w, w_prime, vw, vp, true, options);
}

AlgebraProfile algebra_profile(const WeightVerdict& verdict, double tol) {
  const auto& s = verdict.support_classes;
  const int d = static_cast<int>(s.size());
  AlgebraProfile out;
  out.dimension = d;
  if (d == 0) return out;
  // Z = sum_j z_j A_j is central iff sum_j z_j (beta(j,k,l) - beta(k,j,l)) = 0 for all k, l.
  Eigen::MatrixXcd m(d * d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j)
        m(k * d + l, j) = verdict.beta(s[j], s[k], s[l]) - verdict.beta(s[k], s[j], s[l]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  out.center_dimension = d - rank;
  return out;
}

}  // namespace wcc
