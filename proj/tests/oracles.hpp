#pragma once
// Brute-force reference computations used only by the tests. Nothing here
// calls into the library code paths these oracles check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <complex>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using IntMat = std::vector<std::vector<std::int64_t>>;

inline IntMat indicator(const std::vector<int>& color, int n, int c) {
  IntMat a(n, std::vector<std::int64_t>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a[x][y] = color[x * n + y] == c;
  return a;
}

inline IntMat multiply(const IntMat& a, const IntMat& b) {
  const int n = static_cast<int>(a.size());
  IntMat c(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// p[i][j][k] by multiplying 0/1 matrices and reading one cell per class.
inline std::vector<std::int64_t> intersection_numbers(const std::vector<int>& color, int n, int r) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(r) * r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      auto prod = multiply(indicator(color, n, i), indicator(color, n, j));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) p[(static_cast<std::size_t>(i) * r + j) * r + color[x * n + y]] = prod[x][y];
    }
  return p;
}

/// Orbitals of a permutation group: apply every group element to every pair.
inline std::set<std::set<std::pair<int, int>>> orbitals(int degree, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::set<std::vector<int>> group{id};
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = group;
    for (const auto& g : snapshot)
      for (const auto& h : gens) {
        std::vector<int> p(degree);
        for (int x = 0; x < degree; ++x) p[x] = h[g[x]];
        grew |= group.insert(p).second;
      }
  }
  std::set<std::set<std::pair<int, int>>> out;
  for (int x = 0; x < degree; ++x)
    for (int y = 0; y < degree; ++y) {
      std::set<std::pair<int, int>> orb;
      for (const auto& g : group) orb.insert({g[x], g[y]});
      out.insert(orb);
    }
  return out;
}

/// D is closed iff products of its matrices stay in the span of its matrices
/// and it is transpose-closed (checked on the matrices themselves).
inline bool closed_by_span(const std::vector<int>& color, int n, const std::vector<int>& d) {
  std::set<int> in(d.begin(), d.end());
  for (int c : d) {
    auto a = indicator(color, n, c);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (a[x][y] && !in.count(color[y * n + x])) return false;
  }
  for (int c : d)
    for (int e : d) {
      auto prod = multiply(indicator(color, n, c), indicator(color, n, e));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (prod[x][y] && !in.count(color[x * n + y])) return false;
    }
  return true;
}

// ---- cohomology by exhaustive enumeration (tiny groups only) ----

using Table = std::vector<std::vector<int>>;

inline bool is_cocycle(const Table& g, const std::vector<int>& k, int m) {
  const int n = static_cast<int>(g.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int t = 0; t < n; ++t)
        if ((k[a * n + b] + k[g[a][b] * n + t] - k[a * n + g[b][t]] - k[b * n + t]) % m != 0) return false;
  return true;
}

/// Calls f on every vector in Z_m^len.
template <class F>
void for_each_vector(int len, int m, F f) {
  std::vector<int> v(len, 0);
  for (;;) {
    f(v);
    int j = 0;
    while (j < len && ++v[j] == m) v[j++] = 0;
    if (j == len) return;
  }
}

inline std::vector<int> coboundary(const Table& g, const std::vector<int>& c, int m) {
  const int n = static_cast<int>(g.size());
  std::vector<int> k(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k[a * n + b] = ((c[a] + c[b] - c[g[a][b]]) % m + m) % m;
  return k;
}

inline std::set<std::vector<int>> all_cocycles(const Table& g, int m) {
  const int n = static_cast<int>(g.size());
  std::set<std::vector<int>> out;
  for_each_vector(n * n, m, [&](const std::vector<int>& k) {
    if (is_cocycle(g, k, m)) out.insert(k);
  });
  return out;
}

/// Order and exponent of H^2(G, Z_m) = Z^2 / B^2.
inline std::pair<std::int64_t, std::int64_t> h2_mod_order_exponent(const Table& g, int m) {
  const int n = static_cast<int>(g.size());
  auto z = all_cocycles(g, m);
  std::set<std::vector<int>> b;
  for_each_vector(n, m, [&](const std::vector<int>& c) { b.insert(coboundary(g, c, m)); });
  std::int64_t exponent = 1;
  for (const auto& k : z) {
    std::int64_t o = 1;
    std::vector<int> mult = k;
    while (!b.count(mult)) {
      for (int i = 0; i < n * n; ++i) mult[i] = (mult[i] + k[i]) % m;
      ++o;
    }
    exponent = std::lcm(exponent, o);
  }
  return {static_cast<std::int64_t>(z.size() / b.size()), exponent};
}

/// Number of classes of mu_m-valued cocycles modulo C^x-coboundaries, where
/// gamma ranges over mu_{m * e} (exhaustively).
inline std::int64_t h2_over_C_classes(const Table& g, int m, int e) {
  const int n = static_cast<int>(g.size());
  auto z = all_cocycles(g, m);
  std::set<std::vector<int>> b;
  for_each_vector(n, m * e, [&](const std::vector<int>& c) {
    auto k = coboundary(g, c, m * e);
    for (int v : k)
      if (v % e != 0) return;
    for (int& v : k) v /= e;
    b.insert(k);
  });
  return static_cast<std::int64_t>(z.size() / b.size());
}

/// Whether some gamma in mu_order^n has delta gamma = alpha (values as exponents mod m).
inline bool coboundary_by_search(const Table& g, const std::vector<int>& k, int m, int order) {
  if (order % m != 0) return false;
  bool found = false;
  std::vector<int> target(k);
  for (int& v : target) v *= order / m;
  for_each_vector(static_cast<int>(g.size()), order, [&](const std::vector<int>& c) {
    if (!found && coboundary(g, c, order) == target) found = true;
  });
  return found;
}

/// Commutant dimension of a set of complex matrices: solve X M = M X for all M.
inline int commutant_dimension(const std::vector<std::vector<std::complex<double>>>& mats, int n) {
  // Rows: for each M and cell (i,j): sum_k X_ik M_kj - M_ik X_kj = 0.
  std::vector<std::vector<std::complex<double>>> rows;
  for (const auto& mm : mats)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<std::complex<double>> r(n * n, 0.0);
        for (int k = 0; k < n; ++k) {
          r[i * n + k] += mm[k * n + j];
          r[k * n + j] -= mm[i * n + k];
        }
        rows.push_back(r);
      }
  // Gaussian elimination with partial pivoting.
  int rank = 0;
  const int cols = n * n;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    double best = 1e-9;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[r][c]) > best) best = std::abs(rows[r][c]), piv = r;
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      const auto f = rows[r][c] / rows[rank][c];
      if (f == 0.0) continue;
      for (int q = c; q < cols; ++q) rows[r][q] -= f * rows[rank][q];
    }
    ++rank;
  }
  return cols - rank;
}

}  // namespace oracle
