#include <random>

#include "doctest.h"
#include "wcc/smith.hpp"

using namespace wcc;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int spread) {
  IntMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = static_cast<int>(rng() % (2 * spread + 1)) - spread;
  return a;
}

// Brute-force gcd of all k x k minors for tiny matrices, the classical
// characterization of d_1 * ... * d_k.
std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  std::int64_t total = 0;
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (int r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (int j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return total;
}

std::int64_t minor_gcd(const IntMatrix& a, int k) {
  std::int64_t g = 0;
  const int r = a.rows(), c = a.cols();
  for (int rm = 0; rm < (1 << r); ++rm) {
    if (__builtin_popcount(rm) != k) continue;
    for (int cm = 0; cm < (1 << c); ++cm) {
      if (__builtin_popcount(cm) != k) continue;
      std::vector<std::vector<std::int64_t>> m;
      for (int i = 0; i < r; ++i) {
        if (!(rm >> i & 1)) continue;
        std::vector<std::int64_t> row;
        for (int j = 0; j < c; ++j)
          if (cm >> j & 1) row.push_back(a(i, j));
        m.push_back(row);
      }
      g = std::gcd(g, std::abs(det(m)));
    }
  }
  return g;
}

}  // namespace

TEST_CASE("Smith form: U A V = S with divisibility") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    auto a = random_matrix(rng, rows, cols, trial % 2 ? 3 : 9);
    auto f = smith_normal_form(a, {.left = true, .right = true});
    auto s = (*f.left) * a * (*f.right);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const std::int64_t expect = (i == j && i < f.rank) ? f.diagonal[i] : 0;
        CHECK(s(i, j) == expect);
      }
    for (int i = 0; i + 1 < f.rank; ++i) CHECK(f.diagonal[i + 1] % f.diagonal[i] == 0);
    CHECK((*f.right) * (*f.right_inverse) == IntMatrix::identity(cols));
    // d_1 ... d_k equals the gcd of k x k minors.
    std::int64_t prod = 1;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
      prod *= k <= f.rank ? f.diagonal[k - 1] : 0;
      CHECK(prod == minor_gcd(a, k));
    }
  }
}

TEST_CASE("kernel and solve modulo m") {
  // x + y = 0 mod 4 and 2x = 0 mod 4.
  IntMatrix a(2, 2);
  a(0, 0) = 1; a(0, 1) = 1; a(1, 0) = 2;
  auto ker = kernel_mod(a, 4);
  std::int64_t size = 1;
  for (const auto& g : ker) {
    size *= g.order;
    auto img = a * g.vector;
    for (auto v : img) CHECK(mod(v, 4) == 0);
  }
  // Brute force count of the kernel.
  int count = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) count += (x + y) % 4 == 0 && (2 * x) % 4 == 0;
  CHECK(size == count);

  auto sol = solve_mod(a, {3, 2}, 4);
  REQUIRE(sol);
  auto img = a * *sol;
  CHECK(mod(img[0], 4) == 3);
  CHECK(mod(img[1], 4) == 2);
  CHECK_FALSE(solve_mod(a, {0, 1}, 4));  // 2x = 1 mod 4 has no solution
}

TEST_CASE("abelian quotients") {
  // Z^2 / <(2,0), (0,4)> = Z2 + Z4.
  IntMatrix r(2, 2);
  r(0, 0) = 2; r(1, 1) = 4;
  auto q = abelian_quotient(r);
  CHECK(q.factors == std::vector<std::int64_t>{2, 4});
  // Z^2 / <(2,2)> = Z2 + Z.
  IntMatrix s(2, 1);
  s(0, 0) = 2; s(1, 0) = 2;
  auto qs = abelian_quotient(s);
  CHECK(qs.factors == std::vector<std::int64_t>{2, 0});
}
