#include "wcc/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wcc {

Checked<FiniteGroup> FiniteGroup::try_from_table(std::vector<std::vector<int>> cayley) {
  const int n = static_cast<int>(cayley.size());
  if (n == 0) return Diagnostic{"group", "empty Cayley table", {}};
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cayley[i].size()) != n)
      return Diagnostic{"group", "Cayley table is not square", {}}.with("row", i);
    for (int v : cayley[i])
      if (v < 0 || v >= n) return Diagnostic{"group", "entry out of range", {}}.with("row", i);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row[cayley[i][j]]++) return Diagnostic{"group", "not a Latin square (row)", {}}.with("row", i);
      if (col[cayley[j][i]]++) return Diagnostic{"group", "not a Latin square (column)", {}}.with("column", i);
    }
  }
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = cayley[e][j] == j && cayley[j][e] == j;
    if (ok) identity = e;
  }
  if (identity < 0) return Diagnostic{"group", "no two-sided identity", {}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]])
          return Diagnostic{"group", "associativity fails", {}}.with("g", a).with("h", b).with("t", c);

  FiniteGroup g;
  g.cayley_ = std::move(cayley);
  g.identity_ = identity;
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.cayley_[a][b] == identity) g.inverse_[a] = b;
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> cayley) {
  auto r = try_from_table(std::move(cayley));
  if (!r) throw InvalidInput(r.diagnostic());
  return std::move(r).value();
}

int FiniteGroup::power(int g, int k) const {
  int r = identity_;
  for (int i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != identity_; x = mul(x, g)) ++k;
  return k;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (int g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  if (elements.empty()) return false;
  std::vector<char> in(order(), 0);
  for (int x : elements) {
    if (x < 0 || x >= order() || in[x]) return false;
    in[x] = 1;
  }
  if (!in[identity_]) return false;
  for (int a : elements) {
    if (!in[inv(a)]) return false;
    for (int b : elements)
      if (!in[mul(a, b)]) return false;
  }
  return true;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& generators) const {
  std::vector<char> in(order(), 0);
  std::vector<int> elems{identity_};
  in[identity_] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (int g : generators) {
      int y = mul(elems[i], g);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  for (int g = 0; g < order(); ++g) {
    auto h = generated_subgroup({g});
    if (found.insert(h).second) frontier.push_back(h);
  }
  // Joins of known subgroups with cyclic ones reach every subgroup.
  std::vector<std::vector<int>> all(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier) {
      for (int g = 0; g < order(); ++g) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        auto gens = h;
        gens.push_back(g);
        auto k = generated_subgroup(gens);
        if (found.insert(k).second) next.push_back(k);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

FiniteGroup FiniteGroup::restrict_to(const std::vector<int>& elements) const {
  if (!is_subgroup(elements))
    throw InvalidInput(Diagnostic{"subgroup", "element list is not a subgroup", {}});
  std::map<int, int> pos;
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(elements.size(), std::vector<int>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) t[i][j] = pos.at(mul(elements[i], elements[j]));
  return from_table(std::move(t));
}

namespace groups {

FiniteGroup cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table(std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup::from_table(std::move(t));
}

std::vector<Permutation> permutation_closure(int degree, const std::vector<Permutation>& generators) {
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : generators) {
      if (static_cast<int>(g.size()) != degree)
        throw InvalidInput(Diagnostic{"permutation", "generator has wrong degree", {}});
      Permutation p(degree);
      for (int x = 0; x < degree; ++x) p[x] = g[queue[i][x]];
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return {seen.begin(), seen.end()};
}

FiniteGroup from_permutations(int degree, const std::vector<Permutation>& generators) {
  auto elems = permutation_closure(degree, generators);
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  // Product gh acts as "first g, then h": (gh)(x) = h(g(x)).
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Permutation p(degree);
      for (int x = 0; x < degree; ++x) p[x] = elems[b][elems[a][x]];
      t[a][b] = index.at(p);
    }
  return FiniteGroup::from_table(std::move(t));
}

FiniteGroup symmetric(int degree) {
  if (degree <= 1) return cyclic(1);
  Permutation swap(degree), cycle(degree);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int x = 0; x < degree; ++x) cycle[x] = (x + 1) % degree;
  return from_permutations(degree, {swap, cycle});
}

FiniteGroup dihedral(int n) {
  Permutation rot(n), refl(n);
  for (int x = 0; x < n; ++x) {
    rot[x] = (x + 1) % n;
    refl[x] = (n - x) % n;
  }
  return from_permutations(n, {rot, refl});
}

FiniteGroup quaternion() {
  // Elements: 0..3 = 1,i,j,k and 4..7 = -1,-i,-j,-k.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int s = (a / 4 + b / 4 + sign[a % 4][b % 4]) % 2;
      t[a][b] = 4 * s + unit[a % 4][b % 4];
    }
  return FiniteGroup::from_table(std::move(t));
}

std::vector<std::pair<std::string, FiniteGroup>> all_of_order_at_most_8() {
  auto z2 = cyclic(2);
  return {
      {"Z1", cyclic(1)},
      {"Z2", z2},
      {"Z3", cyclic(3)},
      {"Z4", cyclic(4)},
      {"Z2xZ2", direct_product(z2, z2)},
      {"Z5", cyclic(5)},
      {"Z6", cyclic(6)},
      {"S3", symmetric(3)},
      {"Z7", cyclic(7)},
      {"Z8", cyclic(8)},
      {"Z2xZ4", direct_product(z2, cyclic(4))},
      {"Z2xZ2xZ2", direct_product(direct_product(z2, z2), z2)},
      {"D4", dihedral(4)},
      {"Q8", quaternion()},
  };
}

}  // namespace groups
}  // namespace wcc
