#include "wcc/configuration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace wcc {
namespace {

std::string cell_text(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

}  // namespace

Checked<Configuration> make_configuration(int n, int r, std::vector<int> color) {
  if (n <= 0 || r <= 0) return Diagnostic{"C1", "n and r must be positive", {}};
  if (color.size() != static_cast<std::size_t>(n) * n)
    return Diagnostic{"C1", "color table must have n*n entries", {}};
  std::vector<char> seen(r, 0);
  for (std::size_t i = 0; i < color.size(); ++i) {
    if (color[i] < 0 || color[i] >= r)
      return Diagnostic{"C1", "class index out of range", {}}.with(
          "cell", cell_text(static_cast<int>(i) / n, static_cast<int>(i) % n));
    seen[color[i]] = 1;
  }
  for (int c = 0; c < r; ++c)
    if (!seen[c]) return Diagnostic{"C1", "empty class", {}}.with("class", c);
  return Configuration{n, r, std::move(color)};
}

Configuration canonical_relabel(const Configuration& cfg) {
  std::vector<int> relabel(cfg.r, -1);
  int next = 0;
  for (int x = 0; x < cfg.n; ++x)
    if (relabel[cfg.at(x, x)] < 0) relabel[cfg.at(x, x)] = next++;
  for (int x = 0; x < cfg.n; ++x)
    for (int y = 0; y < cfg.n; ++y)
      if (relabel[cfg.at(x, y)] < 0) relabel[cfg.at(x, y)] = next++;
  Configuration out{cfg.n, cfg.r, cfg.color};
  for (auto& c : out.color) c = relabel[c];
  return out;
}

Checked<CoherentConfiguration> verify_coherent(const Configuration& input) {
  auto shaped = make_configuration(input.n, input.r, input.color);
  if (!shaped) return shaped.diagnostic();
  const Configuration& cfg = *shaped;
  const int n = cfg.n, r = cfg.r;

  // (C2): the transpose of each class lies inside one class.
  std::vector<int> converse(r, -1);
  std::vector<std::pair<int, int>> first_cell(r, {-1, -1});
  std::vector<std::int64_t> size(r, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int c = cfg.at(x, y);
      ++size[c];
      if (first_cell[c].first < 0) first_cell[c] = {x, y};
      const int t = cfg.at(y, x);
      if (converse[c] < 0) {
        converse[c] = t;
      } else if (converse[c] != t) {
        auto [fx, fy] = first_cell[c];
        return Diagnostic{"C2", "transpose of a class is not a class", {}}
            .with("class", c)
            .with("cells", cell_text(fx, fy) + " " + cell_text(x, y));
      }
    }

  // (C3): classes meeting the diagonal lie inside it.
  std::vector<char> diag_flag(r, 0);
  std::vector<int> diagonal;
  for (int x = 0; x < n; ++x) {
    const int c = cfg.at(x, x);
    if (!diag_flag[c]) {
      diag_flag[c] = 1;
      diagonal.push_back(c);
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && diag_flag[cfg.at(x, y)])
        return Diagnostic{"C3", "class mixes diagonal and off-diagonal cells", {}}
            .with("class", cfg.at(x, y))
            .with("cell", cell_text(x, y));
  std::sort(diagonal.begin(), diagonal.end());

  // (C4): the count of z with (x,z) in i, (z,y) in j depends only on the class of (x,y).
  std::vector<std::int64_t> p(static_cast<std::size_t>(r) * r * r, 0);
  auto pidx = [r](int i, int j, int k) { return (static_cast<std::size_t>(i) * r + j) * r + k; };
  for (int k = 0; k < r; ++k) {
    auto [x, y] = first_cell[k];
    for (int z = 0; z < n; ++z) ++p[pidx(cfg.at(x, z), cfg.at(z, y), k)];
  }
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(r) * r, 0);
  std::vector<std::size_t> touched;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int k = cfg.at(x, y);
      if (first_cell[k] == std::make_pair(x, y)) continue;
      touched.clear();
      for (int z = 0; z < n; ++z) {
        const std::size_t s = static_cast<std::size_t>(cfg.at(x, z)) * r + cfg.at(z, y);
        if (scratch[s]++ == 0) touched.push_back(s);
      }
      for (std::size_t s : touched) {
        const int i = static_cast<int>(s / r), j = static_cast<int>(s % r);
        if (scratch[s] != p[pidx(i, j, k)]) {
          auto [fx, fy] = first_cell[k];
          Diagnostic d{"C4", "product A_i A_j is not constant on a class", {}};
          d.with("triple", "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")")
              .with("cells", cell_text(fx, fy) + " " + cell_text(x, y));
          for (std::size_t u : touched) scratch[u] = 0;
          return d;
        }
      }
      for (std::size_t s : touched) scratch[s] = 0;
    }

  CoherentConfiguration cc;
  cc.base_ = cfg;
  cc.converse_ = std::move(converse);
  cc.diagonal_ = std::move(diagonal);
  cc.diag_flag_ = std::move(diag_flag);
  cc.p_ = std::move(p);
  cc.size_ = std::move(size);
  return cc;
}

CoherentConfiguration require_coherent(const Configuration& cfg) {
  auto r = verify_coherent(cfg);
  if (!r) throw InvalidInput(r.diagnostic());
  return std::move(r).value();
}

ThinScheme thin_scheme(const FiniteGroup& g) {
  const int n = g.order();
  ThinScheme out;
  out.class_of_element.assign(n, -1);
  out.element_of_class.push_back(g.identity());
  for (int e = 0; e < n; ++e)
    if (e != g.identity()) out.element_of_class.push_back(e);
  for (int c = 0; c < n; ++c) out.class_of_element[out.element_of_class[c]] = c;

  std::vector<int> color(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) color[static_cast<std::size_t>(x) * n + y] = out.class_of_element[g.mul(g.inv(x), y)];
  out.cc = require_coherent(Configuration{n, n, std::move(color)});
  return out;
}

CoherentConfiguration schurian_scheme(int degree, const std::vector<Permutation>& generators) {
  if (degree <= 0) throw InvalidInput(Diagnostic{"schurian", "degree must be positive", {}});
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree)
      throw InvalidInput(Diagnostic{"permutation", "generator has wrong degree", {}});
    std::vector<char> hit(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || hit[v])
        throw InvalidInput(Diagnostic{"permutation", "generator is not a permutation", {}});
      hit[v] = 1;
    }
  }
  // Transitivity.
  std::vector<char> reached(degree, 0);
  std::vector<int> queue{0};
  reached[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : generators)
      if (!reached[g[queue[i]]]) {
        reached[g[queue[i]]] = 1;
        queue.push_back(g[queue[i]]);
      }
  if (static_cast<int>(queue.size()) != degree)
    throw InvalidInput(Diagnostic{"transitivity", "generated group is not transitive", {}}.with(
        "orbit_of_0_size", static_cast<int>(queue.size())));

  // Orbitals by closure of pairs under the generators.
  const int n = degree;
  std::vector<int> color(static_cast<std::size_t>(n) * n, -1);
  int r = 0;
  std::vector<std::pair<int, int>> stack;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (color[static_cast<std::size_t>(x) * n + y] >= 0) continue;
      color[static_cast<std::size_t>(x) * n + y] = r;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        for (const auto& g : generators) {
          auto& slot = color[static_cast<std::size_t>(g[a]) * n + g[b]];
          if (slot < 0) {
            slot = r;
            stack.emplace_back(g[a], g[b]);
          }
        }
      }
      ++r;
    }
  return require_coherent(canonical_relabel(Configuration{n, r, std::move(color)}));
}

Checked<ClosedSubset> closed_subset_check(const CoherentConfiguration& cc, std::vector<int> classes) {
  const int r = cc.rank();
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.empty()) return Diagnostic{"closed", "empty class set", {}};
  std::vector<char> in(r, 0);
  for (int c : classes) {
    if (c < 0 || c >= r) return Diagnostic{"closed", "class index out of range", {}}.with("class", c);
    in[c] = 1;
  }
  for (int d : classes)
    if (!in[cc.converse(d)])
      return Diagnostic{"closed", "not closed under converse", {}}.with("class", d).with("converse",
                                                                                          cc.converse(d));
  for (int d : classes)
    for (int e : classes)
      for (int c = 0; c < r; ++c)
        if (cc.p(d, e, c) > 0 && !in[c])
          return Diagnostic{"closed", "not closed under products", {}}.with(
              "triple", "(" + std::to_string(d) + "," + std::to_string(e) + "," + std::to_string(c) + ")");
  for (int c : cc.diagonal_classes())
    if (!in[c]) return Diagnostic{"closed", "closed set misses a diagonal class", {}}.with("class", c);
  return ClosedSubset{std::move(classes)};
}

BlockPartition blocks_and_subconfigurations(const CoherentConfiguration& cc, const ClosedSubset& d) {
  const int n = cc.n();
  BlockPartition bp;
  bp.classes = d.classes;
  std::vector<int> local(cc.rank(), -1);
  for (std::size_t i = 0; i < d.classes.size(); ++i) local[d.classes[i]] = static_cast<int>(i);

  bp.block_of.assign(n, -1);
  bp.position.assign(n, -1);
  for (int x0 = 0; x0 < n; ++x0) {
    if (bp.block_of[x0] >= 0) continue;
    std::vector<int> members;
    for (int y = 0; y < n; ++y)
      if (local[cc.color(x0, y)] >= 0) members.push_back(y);
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      const int ca = a == x0 ? -1 : cc.color(x0, a), cb = b == x0 ? -1 : cc.color(x0, b);
      return ca != cb ? ca < cb : a < b;
    });
    const int id = static_cast<int>(bp.blocks.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (bp.block_of[members[i]] >= 0)
        throw InvalidInput(Diagnostic{"closed", "class set does not induce a partition", {}}.with("point",
                                                                                                 members[i]));
      bp.block_of[members[i]] = id;
      bp.position[members[i]] = static_cast<int>(i);
    }
    bp.blocks.push_back(std::move(members));
  }
  for (const auto& block : bp.blocks) {
    if (block.size() != bp.blocks.front().size())
      throw InvalidInput(Diagnostic{"closed", "blocks of unequal size", {}});
    const int l = static_cast<int>(block.size());
    Configuration sub{l, static_cast<int>(d.classes.size()), std::vector<int>(static_cast<std::size_t>(l) * l)};
    for (int a = 0; a < l; ++a)
      for (int b = 0; b < l; ++b) {
        const int c = local[cc.color(block[a], block[b])];
        if (c < 0) throw InvalidInput(Diagnostic{"closed", "block is not closed", {}});
        sub.color[static_cast<std::size_t>(a) * l + b] = c;
      }
    bp.sub.push_back(std::move(sub));
  }
  return bp;
}

FactorData factor_configuration(const CoherentConfiguration& cc, const ClosedSubset& d) {
  FactorData out;
  out.partition = blocks_and_subconfigurations(cc, d);
  const auto& bp = out.partition;
  const int m = static_cast<int>(bp.blocks.size());
  const int r = cc.rank();

  // c^D as a set of block pairs.
  std::vector<std::vector<char>> incidence(r, std::vector<char>(static_cast<std::size_t>(m) * m, 0));
  for (int x = 0; x < cc.n(); ++x)
    for (int y = 0; y < cc.n(); ++y)
      incidence[cc.color(x, y)][static_cast<std::size_t>(bp.block_of[x]) * m + bp.block_of[y]] = 1;

  std::map<std::vector<char>, int> part;
  std::vector<int> provisional(r);
  for (int c = 0; c < r; ++c) {
    auto [it, inserted] = part.emplace(incidence[c], static_cast<int>(part.size()));
    provisional[c] = it->second;
  }
  // Distinct c^D must be disjoint so that C//D partitions the block pairs.
  std::vector<int> color(static_cast<std::size_t>(m) * m, -1);
  for (int c = 0; c < r; ++c)
    for (std::size_t s = 0; s < incidence[c].size(); ++s) {
      if (!incidence[c][s]) continue;
      if (color[s] >= 0 && color[s] != provisional[c])
        throw InvalidInput(Diagnostic{"factor", "quotient classes overlap; input is not a valid scheme", {}}
                               .with("class", c)
                               .with("block_pair", "(" + std::to_string(s / m) + "," + std::to_string(s % m) + ")"));
      color[s] = provisional[c];
    }
  Configuration raw{m, static_cast<int>(part.size()), color};
  Configuration canon = canonical_relabel(raw);
  std::vector<int> relabel(raw.r, -1);
  for (std::size_t s = 0; s < raw.color.size(); ++s) relabel[raw.color[s]] = canon.color[s];

  out.class_quotient.resize(r);
  out.members.assign(raw.r, {});
  for (int c = 0; c < r; ++c) {
    out.class_quotient[c] = relabel[provisional[c]];
    out.members[out.class_quotient[c]].push_back(c);
  }
  auto q = verify_coherent(canon);
  if (!q)
    throw InvalidInput(Diagnostic{"factor", "factor configuration is not coherent: " + q.diagnostic().message, {}});
  out.quotient = std::move(q).value();
  return out;
}

std::vector<Permutation> automorphisms(const CoherentConfiguration& cc, AutomorphismBounds bounds) {
  const int n = cc.n();
  if (n > bounds.max_points)
    throw Refusal("automorphism search refused: " + std::to_string(n) + " points exceeds bound " +
                  std::to_string(bounds.max_points));
  // Row and column color profiles prune candidate images.
  std::vector<std::vector<int>> profile(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      profile[x].push_back(cc.color(x, y));
      profile[x].push_back(cc.rank() + cc.color(y, x));
    }
    std::sort(profile[x].begin(), profile[x].end());
  }
  std::vector<Permutation> found;
  Permutation sigma(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> extend = [&](int u) {
    if (u == n) {
      if (found.size() >= bounds.max_count)
        throw Refusal("automorphism search refused: more than " + std::to_string(bounds.max_count) +
                      " automorphisms");
      found.push_back(sigma);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || cc.color(v, v) != cc.color(u, u) || profile[v] != profile[u]) continue;
      bool ok = true;
      for (int w = 0; w < u && ok; ++w)
        ok = cc.color(sigma[w], v) == cc.color(w, u) && cc.color(v, sigma[w]) == cc.color(u, w);
      if (!ok) continue;
      used[v] = 1;
      sigma[u] = v;
      extend(u + 1);
      used[v] = 0;
    }
    sigma[u] = -1;
  };
  extend(0);
  return found;
}

}  // namespace wcc
