#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wcc/configuration.hpp"

using namespace wcc;

namespace {

CoherentConfiguration rank2(int n) {
  std::vector<int> color(n * n, 1);
  for (int x = 0; x < n; ++x) color[x * n + x] = 0;
  return require_coherent(Configuration{n, 2, color});
}

std::vector<int> thin_class_of(const ThinScheme& t, const std::vector<int>& elements) {
  std::vector<int> out;
  for (int g : elements) out.push_back(t.class_of_element[g]);
  return out;
}

}  // namespace

TEST_CASE("verify_coherent on small examples") {
  auto z2 = verify_coherent(Configuration{2, 2, {0, 1, 1, 0}});
  REQUIRE(z2.ok());
  CHECK(z2->p(1, 1, 0) == 1);
  CHECK(z2->p(1, 1, 1) == 0);
  CHECK(z2->homogeneous());

  auto r2 = rank2(3);
  CHECK(r2.p(1, 1, 0) == 2);
  CHECK(r2.p(1, 1, 1) == 1);
  CHECK(oracle::intersection_numbers(r2.base().color, 3, 2)[(1 * 2 + 1) * 2 + 0] == 2);
  CHECK(oracle::intersection_numbers(r2.base().color, 3, 2)[(1 * 2 + 1) * 2 + 1] == 1);
}

TEST_CASE("verify_coherent names the violated axiom") {
  // Class 1 = {(0,1)} has transpose {(1,0)}, which lies in class 2 with other cells.
  auto c2 = verify_coherent(Configuration{3, 3, {0, 1, 2, 2, 0, 2, 2, 2, 0}});
  REQUIRE_FALSE(c2.ok());
  CHECK(c2.diagnostic().code == "C2");
  CHECK(c2.diagnostic().witness.count("class") == 1);

  auto c3 = verify_coherent(Configuration{2, 2, {0, 0, 1, 1}});
  REQUIRE_FALSE(c3.ok());
  CHECK(c3.diagnostic().code == "C2");  // (0,1) in 0 but (1,0) in 1 and (1,1) in 1

  auto c3b = verify_coherent(Configuration{2, 2, {0, 0, 0, 1}});
  REQUIRE_FALSE(c3b.ok());
  CHECK(c3b.diagnostic().code == "C3");

  // Symmetric, diagonal-refining, but the 4-cycle edges vs a matching fail (C4):
  // path 0-1-2-3 edges as class 1, everything else class 2.
  std::vector<int> path(16, 2);
  for (int x = 0; x < 4; ++x) path[x * 4 + x] = 0;
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}}) path[a * 4 + b] = path[b * 4 + a] = 1;
  auto c4 = verify_coherent(Configuration{4, 3, path});
  REQUIRE_FALSE(c4.ok());
  CHECK(c4.diagnostic().code == "C4");

  auto empty = make_configuration(2, 3, {0, 1, 1, 0});
  REQUIRE_FALSE(empty.ok());
  CHECK(empty.diagnostic().code == "C1");
}

TEST_CASE("thin schemes") {
  auto z2 = thin_scheme(groups::cyclic(2));
  CHECK(z2.cc.base().color == std::vector<int>{0, 1, 1, 0});

  auto z3 = thin_scheme(groups::cyclic(3));
  CHECK(z3.cc.rank() == 3);
  CHECK(z3.cc.converse(z3.class_of_element[1]) == z3.class_of_element[2]);

  auto g = groups::symmetric(3);
  auto s3 = thin_scheme(g);
  CHECK(s3.cc.rank() == 6);
  for (int a = 0; a < 6; ++a) {
    CHECK(s3.cc.valency(a) == 1);
    for (int b = 0; b < 6; ++b) {
      const int ca = s3.class_of_element[a], cb = s3.class_of_element[b];
      CHECK(s3.cc.p(ca, cb, s3.class_of_element[g.mul(a, b)]) == 1);
    }
  }
}

TEST_CASE("schurian schemes match the orbital oracle") {
  struct Case {
    int degree;
    std::vector<Permutation> gens;
    int rank;
  };
  std::vector<Case> cases = {
      {3, {{1, 0, 2}, {1, 2, 0}}, 2},          // S3 natural action
      {4, {{1, 2, 3, 0}}, 4},                  // Z4 regular
      {4, {{1, 2, 3, 0}, {0, 3, 2, 1}}, 3},    // D4 on square vertices
      {5, {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}}, 3},
      {6, {{1, 0, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 0}}, 2},
  };
  for (const auto& c : cases) {
    auto cc = schurian_scheme(c.degree, c.gens);
    CHECK(cc.rank() == c.rank);
    CHECK(cc.homogeneous());
    auto orb = oracle::orbitals(c.degree, c.gens);
    CHECK(static_cast<int>(orb.size()) == cc.rank());
    for (const auto& o : orb) {
      const int col = cc.color(o.begin()->first, o.begin()->second);
      for (auto [x, y] : o) CHECK(cc.color(x, y) == col);
    }
    CHECK(cc.base().color == canonical_relabel(cc.base()).color);
  }
  auto z4 = schurian_scheme(4, {{1, 2, 3, 0}});
  for (int c = 0; c < 4; ++c) CHECK(z4.valency(c) == 1);
  CHECK_THROWS_AS(schurian_scheme(4, {{1, 0, 2, 3}}), InvalidInput);
}

TEST_CASE("closed subsets") {
  auto z4 = thin_scheme(groups::cyclic(4));
  CHECK(closed_subset_check(z4.cc, thin_class_of(z4, {0, 2})).ok());

  auto r2 = rank2(3);
  CHECK(closed_subset_check(r2, {0}).ok());
  CHECK(closed_subset_check(r2, {0, 1}).ok());
  CHECK_FALSE(closed_subset_check(r2, {1}).ok());

  auto g = groups::symmetric(3);
  auto s3 = thin_scheme(g);
  // Element of order 3 in S3.
  int rot = -1;
  for (int x = 0; x < 6; ++x)
    if (g.element_order(x) == 3) {
      rot = x;
      break;
    }
  auto bad = closed_subset_check(s3.cc, thin_class_of(s3, {0, rot}));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.diagnostic().code == "closed");
}

TEST_CASE("closed_subset_check agrees with the span-closure oracle on random subsets") {
  std::mt19937 rng(7);
  std::vector<CoherentConfiguration> schemes = {
      thin_scheme(groups::symmetric(3)).cc, thin_scheme(groups::cyclic(6)).cc,
      thin_scheme(groups::dihedral(4)).cc, schurian_scheme(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}),
      schurian_scheme(6, {{1, 2, 3, 4, 5, 0}, {0, 5, 4, 3, 2, 1}})};
  for (const auto& cc : schemes)
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> d;
      for (int c = 0; c < cc.rank(); ++c)
        if (c == 0 || rng() % 2) d.push_back(c);
      CHECK(closed_subset_check(cc, d).ok() == oracle::closed_by_span(cc.base().color, cc.n(), d));
    }
}

TEST_CASE("intersection numbers match dense matrix products on the corpus") {
  std::vector<CoherentConfiguration> schemes = {
      thin_scheme(groups::symmetric(3)).cc, thin_scheme(groups::quaternion()).cc,
      schurian_scheme(5, {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}}), schurian_scheme(6, {{1, 0, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 0}})};
  for (const auto& cc : schemes) {
    auto p = oracle::intersection_numbers(cc.base().color, cc.n(), cc.rank());
    const int r = cc.rank();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) CHECK(cc.p(i, j, k) == p[(i * r + j) * r + k]);
  }
}

TEST_CASE("blocks and factor configurations") {
  auto g = groups::symmetric(3);
  auto s3 = thin_scheme(g);
  const int t = 1;  // (01) transposition is element 1 in lexicographic order
  REQUIRE(g.element_order(t) == 2);
  auto d = closed_subset_check(s3.cc, thin_class_of(s3, {0, t})).value();
  auto bp = blocks_and_subconfigurations(s3.cc, d);
  CHECK(bp.blocks.size() == 3);
  CHECK(bp.block_size() == 2);
  for (const auto& b : bp.blocks) CHECK(b[0] < b[1]);
  for (const auto& sub : bp.sub) CHECK(sub.color == std::vector<int>{0, 1, 1, 0});

  auto f = factor_configuration(s3.cc, d);
  CHECK(f.quotient.n() == 3);
  CHECK(f.quotient.rank() == 2);
  CHECK(f.quotient.base().color == rank2(3).base().color);
  CHECK(f.members[0] == thin_class_of(s3, {0, t}));
  CHECK(f.members[1].size() == 4);

  auto diag = closed_subset_check(s3.cc, {0}).value();
  auto fd = factor_configuration(s3.cc, diag);
  CHECK(fd.partition.blocks.size() == 6);
  CHECK(fd.quotient.base() == s3.cc.base());

  std::vector<int> all(6);
  for (int c = 0; c < 6; ++c) all[c] = c;
  auto ft = factor_configuration(s3.cc, closed_subset_check(s3.cc, all).value());
  CHECK(ft.quotient.n() == 1);
  CHECK(ft.partition.blocks.size() == 1);
}

TEST_CASE("factor of a thin scheme matches the coset action") {
  struct Case {
    FiniteGroup g;
    std::vector<int> h;
  };
  auto z4 = groups::cyclic(4);
  std::vector<Case> cases = {{groups::symmetric(3), {0, 1}}, {z4, {0, 2}}};
  for (const auto& c : cases) {
    auto thin = thin_scheme(c.g);
    auto f = factor_configuration(thin.cc, closed_subset_check(thin.cc, thin_class_of(thin, c.h)).value());
    // G acts on left cosets xH by left multiplication; blocks are in the same order.
    const auto& blocks = f.partition.blocks;
    std::vector<Permutation> gens;
    for (int a = 0; a < c.g.order(); ++a) {
      Permutation p(blocks.size());
      for (std::size_t i = 0; i < blocks.size(); ++i) p[i] = f.partition.block_of[c.g.mul(a, blocks[i][0])];
      gens.push_back(p);
    }
    auto coset_scheme = schurian_scheme(static_cast<int>(blocks.size()), gens);
    CHECK(coset_scheme.base() == f.quotient.base());
  }
}

TEST_CASE("automorphisms") {
  auto z2 = thin_scheme(groups::cyclic(2));
  CHECK(automorphisms(z2.cc).size() == 2);
  for (const auto& g : {groups::cyclic(3), groups::symmetric(3), groups::quaternion()}) {
    auto thin = thin_scheme(g);
    auto aut = automorphisms(thin.cc);
    CHECK(static_cast<int>(aut.size()) == g.order());
    // Every automorphism is a left translation x -> ax.
    for (const auto& s : aut) {
      const int a = s[g.identity()];
      for (int x = 0; x < g.order(); ++x) CHECK(s[x] == g.mul(a, x));
    }
    // Closure under composition.
    std::set<Permutation> as(aut.begin(), aut.end());
    for (const auto& s : aut)
      for (const auto& t : aut) {
        Permutation st(s.size());
        for (std::size_t x = 0; x < s.size(); ++x) st[x] = s[t[x]];
        CHECK(as.count(st) == 1);
      }
  }
  CHECK(automorphisms(rank2(3)).size() == 6);
  CHECK_THROWS_AS(automorphisms(rank2(17)), Refusal);
  CHECK_THROWS_AS(automorphisms(rank2(9), {.max_points = 16, .max_count = 1000}), Refusal);
}
