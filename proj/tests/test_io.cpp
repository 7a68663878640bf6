#include <random>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "wcc/io.hpp"

using namespace wcc;

namespace {

template <class F>
io::ParseError parse_error(F f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e;
  }
  FAIL("no parse error");
  return io::ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("scheme, group and permgroup files") {
  std::istringstream k3("3 2\n0 1 1\n1 0 1\n1 1 0\n");
  auto cfg = io::parse_scheme(k3);
  auto cc = verify_coherent(cfg);
  REQUIRE(cc.ok());
  CHECK(cc->rank() == 2);
  CHECK(cc->n() == 3);

  std::istringstream z2("2\n0 1\n1 0\n");
  auto g = io::parse_group(z2);
  CHECK(g.order() == 2);
  CHECK(g.mul(1, 1) == 0);

  std::istringstream s3("3 2\n1 2 0\n1 0 2\n");
  auto spec = io::parse_permgroup(s3);
  CHECK(spec.degree == 3);
  CHECK(spec.generators == std::vector<Permutation>{{1, 2, 0}, {1, 0, 2}});
  CHECK(schurian_scheme(spec.degree, spec.generators).rank() == 2);

  for (const auto& [name, c] : corpus::schemes()) {
    CAPTURE(name);
    std::istringstream in(io::format_scheme(c.base()));
    CHECK(io::parse_scheme(in) == c.base());
  }
  for (const auto& [name, grp] : groups::all_of_order_at_most_8()) {
    std::istringstream in(io::format_group(grp));
    CHECK(io::parse_group(in).cayley() == grp.cayley());
  }
}

TEST_CASE("parse errors carry line and column") {
  auto e1 = parse_error([] {
    std::istringstream in("3 2\n0 1 1\n1 0 x\n1 1 0\n");
    io::parse_scheme(in);
  });
  CHECK(e1.line() == 3);
  CHECK(e1.column() == 5);

  auto e2 = parse_error([] {
    std::istringstream in("3 2\n0 1 1\n1 0 1 1\n1 1 0\n");
    io::parse_scheme(in);
  });
  CHECK(e2.line() == 3);
  CHECK(e2.column() == 7);

  auto e3 = parse_error([] {
    std::istringstream in("3 2\n0 1 1\n1 0\n1 1 1 0\n");
    io::parse_scheme(in);
  });
  CHECK(e3.line() == 3);

  auto e4 = parse_error([] {
    std::istringstream in("2\n0 1\n");
    io::parse_group(in);
  });
  CHECK(e4.line() == 3);

  auto e5 = parse_error([] {
    std::istringstream in("2\n1 R:1/0\nR:1/2 1\n");
    io::parse_weight(in);
  });
  CHECK(e5.line() == 2);
  CHECK(e5.column() == 3);

  auto e6 = parse_error([] {
    std::istringstream in("2 2\n0 0\n0 2\n");
    io::parse_cocycle(in, groups::cyclic(2));
  });
  CHECK(e6.line() == 3);
  CHECK(e6.column() == 3);

  auto e7 = parse_error([] {
    std::istringstream in("3 2\n0 1 1\n1 0 1\n1 1 0\n7\n");
    io::parse_scheme(in);
  });
  CHECK(e7.line() == 5);

  // A table that parses but is not a group is an invariant violation.
  std::istringstream notgroup("2\n0 1\n0 1\n");
  CHECK_THROWS_AS(io::parse_group(notgroup), InvalidInput);
}

TEST_CASE("weight tokens") {
  std::istringstream in("3\n1 -0.5+2i 0\ni -i 2.5e-1-1e+1i\nR:1/4 R:0/1 3i\n");
  auto w = io::parse_weight(in);
  CHECK_FALSE(w.is_exact());
  CHECK(w(0, 0) == Complex(1, 0));
  CHECK(w(0, 1) == Complex(-0.5, 2));
  CHECK(w(0, 2) == Complex(0, 0));
  CHECK(w(1, 0) == Complex(0, 1));
  CHECK(w(1, 1) == Complex(0, -1));
  CHECK(w(1, 2) == Complex(0.25, -10));
  CHECK(std::abs(w(2, 0) - Complex(0, 1)) < 1e-15);
  CHECK(w(2, 2) == Complex(0, 3));

  std::istringstream exact("2\n1 R:1/4\nR:3/4 0\n");
  auto e = io::parse_weight(exact);
  REQUIRE_FALSE(e.is_exact());  // "1" is a decimal token
  std::istringstream all_roots("2\nR:0/1 R:1/4\nR:3/4 0\n");
  auto r = io::parse_weight(all_roots);
  REQUIRE(r.is_exact());
  CHECK(r.exact(0, 1).root.k == 1);
  CHECK(r.exact(0, 1).root.m == 4);
  CHECK_FALSE(r.exact(1, 1).nonzero);
  CHECK(io::format_weight(r) == "2\nR:0/1 R:1/4\nR:3/4 0\n");
}

TEST_CASE("weight and cocycle round trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<Complex> v(n * n);
    for (auto& z : v) {
      switch (rng() % 4) {
        case 0: z = 0.0; break;
        case 1: z = Complex(u(rng), 0.0); break;
        case 2: z = Complex(0.0, u(rng)); break;
        default: z = Complex(u(rng), u(rng)) * std::pow(10.0, static_cast<double>(rng() % 9) - 4.0);
      }
    }
    auto w = WeightMatrix::from_values(n, v);
    std::istringstream in(io::format_weight(w));
    auto back = io::parse_weight(in);
    CHECK(back.max_abs_diff(w) <= 1e-12);
    CHECK(back.values() == w.values());
  }

  auto g = groups::quaternion();
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_cocycle(g, 4, rng);
    std::istringstream in(io::format_cocycle(a));
    CHECK(io::parse_cocycle(in, g) == a);
  }
  for (const auto& a : enumerate_cocycles(groups::cyclic(2), 2)) {
    auto w = weight_from_cocycle(a);
    REQUIRE(w.is_exact());
    std::istringstream in(io::format_weight(w));
    auto back = io::parse_weight(in);
    REQUIRE(back.is_exact());
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) CHECK(back.exact(x, y).root.same_as(w.exact(x, y).root));
  }
}

TEST_CASE("character files") {
  std::istringstream in("2 2\n0 1\n0 1\n");
  auto c = io::parse_character(in);
  CHECK(c.subgroup == std::vector<int>{0, 1});
  CHECK(c.phi.m == 2);
  CHECK(c.phi.k == std::vector<std::int64_t>{0, 1});
  auto e = parse_error([] {
    std::istringstream bad("2 2\n0 1\n0 2\n");
    io::parse_character(bad);
  });
  CHECK(e.line() == 3);
}
