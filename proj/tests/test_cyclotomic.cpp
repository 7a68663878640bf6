#include <cmath>

#include "doctest.h"
#include "wcc/cyclotomic.hpp"

using namespace wcc;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
}

TEST_CASE("root arithmetic is exact") {
  auto w = Cyclotomic::root(1, 3);
  CHECK(Cyclotomic::rational(1) + w + w * w == Cyclotomic(3));
  CHECK((w * w * w) == Cyclotomic::rational(1));
  auto i = Cyclotomic::root(1, 4);
  CHECK(i * i == Cyclotomic::rational(-1));
  CHECK(i.conj() == -i);
  // Mixed orders lift to the lcm: i * w has order 12.
  auto iw = i * w;
  CHECK(iw.order() == 12);
  CHECK(iw == Cyclotomic::root(7, 12));
  CHECK(std::abs(iw.to_complex() - std::polar(1.0, 2 * M_PI * 7 / 12)) < 1e-12);
  // sqrt(3) = zeta_12 + zeta_12^{-1}: its square is exactly 3.
  auto s = Cyclotomic::root(1, 12) + Cyclotomic::root(11, 12);
  CHECK(s * s == Cyclotomic::rational(3));
  CHECK(Cyclotomic::root(5, 10) == Cyclotomic::rational(-1));
  CHECK((Rational(1, 3) * w).conj() == Rational(1, 3) * Cyclotomic::root(2, 3));
}
