#include "wcc/roots.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wcc/smith.hpp"

namespace wcc {

Root::Root(std::int64_t k_, std::int64_t m_) : k(0), m(m_) {
  if (m_ <= 0) throw std::invalid_argument("root order must be positive");
  k = mod(k_, m_);
}

Complex Root::value() const {
  // Quarter turns are returned exactly.
  if ((4 * k) % m == 0) {
    switch ((4 * k) / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

std::int64_t Root::exponent_mod(std::int64_t target) const {
  if (target % m != 0) throw std::invalid_argument("target denominator must be a multiple of the root order");
  return k * (target / m);
}

bool Root::same_as(const Root& other) const { return k * other.m == other.k * m; }

std::optional<Root> as_root(Complex z, std::int64_t max_order, double tol) {
  if (std::abs(std::abs(z) - 1.0) > tol) return std::nullopt;
  const double turns = std::arg(z) / (2.0 * std::numbers::pi);
  for (std::int64_t m = 1; m <= max_order; ++m) {
    if (max_order % m != 0) continue;
    const auto k = static_cast<std::int64_t>(std::llround(turns * static_cast<double>(m)));
    Root r(k, m);
    if (std::abs(r.value() - z) < tol) return r;
  }
  return std::nullopt;
}

}  // namespace wcc
