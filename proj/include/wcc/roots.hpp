#pragma once

#include <complex>
#include <cstdint>
#include <optional>

namespace wcc {

using Complex = std::complex<double>;

/// exp(2 pi i k / m), kept as the exponent pair. k is reduced into [0, m).
struct Root {
  std::int64_t k = 0;
  std::int64_t m = 1;

  Root() = default;
  Root(std::int64_t k_, std::int64_t m_);

  Complex value() const;
  /// Same root with denominator `target` (a multiple of m).
  std::int64_t exponent_mod(std::int64_t target) const;
  /// Equality as complex numbers (denominators may differ).
  bool same_as(const Root& other) const;
};

/// The root of unity of order dividing `max_order` closest to z, if z lies
/// within `tol` of one. Smallest denominator wins.
std::optional<Root> as_root(Complex z, std::int64_t max_order, double tol);

}  // namespace wcc
