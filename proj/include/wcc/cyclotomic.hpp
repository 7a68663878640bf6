#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace wcc {

using Rational = boost::rational<std::int64_t>;

/// Exact element of the cyclotomic field Q(zeta_m), zeta_m = exp(2 pi i / m).
///
/// Stored as the coefficient vector of its remainder modulo the m-th
/// cyclotomic polynomial, so equal field elements have equal storage.
/// Binary operations on elements of different orders lift both to the lcm.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int order);

  static Cyclotomic rational(Rational q, int order = 1);
  /// zeta_m^k.
  static Cyclotomic root(std::int64_t k, int m);

  int order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Complex conjugate (zeta -> zeta^{-1}).
  Cyclotomic conj() const;
  /// Same element viewed in Q(zeta_l); `l` must be a multiple of order().
  Cyclotomic lift(int l) const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Rational& q, const Cyclotomic& a);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  static Cyclotomic from_powers(const std::vector<Rational>& by_power, int order);
  int order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
const std::vector<std::int64_t>& cyclotomic_polynomial(int m);

}  // namespace wcc
