#include "wcc/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wcc {
namespace {

std::vector<std::int64_t> compute_cyclotomic(int m) {
  // x^m - 1 divided by Phi_d for every proper divisor d of m.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    const int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    std::vector<std::int64_t> q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
      const std::int64_t c = num[i];  // den is monic
      q[i - dd] = c;
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(q);
  }
  return num;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int m) {
  static std::map<int, std::vector<std::int64_t>> cache;
  static std::recursive_mutex lock;
  std::lock_guard<std::recursive_mutex> guard(lock);
  if (m <= 0) throw std::invalid_argument("cyclotomic order must be positive");
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto poly = compute_cyclotomic(m);
  return cache.emplace(m, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic(int order) : order_(order) {
  coeffs_.assign(cyclotomic_polynomial(order).size() - 1, Rational(0));
}

Cyclotomic Cyclotomic::from_powers(const std::vector<Rational>& by_power, int order) {
  const auto& phi = cyclotomic_polynomial(order);
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<Rational> rem = by_power;
  for (int i = static_cast<int>(rem.size()) - 1; i >= deg; --i) {
    const Rational c = rem[i];
    if (c == Rational(0)) continue;
    for (int j = 0; j <= deg; ++j) rem[i - deg + j] -= c * phi[j];
  }
  Cyclotomic out(order);
  for (int i = 0; i < deg && i < static_cast<int>(rem.size()); ++i) out.coeffs_[i] = rem[i];
  return out;
}

Cyclotomic Cyclotomic::rational(Rational q, int order) {
  Cyclotomic out(order);
  out.coeffs_[0] = q;
  return out;
}

Cyclotomic Cyclotomic::root(std::int64_t k, int m) {
  std::vector<Rational> p(m, Rational(0));
  p[((k % m) + m) % m] = 1;
  return from_powers(p, m);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != Rational(0)) return false;
  return true;
}

Cyclotomic Cyclotomic::lift(int l) const {
  if (l % order_ != 0) throw std::invalid_argument("lift target must be a multiple of the order");
  if (l == order_) return *this;
  const int step = l / order_;
  std::vector<Rational> p(l, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] += coeffs_[i];
  return from_powers(p, l);
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> p(order_, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p[(order_ - static_cast<int>(i)) % order_] += coeffs_[i];
  return from_powers(p, order_);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == Rational(0)) continue;
    const double q = boost::rational_cast<double>(coeffs_[i]);
    z += q * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / order_);
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == Rational(0)) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i];
    if (i > 0) os << "*z" << order_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

namespace {

int common_order(const Cyclotomic& a, const Cyclotomic& b) { return std::lcm(a.order(), b.order()); }

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const int l = common_order(a, b);
  Cyclotomic x = a.lift(l), y = b.lift(l);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const int l = common_order(a, b);
  Cyclotomic x = a.lift(l), y = b.lift(l);
  std::vector<Rational> p(x.coeffs_.size() + y.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) p[i + j] += x.coeffs_[i] * y.coeffs_[j];
  }
  return Cyclotomic::from_powers(p, l);
}

Cyclotomic operator*(const Rational& q, const Cyclotomic& a) {
  Cyclotomic out = a;
  for (auto& c : out.coeffs_) c *= q;
  return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  const int l = common_order(a, b);
  return a.lift(l).coeffs_ == b.lift(l).coeffs_;
}

}  // namespace wcc
