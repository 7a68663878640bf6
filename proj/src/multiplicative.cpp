#include "wcc/multiplicative.hpp"

#include <cmath>
#include <stdexcept>

namespace wcc {

MultiplicativeSystem::MultiplicativeSystem(const IntMatrix& exponents)
    : rows_(exponents.rows()),
      cols_(exponents.cols()),
      form_(smith_normal_form(exponents, {.left = true, .right = true})) {}

std::vector<Complex> MultiplicativeSystem::solve(const std::vector<Complex>& rhs, bool unit_modulus) const {
  if (static_cast<int>(rhs.size()) != rows_) throw std::invalid_argument("right-hand side has wrong length");
  std::vector<Complex> logs(rows_);
  for (int i = 0; i < rows_; ++i) {
    if (rhs[i] == Complex(0.0, 0.0)) throw std::invalid_argument("zero right-hand side in multiplicative system");
    logs[i] = unit_modulus ? Complex(0.0, std::arg(rhs[i])) : std::log(rhs[i]);
  }
  auto z = particular_solution(form_, cols_, logs);
  std::vector<Complex> x(cols_);
  for (int j = 0; j < cols_; ++j) x[j] = unit_modulus ? std::polar(1.0, z[j].imag()) : std::exp(z[j]);
  return x;
}

}  // namespace wcc
