#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcc/cocycle.hpp"
#include "wcc/configuration.hpp"
#include "wcc/group.hpp"
#include "wcc/monomial.hpp"
#include "wcc/weight.hpp"

namespace wcc::io {

/// Malformed text; line and column are 1-based and point at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

struct PermGroupSpec {
  int degree = 0;
  std::vector<Permutation> generators;
};

struct CharacterSpec {
  std::vector<int> subgroup;
  LinearCharacter phi;
};

// "n r" then n rows of n class indices.
Configuration parse_scheme(std::istream& in);
// "n" then the n x n Cayley table; element 0 is the identity.
FiniteGroup parse_group(std::istream& in);
// "n k" then k lines of n images each.
PermGroupSpec parse_permgroup(std::istream& in);
// "n" then n rows of n tokens: 0, a+bi, or R:k/m.
WeightMatrix parse_weight(std::istream& in, double eps = kDefaultEps);
// "n m" then n rows of n exponents mod m.
RootCocycle parse_cocycle(std::istream& in, const FiniteGroup& g);
// "l m", then the l elements of H, then the l exponents of phi.
CharacterSpec parse_character(std::istream& in);

std::string format_scheme(const Configuration& cfg);
std::string format_group(const FiniteGroup& g);
std::string format_weight(const WeightMatrix& w);
std::string format_cocycle(const RootCocycle& a);
std::string format_complex(Complex z);
/// Single weight token; exact entries print as R:k/m.
std::string weight_token(const WeightMatrix& w, int x, int y);

}  // namespace wcc::io
