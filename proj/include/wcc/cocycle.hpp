#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wcc/configuration.hpp"
#include "wcc/group.hpp"
#include "wcc/smith.hpp"
#include "wcc/weight.hpp"

namespace wcc {

/// alpha(g, h) = exp(2 pi i k[g][h] / m).
struct RootCocycle {
  FiniteGroup group;
  std::int64_t m = 1;
  std::vector<std::int64_t> k;  // row-major |G| x |G|, entries in [0, m)

  RootCocycle() = default;
  RootCocycle(FiniteGroup g, std::int64_t modulus, std::vector<std::int64_t> exponents);
  static RootCocycle trivial(const FiniteGroup& g, std::int64_t modulus = 1);

  int n() const { return group.order(); }
  std::int64_t at(int g, int h) const { return k[static_cast<std::size_t>(g) * n() + h]; }
  Root root(int g, int h) const { return Root(at(g, h), m); }
  Complex value(int g, int h) const { return root(g, h).value(); }
  /// Same cocycle with denominator `target` (a multiple of m).
  RootCocycle lifted(std::int64_t target) const;
  bool operator==(const RootCocycle& other) const { return m == other.m && k == other.k; }
};

struct ComplexCocycle {
  FiniteGroup group;
  std::vector<Complex> values;  // row-major |G| x |G|
  double eps = kDefaultEps;

  int n() const { return group.order(); }
  Complex at(int g, int h) const { return values[static_cast<std::size_t>(g) * n() + h]; }
};

ComplexCocycle to_complex(const RootCocycle& a, double eps = kDefaultEps);
/// Exponent form when every value lies within eps of a root of unity of
/// order dividing max_order; the denominator is the lcm of the orders found.
std::optional<RootCocycle> exactify(const ComplexCocycle& a, std::int64_t max_order);

/// nullopt when alpha(g,h) alpha(gh,t) = alpha(g,ht) alpha(h,t) holds for all
/// triples (exactly, or as |lhs/rhs - 1| < eps); otherwise the first failing
/// triple with both sides.
std::optional<Diagnostic> verify_cocycle(const RootCocycle& a);
std::optional<Diagnostic> verify_cocycle(const ComplexCocycle& a);

struct CohomologyLimits {
  int max_group = 12;
};

struct CohomologyGroup {
  std::string coefficients;  // "Z_m" or "C^x"
  std::vector<std::int64_t> invariant_factors;
  std::vector<RootCocycle> representatives;  // one per invariant factor
  std::int64_t order() const;
};

/// H^2(G, Z_m) with trivial action. Refusal above the group size limit.
CohomologyGroup cocycle_group_Zn(const FiniteGroup& g, std::int64_t m, CohomologyLimits limits = {});
/// H^2(G, C^x); representatives are mu_|G|-valued.
CohomologyGroup h2_over_C(const FiniteGroup& g, CohomologyLimits limits = {});

/// Generators of the full cocycle group Z^2(G, Z_m) (including coboundaries).
std::vector<KernelGenerator> cocycle_generators(const FiniteGroup& g, std::int64_t m, CohomologyLimits limits = {});
/// Every element of Z^2(G, Z_m); Refusal when there are more than `max_count`.
std::vector<RootCocycle> enumerate_cocycles(const FiniteGroup& g, std::int64_t m, std::size_t max_count = 1u << 16,
                                            CohomologyLimits limits = {});
/// Uniform random element of Z^2(G, Z_m).
RootCocycle random_cocycle(const FiniteGroup& g, std::int64_t m, std::mt19937_64& rng, CohomologyLimits limits = {});

/// alpha = delta gamma with delta gamma(g, h) = gamma(g) gamma(h) / gamma(gh).
struct CoboundaryWitness {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> c;  // gamma(g) = exp(2 pi i c[g] / modulus)
  std::vector<Root> gamma() const;
};

/// Over C^x. Among all solutions the lexicographically smallest exponent
/// vector modulo m * exponent(G) is returned.
std::optional<CoboundaryWitness> is_coboundary_over_C(const RootCocycle& a);
/// Over Z_m: gamma must itself be mu_m-valued.
std::optional<CoboundaryWitness> is_coboundary_mod(const RootCocycle& a);
/// Over C^x for numeric cocycles; gamma verified within eps.
std::optional<std::vector<Complex>> is_coboundary(const ComplexCocycle& a);

bool cohomologous_over_C(const RootCocycle& a, const RootCocycle& b);
bool cohomologous(const ComplexCocycle& a, const ComplexCocycle& b);

/// beta = alpha * delta gamma with beta(g,1) = beta(1,g) = 1 and
/// beta(g, g^{-1}) = beta(g^{-1}, g) = 1.
struct NormalizedCocycle {
  RootCocycle beta;
  CoboundaryWitness gamma;
};
NormalizedCocycle normalize_cocycle(const RootCocycle& a);

struct NormalizedComplexCocycle {
  ComplexCocycle beta;
  std::vector<Complex> gamma;
};
/// Same normal form for numeric unit-modulus cocycles.
NormalizedComplexCocycle normalize_cocycle(const ComplexCocycle& a);

/// beta = alpha / delta gamma with |beta| = 1, gamma positive real.
struct UnimodularCocycle {
  ComplexCocycle beta;
  std::vector<double> gamma;
};
UnimodularCocycle make_unimodular(const ComplexCocycle& a);

/// (W_alpha)_{xy} = alpha(x, x^{-1} y) on thin(G); exact for root cocycles.
WeightMatrix weight_from_cocycle(const RootCocycle& a, double eps = kDefaultEps);
WeightMatrix weight_from_cocycle(const ComplexCocycle& a);

struct WeightCocycle {
  ComplexCocycle complex;
  std::optional<RootCocycle> exact;
};

/// alpha_W(g, h) = W_{x,xg} W_{xg,xgh} / W_{x,xgh}, read at x = 1 and checked
/// for every other x. W must be a weight on thin(G) with no zero entry.
Checked<WeightCocycle> cocycle_from_weight(const FiniteGroup& g, const WeightMatrix& w);

struct SupportDecomposition {
  std::vector<int> subgroup;             // elements of G, identity first
  FiniteGroup subgroup_group;            // multiplication restricted to `subgroup`
  std::vector<std::vector<int>> blocks;  // left cosets x H, points x h in subgroup order
  std::vector<WeightMatrix> block_weights;
  std::vector<WeightCocycle> block_cocycles;
  bool blocks_cohomologous = false;
};

/// The subgroup H = {h | W_{1h} != 0} and the diagonal blocks of W on the
/// cosets of H, each a weight on thin(H) without zero entries.
Checked<SupportDecomposition> support_subgroup_and_blocks(const FiniteGroup& g, const WeightMatrix& w);

struct HWeightResult {
  WeightMatrix h_weight;
  EquivalenceWitness witness;  // applied to the input W it gives h_weight
  std::optional<RootCocycle> normalized;
};

/// W ~ W_beta with beta the normal form of alpha_W; W without zero entries.
Checked<HWeightResult> to_h_weight(const FiniteGroup& g, const WeightMatrix& w);

struct WeightClassification {
  CohomologyGroup h2;
  std::vector<std::vector<std::int64_t>> combinations;  // exponent of each generator
  std::vector<RootCocycle> cocycles;
  std::vector<WeightMatrix> weights;
  std::vector<std::vector<bool>> equivalent;  // pairwise weight_equivalent
  /// Equivalent exactly on the diagonal, as the cohomology classes are distinct.
  bool consistent = false;
};

WeightClassification classify_weights(const FiniteGroup& g, CohomologyLimits limits = {},
                                       EquivalenceOptions options = {});

}  // namespace wcc
