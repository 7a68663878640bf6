#pragma once

#include <optional>
#include <vector>

#include "wcc/configuration.hpp"
#include "wcc/diagnostic.hpp"
#include "wcc/roots.hpp"

namespace wcc {

inline constexpr double kDefaultEps = 1e-9;

/// Exact form of one weight entry: zero, or a root of unity.
struct ExactEntry {
  bool nonzero = false;
  Root root;
};

/// Complex n x n matrix with a zero tolerance. An entry counts as zero iff
/// its modulus is below eps; moduli in [eps, 10 eps) are ambiguous and
/// rejected by the checks below.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(int n, double eps = kDefaultEps);

  static WeightMatrix from_values(int n, std::vector<Complex> values, double eps = kDefaultEps);
  static WeightMatrix from_exact(int n, std::vector<ExactEntry> entries, double eps = kDefaultEps);
  static WeightMatrix identity(int n, double eps = kDefaultEps);
  static WeightMatrix ones(int n, double eps = kDefaultEps);

  int size() const { return n_; }
  double eps() const { return eps_; }
  void set_eps(double eps) { eps_ = eps; }
  Complex operator()(int x, int y) const { return values_[idx(x, y)]; }
  void set(int x, int y, Complex v);
  const std::vector<Complex>& values() const { return values_; }

  /// Exact entries are kept only while every entry came in exact form.
  bool is_exact() const { return !exact_.empty(); }
  const ExactEntry& exact(int x, int y) const { return exact_[idx(x, y)]; }

  bool is_zero(int x, int y) const { return std::abs(values_[idx(x, y)]) < eps_; }
  /// Diagnostic for the first entry inside the guard band, if any.
  std::optional<Diagnostic> guard_band_violation() const;
  double max_abs_diff(const WeightMatrix& other) const;

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x) * n_ + y; }
  int n_ = 0;
  double eps_ = kDefaultEps;
  std::vector<Complex> values_;
  std::vector<ExactEntry> exact_;
};

/// Dense r x r x r complex tensor.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int r) : r_(r), data_(static_cast<std::size_t>(r) * r * r) {}
  int dim() const { return r_; }
  Complex& operator()(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * r_ + j) * r_ + k]; }
  Complex operator()(int i, int j, int k) const { return data_[(static_cast<std::size_t>(i) * r_ + j) * r_ + k]; }

 private:
  int r_ = 0;
  std::vector<Complex> data_;
};

struct WeightVerdict {
  std::vector<int> support_classes;
  /// A_i^W A_j^W = sum_k beta(i,j,k) A_k^W.
  Tensor3 beta;
  bool w1 = false;
  bool w2 = false;
  bool w3 = false;
  std::optional<bool> w4;
};

WeightMatrix standard_weight(const CoherentConfiguration& cc, double eps = kDefaultEps);
WeightMatrix trivial_weight(const CoherentConfiguration& cc, double eps = kDefaultEps);

/// (W1)-(W3). The product residual is measured in max norm relative to
/// max(1, |A_i^W A_j^W|_max).
Checked<WeightVerdict> verify_weight(const CoherentConfiguration& cc, const WeightMatrix& w);
/// (W1)-(W4).
Checked<WeightVerdict> verify_h_weight(const CoherentConfiguration& cc, const WeightMatrix& w);

/// W' = diag(a)^{-1} P_sigma^{-1} (sum_c gamma(c) A_c^W) P_sigma diag(a), i.e.
/// W'_{xy} = a_x^{-1} gamma(c(x,y)) W_{sigma(x), sigma(y)} a_y.
struct EquivalenceWitness {
  Permutation sigma;
  std::vector<Complex> a;      // per point
  std::vector<Complex> gamma;  // per class; 1 outside the support
};

WeightMatrix apply_witness(const CoherentConfiguration& cc, const WeightMatrix& w, const EquivalenceWitness& wit);
/// Largest entrywise deviation |W'_xy - (witness applied to W)_xy| / max(1, |W'_xy|).
double witness_residual(const CoherentConfiguration& cc, const WeightMatrix& w, const WeightMatrix& w_prime,
                        const EquivalenceWitness& wit);

struct EquivalenceOptions {
  AutomorphismBounds bounds;
};

/// Searches Aut in enumeration order and returns the first witness, or
/// nullopt when W and W' are inequivalent. Both inputs must be weights
/// (InvalidInput otherwise); Refusal when the automorphism bounds are hit.
std::optional<EquivalenceWitness> weight_equivalent(const CoherentConfiguration& cc, const WeightMatrix& w,
                                                    const WeightMatrix& w_prime, EquivalenceOptions options = {});
/// Witness with |a_x| = |gamma(c)| = 1 and gamma(c*) = gamma(c)^{-1}; both
/// inputs must be H-weights.
std::optional<EquivalenceWitness> h_weight_equivalent(const CoherentConfiguration& cc, const WeightMatrix& w,
                                                      const WeightMatrix& w_prime, EquivalenceOptions options = {});

struct AlgebraProfile {
  int dimension = 0;
  int center_dimension = 0;
  bool operator==(const AlgebraProfile&) const = default;
};

/// Dimension of the twisted adjacency algebra and of its center, from beta.
AlgebraProfile algebra_profile(const WeightVerdict& verdict, double tol = 1e-6);

}  // namespace wcc
