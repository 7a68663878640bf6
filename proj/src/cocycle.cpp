#include "wcc/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wcc/multiplicative.hpp"

namespace wcc {
namespace {

std::string triple_text(int g, int h, int t) {
  return "(" + std::to_string(g) + "," + std::to_string(h) + "," + std::to_string(t) + ")";
}

std::string complex_text(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

void check_limit(const FiniteGroup& g, const CohomologyLimits& limits) {
  if (g.order() > limits.max_group)
    throw Refusal("group order " + std::to_string(g.order()) + " exceeds the cohomology limit " +
                  std::to_string(limits.max_group));
}

/// Coboundary maps of the standard cochain complex with trivial action:
/// d1 c (g,h) = c(g) + c(h) - c(gh), d2 k (g,h,t) = k(g,h) + k(gh,t) - k(g,ht) - k(h,t).
struct CochainComplex {
  int n = 0;
  IntMatrix d1;
  SmithForm d1_form;  // U and V
  SmithForm d2_form;  // V and V^{-1}
};

IntMatrix coboundary_1(const FiniteGroup& g) {
  const int n = g.order();
  IntMatrix d1(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int row = a * n + b;
      d1(row, a) += 1;
      d1(row, b) += 1;
      d1(row, g.mul(a, b)) -= 1;
    }
  return d1;
}

IntMatrix coboundary_2(const FiniteGroup& g) {
  const int n = g.order();
  // Duplicate and zero rows carry no information; dropping them keeps the
  // Smith reduction small.
  std::set<std::vector<std::pair<int, int>>> rows;
  std::map<int, int> acc;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int t = 0; t < n; ++t) {
        acc.clear();
        acc[a * n + b] += 1;
        acc[g.mul(a, b) * n + t] += 1;
        acc[a * n + g.mul(b, t)] -= 1;
        acc[b * n + t] -= 1;
        std::vector<std::pair<int, int>> row;
        for (auto [col, v] : acc)
          if (v != 0) row.emplace_back(col, v);
        if (!row.empty()) rows.insert(std::move(row));
      }
  IntMatrix d2(static_cast<int>(rows.size()), n * n);
  int r = 0;
  for (const auto& row : rows) {
    for (auto [col, v] : row) d2(r, col) = v;
    ++r;
  }
  return d2;
}

const CochainComplex& cochain_complex(const FiniteGroup& g) {
  static std::map<std::vector<std::vector<int>>, std::shared_ptr<CochainComplex>> cache;
  static std::mutex lock;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(g.cayley());
    if (it != cache.end()) return *it->second;
  }
  auto cx = std::make_shared<CochainComplex>();
  cx->n = g.order();
  cx->d1 = coboundary_1(g);
  cx->d1_form = smith_normal_form(cx->d1, {.left = true, .right = true});
  cx->d2_form = smith_normal_form(coboundary_2(g), {.left = false, .right = true});
  std::lock_guard<std::mutex> guard(lock);
  return *cache.emplace(g.cayley(), std::move(cx)).first->second;
}

std::vector<std::int64_t> apply_mod(const IntMatrix& a, const std::vector<std::int64_t>& v, std::int64_t m) {
  std::vector<std::int64_t> out(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    __int128 acc = 0;
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) acc += static_cast<__int128>(a(i, j)) * v[j];
    out[i] = mod(static_cast<std::int64_t>(acc % m), m);
  }
  return out;
}

/// Z^2(G, Z_m) = sum of cyclic summands; summand j sits at Smith index
/// `index[j]` with order `order[j]`.
struct CocycleCoordinates {
  std::int64_t m = 1;
  std::vector<int> index;
  std::vector<std::int64_t> order;
  const SmithForm* form = nullptr;
  int cols = 0;

  CocycleCoordinates(const CochainComplex& cx, std::int64_t modulus) : m(modulus), form(&cx.d2_form), cols(cx.n * cx.n) {
    for (int i = 0; i < cols; ++i) {
      const std::int64_t g = i < form->rank ? std::gcd(form->diagonal[i], m) : m;
      if (g == 1) continue;
      index.push_back(i);
      order.push_back(g);
    }
  }

  int size() const { return static_cast<int>(index.size()); }

  std::vector<std::int64_t> coords(const std::vector<std::int64_t>& cocycle) const {
    const auto y = apply_mod(*form->right_inverse, cocycle, m);
    std::vector<std::int64_t> t(size());
    for (int j = 0; j < size(); ++j) {
      const std::int64_t step = m / order[j];
      if (y[index[j]] % step != 0) throw std::logic_error("vector is not a cocycle");
      t[j] = mod(y[index[j]] / step, order[j]);
    }
    return t;
  }

  std::vector<std::int64_t> cocycle(const std::vector<std::int64_t>& t) const {
    std::vector<std::int64_t> out(cols, 0);
    const IntMatrix& v = *form->right;
    for (int j = 0; j < size(); ++j) {
      if (t[j] == 0) continue;
      const std::int64_t scale = mod(static_cast<std::int64_t>((static_cast<__int128>(t[j]) * (m / order[j])) % m), m);
      for (int r = 0; r < cols; ++r)
        out[r] = mod(static_cast<std::int64_t>((out[r] + static_cast<__int128>(mod(v(r, index[j]), m)) * scale) % m), m);
    }
    return out;
  }
};

/// Z^2 / span(subgroup) presented through abelian_quotient.
CohomologyGroup quotient_group(const FiniteGroup& g, const CocycleCoordinates& z,
                               const std::vector<std::vector<std::int64_t>>& subgroup, std::string coefficients) {
  const int k = z.size();
  IntMatrix rel(k, k + static_cast<int>(subgroup.size()));
  for (int j = 0; j < k; ++j) rel(j, j) = z.order[j];
  for (std::size_t s = 0; s < subgroup.size(); ++s) {
    const auto t = z.coords(subgroup[s]);
    for (int j = 0; j < k; ++j) rel(j, k + static_cast<int>(s)) = t[j];
  }
  const AbelianQuotient q = abelian_quotient(rel);
  CohomologyGroup out;
  out.coefficients = std::move(coefficients);
  for (std::size_t i = 0; i < q.factors.size(); ++i) {
    out.invariant_factors.push_back(q.factors[i]);
    std::vector<std::int64_t> t(k);
    for (int j = 0; j < k; ++j) t[j] = mod(q.generators[i][j], z.order[j]);
    out.representatives.emplace_back(g, z.m, z.cocycle(t));
  }
  return out;
}

std::vector<std::int64_t> column(const IntMatrix& a, int j) {
  std::vector<std::int64_t> v(a.rows());
  for (int i = 0; i < a.rows(); ++i) v[i] = a(i, j);
  return v;
}

/// Lexicographically smallest x with d1 x = rhs (mod modulus).
std::optional<std::vector<std::int64_t>> smallest_solution(const CochainComplex& cx,
                                                           const std::vector<std::int64_t>& rhs,
                                                           std::int64_t modulus) {
  auto sol = solve_mod(cx.d1_form, cx.n, rhs, modulus);
  if (!sol) return std::nullopt;
  const auto kernel = kernel_mod(cx.d1_form, cx.n, modulus);
  std::vector<std::int64_t> best = *sol, digits(kernel.size(), 0);
  for (;;) {
    std::size_t j = 0;
    while (j < kernel.size() && ++digits[j] == kernel[j].order) digits[j++] = 0;
    if (j == kernel.size()) break;
    std::vector<std::int64_t> cand = *sol;
    for (std::size_t q = 0; q < kernel.size(); ++q)
      for (int r = 0; r < cx.n; ++r) cand[r] = mod(cand[r] + digits[q] * kernel[q].vector[r], modulus);
    best = std::min(best, cand);
  }
  if (apply_mod(cx.d1, best, modulus) != rhs) throw std::logic_error("coboundary solution failed verification");
  return best;
}

Complex delta(const std::vector<Complex>& gamma, const FiniteGroup& g, int a, int b) {
  return gamma[a] * gamma[b] / gamma[g.mul(a, b)];
}

}  // namespace

RootCocycle::RootCocycle(FiniteGroup g, std::int64_t modulus, std::vector<std::int64_t> exponents)
    : group(std::move(g)), m(modulus), k(std::move(exponents)) {
  if (m <= 0) throw std::invalid_argument("cocycle root order must be positive");
  if (k.size() != static_cast<std::size_t>(group.order()) * group.order())
    throw std::invalid_argument("cocycle table does not match the group order");
  for (auto& v : k) v = mod(v, m);
}

RootCocycle RootCocycle::trivial(const FiniteGroup& g, std::int64_t modulus) {
  return RootCocycle(g, modulus, std::vector<std::int64_t>(static_cast<std::size_t>(g.order()) * g.order(), 0));
}

RootCocycle RootCocycle::lifted(std::int64_t target) const {
  if (target % m != 0) throw std::invalid_argument("lift target must be a multiple of the root order");
  std::vector<std::int64_t> out(k);
  for (auto& v : out) v *= target / m;
  return RootCocycle(group, target, std::move(out));
}

std::vector<Root> CoboundaryWitness::gamma() const {
  std::vector<Root> out;
  for (auto v : c) out.emplace_back(v, modulus);
  return out;
}

std::int64_t CohomologyGroup::order() const {
  std::int64_t o = 1;
  for (auto f : invariant_factors) o *= f;
  return o;
}

ComplexCocycle to_complex(const RootCocycle& a, double eps) {
  ComplexCocycle out{a.group, {}, eps};
  out.values.reserve(a.k.size());
  for (auto v : a.k) out.values.push_back(Root(v, a.m).value());
  return out;
}

std::optional<RootCocycle> exactify(const ComplexCocycle& a, std::int64_t max_order) {
  std::vector<Root> roots;
  std::int64_t l = 1;
  for (const auto& z : a.values) {
    auto r = as_root(z, max_order, a.eps);
    if (!r) return std::nullopt;
    l = std::lcm(l, r->m);
    roots.push_back(*r);
  }
  std::vector<std::int64_t> k;
  for (const auto& r : roots) k.push_back(r.exponent_mod(l));
  return RootCocycle(a.group, l, std::move(k));
}

std::optional<Diagnostic> verify_cocycle(const RootCocycle& a) {
  const int n = a.n();
  if (a.k.size() != static_cast<std::size_t>(n) * n)
    return Diagnostic{"size", "cocycle table does not match the group order", {}};
  const auto& g = a.group;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int t = 0; t < n; ++t) {
        const std::int64_t lhs = mod(a.at(x, y) + a.at(g.mul(x, y), t), a.m);
        const std::int64_t rhs = mod(a.at(x, g.mul(y, t)) + a.at(y, t), a.m);
        if (lhs != rhs)
          return Diagnostic{"cocycle", "cocycle identity fails", {}}
              .with("triple", triple_text(x, y, t))
              .with("lhs", std::to_string(lhs) + "/" + std::to_string(a.m))
              .with("rhs", std::to_string(rhs) + "/" + std::to_string(a.m));
      }
  return std::nullopt;
}

std::optional<Diagnostic> verify_cocycle(const ComplexCocycle& a) {
  const int n = a.n();
  if (a.values.size() != static_cast<std::size_t>(n) * n)
    return Diagnostic{"size", "cocycle table does not match the group order", {}};
  const auto& g = a.group;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (a.at(x, y) == Complex(0.0, 0.0))
        return Diagnostic{"zero", "cocycle value is zero", {}}.with("pair", triple_text(x, y, -1));
      for (int t = 0; t < n; ++t) {
        const Complex lhs = a.at(x, y) * a.at(g.mul(x, y), t);
        const Complex rhs = a.at(x, g.mul(y, t)) * a.at(y, t);
        if (std::abs(lhs / rhs - 1.0) >= a.eps)
          return Diagnostic{"cocycle", "cocycle identity fails", {}}
              .with("triple", triple_text(x, y, t))
              .with("lhs", complex_text(lhs))
              .with("rhs", complex_text(rhs));
      }
    }
  return std::nullopt;
}

std::vector<KernelGenerator> cocycle_generators(const FiniteGroup& g, std::int64_t m, CohomologyLimits limits) {
  check_limit(g, limits);
  const auto& cx = cochain_complex(g);
  return kernel_mod(cx.d2_form, cx.n * cx.n, m);
}

CohomologyGroup cocycle_group_Zn(const FiniteGroup& g, std::int64_t m, CohomologyLimits limits) {
  if (m < 1) throw std::invalid_argument("coefficient modulus must be positive");
  check_limit(g, limits);
  const auto& cx = cochain_complex(g);
  const CocycleCoordinates z(cx, m);
  std::vector<std::vector<std::int64_t>> boundaries;
  for (int j = 0; j < cx.n; ++j) {
    auto b = column(cx.d1, j);
    for (auto& v : b) v = mod(v, m);
    boundaries.push_back(std::move(b));
  }
  return quotient_group(g, z, boundaries, "Z_" + std::to_string(m));
}

CohomologyGroup h2_over_C(const FiniteGroup& g, CohomologyLimits limits) {
  check_limit(g, limits);
  const auto& cx = cochain_complex(g);
  const std::int64_t n = g.order(), e = g.exponent();
  const CocycleCoordinates z(cx, n);
  // mu_N-valued cocycles k with e k = d1 c (mod N e) for some c: c runs over
  // the lattice {c | d1 c = 0 mod e}, spanned by e Z^n and lifts of the
  // homomorphisms G -> Z_e.
  std::vector<std::vector<std::int64_t>> subgroup;
  for (int j = 0; j < cx.n; ++j) {
    auto b = column(cx.d1, j);
    for (auto& v : b) v = mod(v, n);
    subgroup.push_back(std::move(b));
  }
  for (const auto& f : kernel_mod(cx.d1_form, cx.n, e)) {
    auto b = cx.d1 * f.vector;
    for (auto& v : b) {
      if (v % e != 0) throw std::logic_error("homomorphism lift is not a cocycle modulo e");
      v = mod(v / e, n);
    }
    subgroup.push_back(std::move(b));
  }
  return quotient_group(g, z, subgroup, "C^x");
}

std::vector<RootCocycle> enumerate_cocycles(const FiniteGroup& g, std::int64_t m, std::size_t max_count,
                                            CohomologyLimits limits) {
  const auto gens = cocycle_generators(g, m, limits);
  std::size_t total = 1;
  for (const auto& k : gens) {
    if (total > max_count / static_cast<std::size_t>(k.order) + 1) throw Refusal("too many cocycles to enumerate");
    total *= static_cast<std::size_t>(k.order);
  }
  if (total > max_count) throw Refusal("too many cocycles to enumerate");
  const std::size_t cells = static_cast<std::size_t>(g.order()) * g.order();
  std::vector<RootCocycle> out;
  out.reserve(total);
  std::vector<std::int64_t> digits(gens.size(), 0), current(cells, 0);
  for (;;) {
    out.emplace_back(g, m, current);
    std::size_t j = 0;
    for (; j < gens.size(); ++j) {
      for (std::size_t c = 0; c < cells; ++c) current[c] = mod(current[c] + gens[j].vector[c], m);
      if (++digits[j] < gens[j].order) break;
      digits[j] = 0;  // the generator has wrapped around, so current is restored
    }
    if (j == gens.size()) break;
  }
  return out;
}

RootCocycle random_cocycle(const FiniteGroup& g, std::int64_t m, std::mt19937_64& rng, CohomologyLimits limits) {
  const auto gens = cocycle_generators(g, m, limits);
  std::vector<std::int64_t> k(static_cast<std::size_t>(g.order()) * g.order(), 0);
  for (const auto& gen : gens) {
    const std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, gen.order - 1)(rng);
    for (std::size_t c = 0; c < k.size(); ++c) k[c] = mod(k[c] + t * gen.vector[c], m);
  }
  return RootCocycle(g, m, std::move(k));
}

std::optional<CoboundaryWitness> is_coboundary_over_C(const RootCocycle& a) {
  // If alpha = delta gamma with alpha in mu_m, gamma^m is a homomorphism into
  // mu_e, so gamma is mu_{m e}-valued and the system mod m e is complete.
  const auto& cx = cochain_complex(a.group);
  const std::int64_t e = a.group.exponent(), modulus = a.m * e;
  std::vector<std::int64_t> rhs(a.k);
  for (auto& v : rhs) v = mod(v * e, modulus);
  auto c = smallest_solution(cx, rhs, modulus);
  if (!c) return std::nullopt;
  return CoboundaryWitness{modulus, std::move(*c)};
}

std::optional<CoboundaryWitness> is_coboundary_mod(const RootCocycle& a) {
  const auto& cx = cochain_complex(a.group);
  auto c = smallest_solution(cx, a.k, a.m);
  if (!c) return std::nullopt;
  return CoboundaryWitness{a.m, std::move(*c)};
}

std::optional<std::vector<Complex>> is_coboundary(const ComplexCocycle& a) {
  const auto& cx = cochain_complex(a.group);
  const MultiplicativeSystem system(cx.d1);
  auto gamma = system.solve(a.values);
  const int n = a.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (std::abs(delta(gamma, a.group, x, y) / a.at(x, y) - 1.0) >= a.eps) return std::nullopt;
  return gamma;
}

bool cohomologous_over_C(const RootCocycle& a, const RootCocycle& b) {
  const std::int64_t l = std::lcm(a.m, b.m);
  const RootCocycle la = a.lifted(l), lb = b.lifted(l);
  std::vector<std::int64_t> diff(la.k.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = la.k[i] - lb.k[i];
  return is_coboundary_over_C(RootCocycle(a.group, l, std::move(diff))).has_value();
}

bool cohomologous(const ComplexCocycle& a, const ComplexCocycle& b) {
  ComplexCocycle q{a.group, {}, std::max(a.eps, b.eps)};
  for (std::size_t i = 0; i < a.values.size(); ++i) q.values.push_back(a.values[i] / b.values[i]);
  return is_coboundary(q).has_value();
}

NormalizedCocycle normalize_cocycle(const RootCocycle& a) {
  const auto& g = a.group;
  const int n = a.n();
  const int one = g.identity();
  // Dividing by the constant alpha(1,1) gives alpha(g,1) = alpha(1,g) = 1.
  std::vector<std::int64_t> k1(a.k);
  const std::int64_t k11 = a.at(one, one);
  for (auto& v : k1) v = mod(v - k11, a.m);
  auto at1 = [&](int x, int y) { return k1[static_cast<std::size_t>(x) * n + y]; };

  // Involutions need a square root; double the order when it is missing.
  std::int64_t m2 = a.m;
  for (int x = 0; x < n; ++x)
    if (x != one && g.inv(x) == x && a.m % 2 == 0 && at1(x, x) % 2 != 0) m2 = 2 * a.m;
  const std::int64_t scale = m2 / a.m;

  std::vector<std::int64_t> c(n, mod(-k11 * scale, m2));
  for (int x = 0; x < n; ++x) {
    if (x == one) continue;
    const int xi = g.inv(x);
    const std::int64_t kx = at1(x, xi) * scale;
    if (xi != x) {
      if (x < xi) c[xi] = mod(c[xi] - kx, m2);
    } else if (m2 % 2 == 0) {
      // 2 c = -kx (mod m2); kx is even here. Take the root in [0, m2 / 2).
      c[x] = mod(c[x] + mod(-kx / 2, m2 / 2), m2);
    } else {
      c[x] = mod(c[x] + mod(-kx, m2) * ((m2 + 1) / 2), m2);
    }
  }

  std::vector<std::int64_t> beta(a.k);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      beta[static_cast<std::size_t>(x) * n + y] = a.at(x, y) * scale + c[x] + c[y] - c[g.mul(x, y)];
  NormalizedCocycle out{RootCocycle(g, m2, std::move(beta)), CoboundaryWitness{m2, c}};
  for (int x = 0; x < n; ++x)
    if (out.beta.at(x, one) != 0 || out.beta.at(one, x) != 0 || out.beta.at(x, g.inv(x)) != 0 ||
        out.beta.at(g.inv(x), x) != 0)
      throw std::logic_error("normalization failed at element " + std::to_string(x));
  return out;
}

NormalizedComplexCocycle normalize_cocycle(const ComplexCocycle& a) {
  const auto& g = a.group;
  const int n = a.n();
  const int one = g.identity();
  const Complex a11 = a.at(one, one);
  std::vector<Complex> gamma(n, 1.0 / a11);
  for (int x = 0; x < n; ++x) {
    if (x == one) continue;
    const int xi = g.inv(x);
    const Complex v = a.at(x, xi) / a11;
    if (xi != x) {
      if (x < xi) gamma[xi] /= v;
    } else {
      gamma[x] /= std::sqrt(v);
    }
  }
  NormalizedComplexCocycle out{ComplexCocycle{g, a.values, a.eps}, gamma};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out.beta.values[static_cast<std::size_t>(x) * n + y] *= delta(gamma, g, x, y);
  return out;
}

UnimodularCocycle make_unimodular(const ComplexCocycle& a) {
  const int n = a.n();
  UnimodularCocycle out{ComplexCocycle{a.group, a.values, a.eps}, std::vector<double>(n)};
  for (int x = 0; x < n; ++x) {
    // gamma(g) = (prod_t |alpha(g,t)|)^{1/|G|}, taken through logarithms.
    double s = 0.0;
    for (int t = 0; t < n; ++t) {
      const double r = std::abs(a.at(x, t));
      if (r == 0.0)
        throw InvalidInput(Diagnostic{"zero", "cocycle value is zero", {}}.with("pair", triple_text(x, t, -1)));
      s += std::log(r);
    }
    out.gamma[x] = std::exp(s / n);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      out.beta.values[static_cast<std::size_t>(x) * n + y] *=
          out.gamma[a.group.mul(x, y)] / (out.gamma[x] * out.gamma[y]);
  return out;
}

WeightMatrix weight_from_cocycle(const RootCocycle& a, double eps) {
  const int n = a.n();
  std::vector<ExactEntry> e(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      e[static_cast<std::size_t>(x) * n + y] = {true, a.root(x, a.group.mul(a.group.inv(x), y))};
  return WeightMatrix::from_exact(n, std::move(e), eps);
}

WeightMatrix weight_from_cocycle(const ComplexCocycle& a) {
  const int n = a.n();
  std::vector<Complex> v(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) v[static_cast<std::size_t>(x) * n + y] = a.at(x, a.group.mul(a.group.inv(x), y));
  return WeightMatrix::from_values(n, std::move(v), a.eps);
}

Checked<WeightCocycle> cocycle_from_weight(const FiniteGroup& g, const WeightMatrix& w) {
  const auto thin = thin_scheme(g);
  auto verdict = verify_weight(thin.cc, w);
  if (!verdict) return verdict.diagnostic();
  const int n = g.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (w.is_zero(x, y))
        return Diagnostic{"zero-entry", "weight has zero entries; decompose it over its support subgroup first", {}}
            .with("cell", "(" + std::to_string(x) + "," + std::to_string(y) + ")");
  const int one = g.identity();
  WeightCocycle out;
  out.complex = ComplexCocycle{g, std::vector<Complex>(static_cast<std::size_t>(n) * n), w.eps()};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      const Complex ref = w(one, a) * w(a, ab) / w(one, ab);
      out.complex.values[static_cast<std::size_t>(a) * n + b] = ref;
      for (int x = 0; x < n; ++x) {
        const int xa = g.mul(x, a), xab = g.mul(xa, b);
        const Complex v = w(x, xa) * w(xa, xab) / w(x, xab);
        if (std::abs(v - ref) >= w.eps() * std::max(1.0, std::abs(ref)))
          return Diagnostic{"inconsistent", "cocycle depends on the base point, so W is not a weight", {}}
              .with("pair", triple_text(a, b, -1))
              .with("point", x)
              .with("value", complex_text(v))
              .with("at_identity", complex_text(ref));
      }
    }
  if (w.is_exact()) {
    std::int64_t l = 1;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) l = std::lcm(l, w.exact(x, y).root.m);
    std::vector<std::int64_t> k(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int ab = g.mul(a, b);
        k[static_cast<std::size_t>(a) * n + b] = w.exact(one, a).root.exponent_mod(l) +
                                                 w.exact(a, ab).root.exponent_mod(l) -
                                                 w.exact(one, ab).root.exponent_mod(l);
      }
    out.exact = RootCocycle(g, l, std::move(k));
  } else {
    out.exact = exactify(out.complex, 2 * static_cast<std::int64_t>(n) * g.exponent());
  }
  if (auto bad = verify_cocycle(out.complex)) return *bad;
  if (out.exact)
    if (auto bad = verify_cocycle(*out.exact)) return *bad;
  return out;
}

namespace {

WeightMatrix submatrix(const WeightMatrix& w, const std::vector<int>& points) {
  const int l = static_cast<int>(points.size());
  if (w.is_exact()) {
    std::vector<ExactEntry> e;
    for (int i : points)
      for (int j : points) e.push_back(w.exact(i, j));
    return WeightMatrix::from_exact(l, std::move(e), w.eps());
  }
  std::vector<Complex> v;
  for (int i : points)
    for (int j : points) v.push_back(w(i, j));
  return WeightMatrix::from_values(l, std::move(v), w.eps());
}

}  // namespace

Checked<SupportDecomposition> support_subgroup_and_blocks(const FiniteGroup& g, const WeightMatrix& w) {
  const auto thin = thin_scheme(g);
  auto verdict = verify_weight(thin.cc, w);
  if (!verdict) return verdict.diagnostic();
  const int n = g.order(), one = g.identity();
  SupportDecomposition out;
  out.subgroup.push_back(one);
  for (int h = 0; h < n; ++h)
    if (h != one && !w.is_zero(one, h)) out.subgroup.push_back(h);
  if (!g.is_subgroup(out.subgroup))
    return Diagnostic{"support", "support elements do not form a subgroup; W is inconsistent", {}}.with(
        "size", static_cast<int>(out.subgroup.size()));
  out.subgroup_group = g.restrict_to(out.subgroup);
  std::vector<char> used(n, 0);
  for (int x = 0; x < n; ++x) {
    if (used[x]) continue;
    std::vector<int> block;
    for (int h : out.subgroup) {
      block.push_back(g.mul(x, h));
      used[block.back()] = 1;
    }
    out.blocks.push_back(std::move(block));
  }
  for (const auto& block : out.blocks) {
    out.block_weights.push_back(submatrix(w, block));
    auto c = cocycle_from_weight(out.subgroup_group, out.block_weights.back());
    if (!c) {
      Diagnostic d = c.diagnostic();
      d.message = "block " + std::to_string(out.block_cocycles.size()) + ": " + d.message;
      return d;
    }
    out.block_cocycles.push_back(std::move(c).value());
  }
  out.blocks_cohomologous = true;
  const auto& first = out.block_cocycles.front();
  for (std::size_t b = 1; b < out.block_cocycles.size(); ++b) {
    const auto& other = out.block_cocycles[b];
    const bool same = first.exact && other.exact ? cohomologous_over_C(*first.exact, *other.exact)
                                                 : cohomologous(first.complex, other.complex);
    out.blocks_cohomologous = out.blocks_cohomologous && same;
  }
  return out;
}

Checked<HWeightResult> to_h_weight(const FiniteGroup& g, const WeightMatrix& w) {
  auto wc = cocycle_from_weight(g, w);
  if (!wc) return wc.diagnostic();
  const auto thin = thin_scheme(g);
  const int n = g.order(), one = g.identity();
  HWeightResult out;
  std::vector<Complex> gamma;
  if (wc->exact) {
    const auto norm = normalize_cocycle(*wc->exact);
    for (const auto& r : norm.gamma.gamma()) gamma.push_back(r.value());
    out.h_weight = weight_from_cocycle(norm.beta, w.eps());
    out.normalized = norm.beta;
  } else {
    const auto unimodular = make_unimodular(wc->complex);
    const auto norm = normalize_cocycle(unimodular.beta);
    for (int x = 0; x < n; ++x) gamma.push_back(norm.gamma[x] / unimodular.gamma[x]);
    out.h_weight = weight_from_cocycle(norm.beta);
    out.normalized = exactify(norm.beta, 2 * static_cast<std::int64_t>(n) * g.exponent());
  }
  // W_beta(x,y) = gamma(x^{-1} y) a_x^{-1} W_xy a_y with a_x = W_{1x}^{-1} gamma(x)^{-1}.
  out.witness.sigma.resize(n);
  std::iota(out.witness.sigma.begin(), out.witness.sigma.end(), 0);
  out.witness.a.resize(n);
  out.witness.gamma.assign(thin.cc.rank(), Complex(1.0, 0.0));
  for (int x = 0; x < n; ++x) {
    out.witness.a[x] = 1.0 / (w(one, x) * gamma[x]);
    out.witness.gamma[thin.class_of_element[x]] = gamma[x];
  }
  const double residual = witness_residual(thin.cc, w, out.h_weight, out.witness);
  if (residual >= w.eps())
    return Diagnostic{"witness", "equivalence to the normalized weight failed verification", {}}.with("residual",
                                                                                                      residual);
  auto hv = verify_h_weight(thin.cc, out.h_weight);
  if (!hv) return hv.diagnostic();
  return out;
}

WeightClassification classify_weights(const FiniteGroup& g, CohomologyLimits limits, EquivalenceOptions options) {
  WeightClassification out;
  out.h2 = h2_over_C(g, limits);
  const auto thin = thin_scheme(g);
  const std::int64_t n = g.order();
  const auto& f = out.h2.invariant_factors;
  std::vector<std::int64_t> digits(f.size(), 0);
  for (;;) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(n) * n, 0);
    for (std::size_t j = 0; j < f.size(); ++j)
      for (std::size_t c = 0; c < k.size(); ++c) k[c] += digits[j] * out.h2.representatives[j].k[c];
    out.combinations.push_back(digits);
    out.cocycles.emplace_back(g, n, std::move(k));
    out.weights.push_back(weight_from_cocycle(out.cocycles.back()));
    std::size_t j = 0;
    while (j < f.size() && ++digits[j] == f[j]) digits[j++] = 0;
    if (j == f.size()) break;
  }
  const std::size_t count = out.weights.size();
  out.equivalent.assign(count, std::vector<bool>(count, false));
  out.consistent = true;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      out.equivalent[i][j] = weight_equivalent(thin.cc, out.weights[i], out.weights[j], options).has_value();
      out.consistent = out.consistent && (out.equivalent[i][j] == (i == j));
    }
  return out;
}

}  // namespace wcc
