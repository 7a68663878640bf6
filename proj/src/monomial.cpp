#include "wcc/monomial.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace wcc {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

int numeric_rank(const CMatrix& m, double rel = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, s(0))) ++r;
  return r;
}

/// Columns are the flattened matrices.
CMatrix stack(const std::vector<CMatrix>& mats) {
  if (mats.empty()) return CMatrix(0, 0);
  const auto len = mats.front().size();
  CMatrix out(len, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXcd>(mats[i].data(), len);
  return out;
}

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

struct Attempt {
  std::vector<CMatrix> projectors;
  bool ok = false;
};

Attempt split_center(const std::vector<CMatrix>& basis, const std::vector<CMatrix>& center, std::uint64_t seed,
                     double eps) {
  const auto l = basis.front().rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix z = CMatrix::Zero(l, l);
  for (const auto& c : center) z += Complex(u(rng), u(rng)) * c;
  const CMatrix h = (z + z.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& vals = es.eigenvalues();
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  const double gap = 1e-6 * scale;

  Attempt out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= vals.size(); ++i) {
    if (i < vals.size() && vals(i) - vals(i - 1) < gap) continue;
    const CMatrix v = es.eigenvectors().middleCols(start, i - start);
    CMatrix p = v * v.adjoint();
    for (int it = 0; it < 3; ++it) {
      const CMatrix p2 = p * p;
      p = 3.0 * p2 - 2.0 * p2 * p;
      p = (p + p.adjoint()) / 2.0;
    }
    out.projectors.push_back(p);
    start = i;
  }
  if (out.projectors.size() != center.size()) return out;

  const double tol = eps * static_cast<double>(l);
  CMatrix sum = CMatrix::Zero(l, l);
  for (const auto& p : out.projectors) {
    if (max_abs(p * p - p) > tol) return out;
    for (const auto& a : basis)
      if (max_abs(p * a - a * p) > tol) return out;
    std::vector<CMatrix> images;
    for (const auto& c : center) images.push_back(p * c);
    if (numeric_rank(stack(images)) != 1) return out;
    sum += p;
  }
  if (max_abs(sum - CMatrix::Identity(l, l)) > tol) return out;
  for (std::size_t i = 0; i < out.projectors.size(); ++i)
    for (std::size_t j = i + 1; j < out.projectors.size(); ++j)
      if (max_abs(out.projectors[i] * out.projectors[j]) > tol) return out;
  out.ok = true;
  return out;
}

CMatrix block_of(const CMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rows[i], cols[j]);
  return out;
}

/// Color-preserving bijection pi with e_i(pi a, pi b) = e_0(a, b).
bool find_alignment(const Configuration& s0, const CMatrix& e0, const Configuration& si, const CMatrix& ei, double tol,
                    std::vector<int>& pi) {
  const int l = s0.n;
  pi.assign(l, -1);
  std::vector<char> used(l, 0);
  std::size_t nodes = 0;
  auto fits = [&](int a, int img) {
    if (s0.at(a, a) != si.at(img, img) || std::abs(e0(a, a) - ei(img, img)) > tol) return false;
    for (int b = 0; b < a; ++b) {
      const int jb = pi[b];
      if (s0.at(a, b) != si.at(img, jb) || s0.at(b, a) != si.at(jb, img)) return false;
      if (std::abs(e0(a, b) - ei(img, jb)) > tol || std::abs(e0(b, a) - ei(jb, img)) > tol) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int a) -> bool {
    if (a == l) return true;
    if (++nodes > 2000000) throw Refusal("block alignment search exceeded its node bound");
    for (int img = 0; img < l; ++img) {
      if (used[img] || !fits(a, img)) continue;
      used[img] = 1;
      pi[a] = img;
      if (self(self, a + 1)) return true;
      used[img] = 0;
      pi[a] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

CMatrix from_coefficients(const Configuration& sub, const std::vector<Complex>& coef) {
  CMatrix e(sub.n, sub.n);
  for (int a = 0; a < sub.n; ++a)
    for (int b = 0; b < sub.n; ++b) e(a, b) = coef[sub.at(a, b)];
  return e;
}

}  // namespace

CMatrix adjacency_matrix(const Configuration& cfg, int c) {
  CMatrix a = CMatrix::Zero(cfg.n, cfg.n);
  for (int x = 0; x < cfg.n; ++x)
    for (int y = 0; y < cfg.n; ++y)
      if (cfg.at(x, y) == c) a(x, y) = 1.0;
  return a;
}

SemisimpleDecomposition subalgebra_idempotents(const Configuration& block, IdempotentOptions options) {
  const int l = block.n, k = block.r;
  if (l > options.max_block)
    throw Refusal("block of " + std::to_string(l) + " points exceeds the idempotent bound " +
                  std::to_string(options.max_block));
  std::vector<CMatrix> basis;
  for (int c = 0; c < k; ++c) basis.push_back(adjacency_matrix(block, c));

  // Center: coefficient vectors z with [sum z_i A_i, A_j] = 0 for all j.
  Eigen::MatrixXd eqs(static_cast<Eigen::Index>(k) * l * l, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Eigen::MatrixXd comm = (basis[i] * basis[j] - basis[j] * basis[i]).real();
      eqs.block(static_cast<Eigen::Index>(j) * l * l, i, static_cast<Eigen::Index>(l) * l, 1) =
          Eigen::Map<const Eigen::VectorXd>(comm.data(), static_cast<Eigen::Index>(l) * l);
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(eqs);
  const Eigen::MatrixXd kernel = lu.kernel();
  std::vector<CMatrix> center;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    CMatrix z = CMatrix::Zero(l, l);
    for (int i = 0; i < k; ++i) z += kernel(i, j) * basis[i];
    center.push_back(z);
  }

  Attempt found;
  for (int attempt = 0; attempt < options.max_attempts && !found.ok; ++attempt)
    found = split_center(basis, center, options.seed + static_cast<std::uint64_t>(attempt), options.eps);
  if (!found.ok)
    throw Refusal("central idempotents stayed ambiguous after " + std::to_string(options.max_attempts) +
                  " random central elements");

  // Deterministic order: by rank, then by the first row.
  auto key = [](const CMatrix& p) {
    std::vector<long long> v{std::llround(p.trace().real())};
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      v.push_back(std::llround(p(0, j).real() * 1e6));
      v.push_back(std::llround(p(0, j).imag() * 1e6));
    }
    return v;
  };
  std::sort(found.projectors.begin(), found.projectors.end(),
            [&](const CMatrix& a, const CMatrix& b) { return key(a) < key(b); });

  SemisimpleDecomposition out;
  for (const auto& p : found.projectors) {
    const int rank = static_cast<int>(std::lround(p.trace().real()));
    std::vector<CMatrix> images;
    for (const auto& a : basis) images.push_back(p * a);
    const int dim = numeric_rank(stack(images));
    const int degree = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    out.idempotents.push_back(p);
    out.ranks.push_back(rank);
    out.degrees.push_back(degree);
    out.multiplicities.push_back(degree > 0 ? rank / degree : 0);
  }
  return out;
}

Checked<CharacterIdempotent> linear_character_idempotent(const FiniteGroup& g, const std::vector<int>& subgroup,
                                                         const LinearCharacter& phi) {
  std::vector<int> h = subgroup;
  std::sort(h.begin(), h.end());
  if (!g.is_subgroup(h)) return Diagnostic{"character", "element list is not a subgroup", {}};
  if (phi.m < 1 || phi.k.size() != h.size())
    return Diagnostic{"character", "character needs one exponent per subgroup element", {}}
        .with("expected", h.size())
        .with("given", phi.k.size());
  const int l = static_cast<int>(h.size());
  std::vector<int> index(g.order(), -1);
  for (int i = 0; i < l; ++i) index[h[i]] = i;
  auto ex = [&](int i) { return ((phi.k[i] % phi.m) + phi.m) % phi.m; };
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if ((ex(i) + ex(j)) % phi.m != ex(index[g.mul(h[i], h[j])]))
        return Diagnostic{"character", "not a homomorphism", {}}.with("pair", pair_text(h[i], h[j]));

  const int m = static_cast<int>(phi.m);
  const Rational scale(1, l);
  CharacterIdempotent out;
  out.subgroup = h;
  out.exact.assign(l, std::vector<Cyclotomic>(l, Cyclotomic(m)));
  out.e = CMatrix(l, l);
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q) {
      const int t = index[g.mul(g.inv(h[p]), h[q])];
      out.exact[p][q] = scale * Cyclotomic::root(-ex(t), m);
      out.e(p, q) = out.exact[p][q].to_complex();
    }

  Cyclotomic trace(m);
  for (int p = 0; p < l; ++p) trace += out.exact[p][p];
  if (trace != Cyclotomic::rational(Rational(1), m))
    return Diagnostic{"character", "trace of the idempotent is not 1", {}}.with("trace", trace.to_string());
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q) {
      if (out.exact[p][q] != out.exact[q][p].conj())
        return Diagnostic{"character", "idempotent is not hermitian", {}}.with("cell", pair_text(p, q));
      Cyclotomic sq(m);
      for (int s = 0; s < l; ++s) sq += out.exact[p][s] * out.exact[s][q];
      if (sq != out.exact[p][q])
        return Diagnostic{"character", "e^2 differs from e", {}}.with("cell", pair_text(p, q));
    }
  return out;
}

std::vector<CMatrix> spread_idempotent(const BlockPartition& bp, const CMatrix& e0, double eps) {
  const auto& s0 = bp.sub.front();
  const int k = s0.r;
  std::vector<Complex> coef(k, Complex(0.0, 0.0));
  std::vector<int> count(k, 0);
  for (int a = 0; a < s0.n; ++a)
    for (int b = 0; b < s0.n; ++b) {
      coef[s0.at(a, b)] += e0(a, b);
      ++count[s0.at(a, b)];
    }
  for (int c = 0; c < k; ++c)
    if (count[c] > 0) coef[c] /= static_cast<double>(count[c]);
  for (int a = 0; a < s0.n; ++a)
    for (int b = 0; b < s0.n; ++b)
      if (std::abs(e0(a, b) - coef[s0.at(a, b)]) > eps)
        throw InvalidInput(Diagnostic{"span", "idempotent is not a combination of the block classes", {}}.with(
            "cell", pair_text(a, b)));
  std::vector<CMatrix> out;
  for (const auto& sub : bp.sub) out.push_back(from_coefficients(sub, coef));
  return out;
}

Checked<AlignedIdempotent> align_blocks(const CoherentConfiguration& cc, const BlockPartition& bp,
                                        const std::vector<CMatrix>& per_block, double eps) {
  const int m = static_cast<int>(bp.blocks.size());
  const int l = bp.block_size();
  if (static_cast<int>(per_block.size()) != m)
    throw InvalidInput(Diagnostic{"alignment", "one idempotent per block is required", {}}
                           .with("blocks", m)
                           .with("given", per_block.size()));
  const CMatrix& e = per_block.front();
  const double tol = eps * std::max(1, l);
  if (max_abs(e * e - e) > tol || max_abs(e - e.adjoint()) > tol || std::abs(e.trace() - 1.0) > tol)
    return Diagnostic{"rank", "block idempotent is not a rank-one hermitian idempotent", {}}
        .with("trace", std::to_string(e.trace().real()))
        .with("idempotence_residual", max_abs(e * e - e))
        .with("hermitian_residual", max_abs(e - e.adjoint()));

  AlignedIdempotent out;
  out.e = e;
  out.blocks.push_back(bp.blocks.front());
  for (int i = 1; i < m; ++i) {
    std::vector<int> pi;
    if (!find_alignment(bp.sub.front(), e, bp.sub[i], per_block[i], tol, pi))
      return Diagnostic{"alignment",
                        "no reordering of the block matches block 0; the idempotents are not copies of one "
                        "character of the block algebra",
                        {}}
          .with("block", i);
    std::vector<int> pts(l);
    for (int a = 0; a < l; ++a) pts[a] = bp.blocks[i][pi[a]];
    out.blocks.push_back(std::move(pts));
  }

  const int n = cc.n();
  out.e_phi = CMatrix::Zero(n, n);
  for (const auto& blk : out.blocks)
    for (int a = 0; a < l; ++a)
      for (int b = 0; b < l; ++b) out.e_phi(blk[a], blk[b]) = e(a, b);

  std::vector<int> local(cc.rank(), -1);
  for (std::size_t d = 0; d < bp.classes.size(); ++d) local[bp.classes[d]] = static_cast<int>(d);
  out.coefficients.assign(bp.classes.size(), Complex(0.0, 0.0));
  std::vector<char> seen(bp.classes.size(), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int d = local[cc.color(x, y)];
      if (d < 0) continue;
      if (!seen[d]) {
        out.coefficients[d] = out.e_phi(x, y);
        seen[d] = 1;
      } else if (std::abs(out.e_phi(x, y) - out.coefficients[d]) > tol) {
        return Diagnostic{"span", "aligned idempotent is not in the span of the D-classes", {}}
            .with("class", bp.classes[d])
            .with("cell", pair_text(x, y));
      }
    }
  return out;
}

Checked<CMatrix> gamma_compress(const AlignedIdempotent& ep, const CMatrix& a, double eps) {
  const int m = static_cast<int>(ep.blocks.size());
  const auto l = ep.e.rows();
  const double tol = eps * static_cast<double>(l) * std::max(1.0, max_abs(a));
  CMatrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const CMatrix aij = block_of(a, ep.blocks[i], ep.blocks[j]);
      const Complex s = (ep.e * aij).trace();
      const double res = max_abs(ep.e * aij * ep.e - s * ep.e);
      if (res > tol)
        return Diagnostic{"compression", "compressed block is not a multiple of e", {}}
            .with("blocks", pair_text(i, j))
            .with("residual", res);
      out(i, j) = s;
    }
  return out;
}

Checked<MonomialWeightResult> monomial_weight(const CoherentConfiguration& cc, const FactorData& factor,
                                              const AlignedIdempotent& ep, double eps) {
  const int r = cc.rank();
  const int m = static_cast<int>(ep.blocks.size());
  const int l = static_cast<int>(ep.e.rows());
  const int q = factor.quotient.rank();
  const CMatrix& e = ep.e_phi;
  const double zero = 100.0 * DBL_EPSILON * l;

  std::vector<CMatrix> adj, comp;
  for (int c = 0; c < r; ++c) {
    adj.push_back(adjacency_matrix(cc.base(), c));
    comp.push_back(e * adj.back() * e);
  }
  auto is_zero = [&](int c) { return max_abs(comp[c]) < zero; };

  MonomialWeightResult out;
  out.representatives.assign(q, std::nullopt);
  out.scalar_tables.assign(q, CMatrix::Zero(m, m));
  out.mu.assign(r, Complex(0.0, 0.0));
  for (int lam = 0; lam < q; ++lam) {
    for (int c : factor.members[lam])
      if (!is_zero(c)) {
        out.representatives[lam] = c;
        break;
      }
    if (!out.representatives[lam]) continue;
    const int rep = *out.representatives[lam];
    auto table = gamma_compress(ep, adj[rep], eps);
    if (!table) return table.diagnostic();
    out.scalar_tables[lam] = *table;
    const Complex norm = comp[rep].squaredNorm();
    for (int c : factor.members[lam]) {
      const Complex mu = (comp[rep].adjoint() * comp[c]).trace() / norm;
      out.mu[c] = mu;
      out.proportionality_residual = std::max(out.proportionality_residual, max_abs(comp[c] - mu * comp[rep]));
    }
  }
  if (out.proportionality_residual > eps)
    return Diagnostic{"proportionality", "a class of c^D is not a multiple of the representative", {}}.with(
        "residual", out.proportionality_residual);

  for (int c = 0; c < r; ++c)
    out.hermitian_residual = std::max(out.hermitian_residual, max_abs(comp[cc.converse(c)] - comp[c].adjoint()));
  if (out.hermitian_residual > eps)
    return Diagnostic{"hermitian", "e A_c* e differs from (e A_c e)*", {}}.with("residual", out.hermitian_residual);

  std::vector<CMatrix> reps, all;
  for (int lam = 0; lam < q; ++lam)
    if (out.representatives[lam]) reps.push_back(comp[*out.representatives[lam]]);
  for (int c = 0; c < r; ++c) all.push_back(comp[c]);
  out.basis_rank = numeric_rank(stack(reps));
  out.compressed_dimension = numeric_rank(stack(all));
  if (out.basis_rank != static_cast<int>(reps.size()) || out.basis_rank != out.compressed_dimension)
    return Diagnostic{"basis", "representatives do not form a basis of the compressed algebra", {}}
        .with("rank", out.basis_rank)
        .with("representatives", reps.size())
        .with("span", out.compressed_dimension);

  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (!out.representatives[a] || !out.representatives[b]) continue;
      auto prod = gamma_compress(ep, adj[*out.representatives[a]] * e * adj[*out.representatives[b]], eps);
      if (!prod) return prod.diagnostic();
      out.multiplicativity_residual =
          std::max(out.multiplicativity_residual, max_abs(out.scalar_tables[a] * out.scalar_tables[b] - *prod));
    }
  if (out.multiplicativity_residual > eps * std::max(1, l))
    return Diagnostic{"multiplicativity", "Gamma is not multiplicative on the compressed algebra", {}}.with(
        "residual", out.multiplicativity_residual);

  std::vector<Complex> values(static_cast<std::size_t>(m) * m, Complex(0.0, 0.0));
  for (const auto& t : out.scalar_tables)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) values[static_cast<std::size_t>(i) * m + j] += t(i, j);
  out.w = WeightMatrix::from_values(m, std::move(values), eps);
  auto verdict = verify_weight(factor.quotient, out.w);
  if (!verdict) return verdict.diagnostic();
  out.verdict = std::move(verdict).value();
  return out;
}

namespace {

/// Per-class unit scalars that make W hermitian with unit diagonal, read off
/// the first cell of each class. Classes without support keep 1.
std::vector<Complex> phase_fix(const CoherentConfiguration& q, const WeightMatrix& w) {
  const int m = q.n();
  std::vector<Complex> s(q.rank(), Complex(1.0, 0.0));
  std::vector<std::pair<int, int>> first(q.rank(), {-1, -1});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (first[q.color(i, j)].first < 0) first[q.color(i, j)] = {i, j};
  for (int c = 0; c < q.rank(); ++c) {
    const auto [i, j] = first[c];
    if (w.is_zero(i, j)) continue;
    const int cs = q.converse(c);
    if (q.is_diagonal(c)) {
      s[c] = 1.0 / w(i, i);
    } else if (cs == c) {
      const Complex u2 = std::conj(w(i, j)) / w(j, i);
      s[c] = std::sqrt(u2 / std::abs(u2)) / std::abs(w(i, j));
    } else if (c < cs) {
      s[c] = 1.0 / std::abs(w(i, j));
      s[cs] = std::conj(s[c] * w(i, j)) / w(j, i);
    }
  }
  return s;
}

}  // namespace

Checked<InducedHWeight> induced_h_weight(const FiniteGroup& g, const std::vector<int>& subgroup,
                                          const LinearCharacter& phi, double eps) {
  auto ci = linear_character_idempotent(g, subgroup, phi);
  if (!ci) return ci.diagnostic();
  const auto thin = thin_scheme(g);
  std::vector<int> d;
  for (int h : ci->subgroup) d.push_back(thin.class_of_element[h]);
  auto closed = closed_subset_check(thin.cc, d);
  if (!closed) return closed.diagnostic();

  InducedHWeight out;
  out.factor = factor_configuration(thin.cc, *closed);
  const auto& bp = out.factor.partition;
  const int l = static_cast<int>(ci->subgroup.size());
  std::vector<int> index(g.order(), -1);
  for (int i = 0; i < l; ++i) index[ci->subgroup[i]] = i;
  std::vector<Complex> coef;
  for (int c : bp.classes) coef.push_back(std::conj(Root(phi.k[index[thin.element_of_class[c]]], phi.m).value()) /
                                          static_cast<double>(l));
  std::vector<CMatrix> per_block;
  for (const auto& sub : bp.sub) per_block.push_back(from_coefficients(sub, coef));
  auto aligned = align_blocks(thin.cc, bp, per_block, eps);
  if (!aligned) return aligned.diagnostic();
  auto mono = monomial_weight(thin.cc, out.factor, *aligned, eps);
  if (!mono) return mono.diagnostic();
  out.monomial = std::move(mono).value();

  const auto& q = out.factor.quotient;
  const int m = q.n();
  const WeightMatrix& w = out.monomial.w;
  EquivalenceWitness wit;
  wit.sigma.resize(m);
  std::iota(wit.sigma.begin(), wit.sigma.end(), 0);
  wit.a.assign(m, Complex(1.0, 0.0));
  wit.gamma = phase_fix(q, w);
  WeightMatrix h = apply_witness(q, w, wit);
  out.class_scaling_sufficed = verify_h_weight(q, h).ok();

  if (!out.class_scaling_sufficed) {
    // Fit log|gamma_c| + log a_y - log a_x = -log|W_xy| over the support, a_0 = 1.
    std::vector<std::pair<int, int>> cells;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        if (!w.is_zero(x, y)) cells.push_back({x, y});
    const int unknowns = (m - 1) + q.rank();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cells.size()), unknowns);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(cells.size()));
    for (std::size_t t = 0; t < cells.size(); ++t) {
      const auto [x, y] = cells[t];
      const auto row = static_cast<Eigen::Index>(t);
      if (y > 0) a(row, y - 1) += 1.0;
      if (x > 0) a(row, x - 1) -= 1.0;
      a(row, m - 1 + q.color(x, y)) += 1.0;
      rhs(row) = -std::log(std::abs(w(x, y)));
    }
    const Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
    EquivalenceWitness mod;
    mod.sigma = wit.sigma;
    mod.a.assign(m, Complex(1.0, 0.0));
    for (int x = 1; x < m; ++x) mod.a[x] = std::exp(sol(x - 1));
    mod.gamma.assign(q.rank(), Complex(1.0, 0.0));
    for (int c = 0; c < q.rank(); ++c) mod.gamma[c] = std::exp(sol(m - 1 + c));
    const WeightMatrix scaled = apply_witness(q, w, mod);
    const auto phase = phase_fix(q, scaled);
    wit = mod;
    for (int c = 0; c < q.rank(); ++c) wit.gamma[c] *= phase[c];
    h = apply_witness(q, w, wit);
    if (auto hv = verify_h_weight(q, h); !hv) {
      Diagnostic diag = hv.diagnostic();
      diag.message = "no unit-modulus rescaling found: " + diag.message;
      diag.code = "rescale";
      return diag;
    }
  }
  out.h_weight = h;
  out.witness = wit;
  return out;
}

}  // namespace wcc
