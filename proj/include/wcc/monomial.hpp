#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wcc/configuration.hpp"
#include "wcc/cyclotomic.hpp"
#include "wcc/group.hpp"
#include "wcc/weight.hpp"

namespace wcc {

using CMatrix = Eigen::MatrixXcd;

/// n x n 0/1 adjacency matrix of class c.
CMatrix adjacency_matrix(const Configuration& cfg, int c);

struct IdempotentOptions {
  std::uint64_t seed = 0;
  int max_block = 64;
  int max_attempts = 8;
  double eps = kDefaultEps;
};

/// Central primitive idempotents of the adjacency algebra of one block.
struct SemisimpleDecomposition {
  std::vector<CMatrix> idempotents;
  std::vector<int> ranks;
  std::vector<int> degrees;         // chi(1), from dim(e C) = chi(1)^2
  std::vector<int> multiplicities;  // rank / degree
};

/// Eigen-splits a seeded random hermitian element of the center, groups the
/// eigenvalues, and polishes each projector. Throws Refusal when the block is
/// too large or the grouping stays ambiguous after max_attempts seeds.
SemisimpleDecomposition subalgebra_idempotents(const Configuration& block, IdempotentOptions options = {});

/// phi(h_i) = exp(2 pi i k[i] / m) for the i-th element of H.
struct LinearCharacter {
  std::int64_t m = 1;
  std::vector<std::int64_t> k;
};

/// e = (1/|H|) sum_h phi(h)^{-1} A_h on one coset, points ordered like
/// the sorted element list of H.
struct CharacterIdempotent {
  std::vector<int> subgroup;              // sorted
  std::vector<std::vector<Cyclotomic>> exact;  // |H| x |H|
  CMatrix e;
};

/// Diagnostic "character" when phi is not a homomorphism or H is not a
/// subgroup; e^2 = e, e* = e and tr e = 1 are checked exactly.
Checked<CharacterIdempotent> linear_character_idempotent(const FiniteGroup& g, const std::vector<int>& subgroup,
                                                         const LinearCharacter& phi);

/// Copies of block 0's idempotent onto every block: e_0 is rewritten as a
/// combination of the D-classes and that combination is evaluated per block.
std::vector<CMatrix> spread_idempotent(const BlockPartition& bp, const CMatrix& e0, double eps = kDefaultEps);

struct AlignedIdempotent {
  CMatrix e;                             // l x l, rank 1, hermitian
  std::vector<std::vector<int>> blocks;  // points of each block in aligned order
  CMatrix e_phi;                         // n x n, original point order
  std::vector<Complex> coefficients;     // e_phi = sum_d coefficients[d] A_{D[d]}
};

/// Reorders points inside blocks 1..m-1 so each block's idempotent equals
/// block 0's, searching color-preserving bijections between the block
/// configurations. Diagnostic "alignment" when no reordering works, "rank"
/// when e is not a rank-one hermitian idempotent.
Checked<AlignedIdempotent> align_blocks(const CoherentConfiguration& cc, const BlockPartition& bp,
                                        const std::vector<CMatrix>& per_block, double eps = kDefaultEps);

/// Gamma(e_phi A e_phi): the m x m table of scalars a_ij with
/// e A_ij e = a_ij e, read off as trace(e A_ij). Diagnostic "compression" when
/// some block is not proportional to e.
Checked<CMatrix> gamma_compress(const AlignedIdempotent& ep, const CMatrix& a, double eps = kDefaultEps);

struct MonomialWeightResult {
  WeightMatrix w;  // on the factor configuration, points = blocks
  /// Per quotient class: the chosen member class, or nullopt if annihilated.
  std::vector<std::optional<int>> representatives;
  std::vector<CMatrix> scalar_tables;  // Gamma(e A_rep e) per quotient class
  /// Per class c: e A_c e = mu[c] e A_rep e for the representative of c^D.
  std::vector<Complex> mu;
  WeightVerdict verdict;
  double proportionality_residual = 0.0;
  double hermitian_residual = 0.0;
  double multiplicativity_residual = 0.0;
  int basis_rank = 0;
  int compressed_dimension = 0;  // rank of {e A_c e} over all classes
};

/// Assembles W = sum over quotient classes of Gamma(e A_rep e) and checks
/// it against verify_weight on the factor configuration. Diagnostics:
/// "proportionality", "hermitian", "basis", "multiplicativity" for failed
/// internal identities; the verify_weight diagnostic if W is not a weight.
Checked<MonomialWeightResult> monomial_weight(const CoherentConfiguration& cc, const FactorData& factor,
                                              const AlignedIdempotent& ep, double eps = kDefaultEps);

struct InducedHWeight {
  FactorData factor;
  MonomialWeightResult monomial;
  WeightMatrix h_weight;
  EquivalenceWitness witness;  // applied to monomial.w it gives h_weight
  bool class_scaling_sufficed = false;
};

/// thin(G), D = {c_h | h in H}, the character idempotent and monomial_weight,
/// then rescaled to an H-weight: per-class scalars first, point scalars
/// (fitted to the entry moduli) if those are not enough.
Checked<InducedHWeight> induced_h_weight(const FiniteGroup& g, const std::vector<int>& subgroup,
                                          const LinearCharacter& phi, double eps = kDefaultEps);

}  // namespace wcc
