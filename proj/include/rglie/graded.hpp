#pragma once
// The root-graded Lie algebra ℒ(𝔟,𝒦) = (𝒢⊗𝒜) ⊕ (𝒮⊗ℬ) ⊕ (𝒱⊗𝒞) ⊕ {𝔟,𝔟}_ℓ/𝒦
// on a finite truncation I = {1..n} with base subset I_0 = {1..|I_0|}, its
// bracket table, the grading checks, subsystem subalgebras and the level
// transition ⟨·,·⟩ ↦ ⟨·,·⟩_λ.

#include "rglie/check.hpp"
#include "rglie/coord.hpp"
#include "rglie/liealg.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace rglie {

enum class KMode { Zero, FullHomology, Explicit };

struct ModelConfig {
  Family family = Family::BC;
  int n = 0;
  /// The level ℓ; |I_0| = ℓ for B, C, BC and ℓ+1 for A, D.
  int ell = 0;
  CoordinateQuadruple quadruple;
  KMode k_mode = KMode::Zero;
  std::vector<Coeffs> K_span;  // Explicit: vectors over the {𝔟,𝔟}_ℓ coset basis
  bool override_bounds = false;
};

/// |I_0| for a family and level.
int base_size(Family family, int ell);
/// "" when the rank bound of the construction holds, otherwise a description.
std::string bound_violation(Family family, int ell);

enum class Block { G, S, V, D };
std::string block_name(Block b);

/// Components of a model vector: (𝒢-basis × 𝒜-basis), (𝒮-basis × ℬ-basis),
/// (𝒱-basis × 𝒞-basis) coefficients keyed by block-local position, and the
/// 𝒟 = {𝔟,𝔟}_ℓ/𝒦 coset coordinates.
struct GradedParts {
  Coeffs g_part, s_part, v_part, d_part;
};

class GradedModel {
public:
  explicit GradedModel(const ModelConfig &cfg);

  Family family() const { return family_; }
  int n() const { return n_; }
  int ell() const { return ell_; }
  const std::set<int> &base() const { return I0_; }
  bool sub_bound() const { return sub_bound_; }
  const CoordAlgebra &coord() const { return *B_; }
  const BBQuotient &bb() const { return *bb_; }
  /// 𝒟 = {𝔟,𝔟}_ℓ / 𝒦 over the coset coordinates of bb().
  const QuotientSpace &D() const { return D_; }
  const std::vector<Coeffs> &K_span() const { return K_; }
  const MatrixLieAlgebra &G() const { return G_; }
  /// 𝒮: the trace-free form-symmetric maps (C, BC) or 𝒱 itself (B); empty
  /// for A and D.
  const RepModule &S() const { return S_; }
  bool has_S() const { return nS_ > 0; }
  const RepModule &V() const { return Vmod_; }
  const FormedSpace &space_V() const { return G_.ambient; }
  const TruncationIdempotent &idem0() const { return J0_; }
  const RootSystem &roots() const { return R_; }

  const SpaceRef &space() const { return space_; }
  std::size_t dim() const { return space_->dim(); }
  std::size_t block_offset(Block b) const;
  std::size_t block_dim(Block b) const;
  Block block_of(std::size_t i) const;
  /// The weight of basis vector i predicted by the construction.
  const Root &basis_weight(std::size_t i) const { return weight_.at(i); }

  const std::vector<Coeffs> &table_row(std::size_t i) const { return table_.at(i); }
  const Coeffs &basis_bracket(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
  Coeffs bracket(const Coeffs &x, const Coeffs &y) const;

  GradedParts parts(const Coeffs &x) const;
  Coeffs join(const GradedParts &p) const;

  /// X ⊗ α for X ∈ 𝒢 ⊕ 𝒮 (a matrix on 𝒱) and α ∈ 𝔞 with the 𝒢-part paired
  /// with 𝒜 and the 𝒮-part with ℬ; InternalError if a component would
  /// land in 𝒢⊗ℬ or 𝒮⊗𝒜.  For B the 𝒮 = 𝒱 part is not a matrix; use
  /// v_tensor with block S.
  Coeffs matrix_tensor(const SparseMatrix &X, const Coeffs &alpha) const;
  /// u ⊗ γ with u over 𝒱; block V pairs with 𝒞, block S (type B) with ℬ.
  Coeffs vector_tensor(const Coeffs &u, const Coeffs &gamma, Block block = Block::V) const;
  /// x ⊗ 1.
  Coeffs unit_tensor(const SparseMatrix &x) const { return matrix_tensor(x, B_->unit()); }
  /// ⟨β, β'⟩.
  Coeffs pair(const Coeffs &b1, const Coeffs &b2) const;
  /// 𝒟 coordinates of a tensor over 𝔟⊗𝔟.
  Coeffs d_class(const Coeffs &tensor) const;
  Coeffs d_element(const Coeffs &d_coords) const;

  /// Cartan elements h⊗1 for the canonical generators on `indices`.
  std::vector<Coeffs> cartan_elements(const std::vector<int> &indices) const;

  std::string str(const Coeffs &x) const;

private:
  void compute_table();
  Coeffs compute_bracket(std::size_t i, std::size_t j) const;
  Coeffs gs_coords(const SparseMatrix &M) const;
  void add_gs_term(Coeffs &out, const Coeffs &gs, const Coeffs &alpha, const Rational &s) const;
  void add_v_term(Coeffs &out, const Coeffs &u, const Coeffs &gamma, const Rational &s, Block block) const;
  void add_d_term(Coeffs &out, const Coeffs &dcoords, const Rational &s) const;

  Family family_;
  int n_, ell_;
  std::set<int> I0_;
  bool sub_bound_ = false;
  bool ptype_ = false;  // A, C, BC: the ∘ / [·,·] tables; B, D: Jordan-derivation form
  Rational trJ0_;
  CoordAlgebraRef B_;
  std::shared_ptr<const BBQuotient> bb_;
  std::vector<Coeffs> K_;
  QuotientSpace D_;
  MatrixLieAlgebra G_;
  RepModule S_, Vmod_;
  TruncationIdempotent J0_;
  RootSystem R_;
  std::size_t nA_ = 0, nB_ = 0, nC_ = 0, nG_ = 0, nS_ = 0, nV_ = 0, nD_ = 0;
  std::size_t offG_ = 0, offS_ = 0, offV_ = 0, offD_ = 0;
  SpaceRef space_;
  std::vector<Root> weight_;
  Coordinatizer gs_coord_;              // flattened matrices over 𝒢-basis ++ 𝒮-basis (P-type)
  std::vector<SparseMatrix> gs_mats_;  // 𝒢 then 𝒮 (P-type), 𝒢 only (B, D)
  // caches
  std::vector<std::vector<Coeffs>> gs_br_, gs_circ_;  // over the 𝒢 ++ 𝒮 index
  std::vector<std::vector<Rational>> gs_tr_;
  std::vector<Coeffs> gs_brJ_, gs_circJ_;
  std::vector<Rational> gs_trJ_;
  std::vector<std::vector<Coeffs>> v_circ_, v_br_;  // 𝒞 pairs (BC) or D_{s,t} (B)
  std::vector<std::vector<Rational>> v_form_;
  std::vector<std::vector<Coeffs>> dpair_;  // ⟨e_i, e_j⟩ over 𝒟
  std::vector<Coeffs> dstar_;               // β* of each 𝒟 basis coset
  std::vector<SparseMatrix> dder_;          // total derivation of each 𝒟 basis coset
  std::vector<std::vector<Coeffs>> dtail_;  // Σ f(c,β₂ᶜ)β₁ᶜ + f(c,β₁ᶜ)β₂ᶜ per 𝒞 basis c
  std::vector<std::vector<Coeffs>> table_;
};

using ModelRef = std::shared_ptr<const GradedModel>;

/// Builds and validates a model: family/quadruple type match, 𝒦 ⊆ FH(𝔟) and
/// uniform, rank bounds (unless overridden).  DomainError otherwise.
ModelRef build_model(const ModelConfig &cfg);
ModelRef build_model(Family family, int n, int ell, const std::string &quadruple_source, KMode k = KMode::Zero,
                     bool override_bounds = false);

// ---------------------------------------------------------------- checks

struct JacobiStrategy {
  bool exhaustive = false;  // all basis triples i < j < k
  std::size_t samples = 0;  // random triples of sparse random elements
  std::uint64_t seed = 0;
};

/// [x,y] = −[y,x] on all basis pairs.
CheckResult verify_antisymmetry(const GradedModel &m);
CheckResult verify_jacobi(const GradedModel &m, const JacobiStrategy &strategy);

struct GradingReport {
  CheckResult grading_pair;  // (i)  x ↦ x⊗1 is a Lie embedding, roots of 𝒢⊗1 = R_sdiv
  CheckResult weights;       // (ii) basis vectors are ad ℋ-eigenvectors with weights in R
  CheckResult table;         // (ii) dim ℒ_α matches the construction's table
  CheckResult zero_part;     // (iii) ℒ_0 = Σ [ℒ_α, ℒ_−α]
  std::map<Root, std::size_t> weight_dims;
  bool passed() const { return grading_pair.passed && weights.passed && table.passed && zero_part.passed; }
  std::vector<CheckResult> checks() const { return {grading_pair, weights, table, zero_part}; }
};
GradingReport verify_grading(const GradedModel &m);

/// ℒ^S for an irreducible full subsystem S = R ∩ span{ε_j | j ∈ J}.
struct SubModel {
  ModelRef parent;
  std::set<int> indices;
  std::set<Root> roots;  // S, zero included
  Subspace span;         // ℒ^S inside the model
  std::vector<Coeffs> basis;
  MatrixLieAlgebra G_S;
  std::size_t dim() const { return span.dim(); }
};
SubModel subalgebra(const ModelRef &m, const std::set<Root> &S);
SubModel subalgebra(const ModelRef &m, const std::set<int> &indices);
/// Closure plus grading conditions (i)-(iii) for ℒ^S with grading pair
/// (𝒢^S ⊗ 1, ℋ^S ⊗ 1) and root system S.
std::vector<CheckResult> verify_subalgebra(const SubModel &sub);

/// ⟨β, β'⟩_λ = ((−2/tr 𝔍_0)𝔍_0 + (2/tr 𝔍_λ)𝔍_λ) ⊗ ½β*_{β,β'} + ⟨β, β'⟩, i.e.
/// ((−1/ℓ)𝔍_0 + (1/n_λ)𝔍_λ) ⊗ ½β* for B, C, BC and ((−1/(ℓ+1))𝔍_0 + (1/n_λ)𝔍_λ) ⊗ [a,a']
/// for A.
/// DomainError unless I_0 ⊆ λ ⊆ I.
Coeffs level_coset(const GradedModel &m, const std::set<int> &lambda, const Coeffs &b1, const Coeffs &b2);
/// Level coset of a tensor Σ β_i ⊗ β'_i.
Coeffs level_coset_of(const GradedModel &m, const std::set<int> &lambda, const Coeffs &tensor);

/// Checks, at level λ: the λ = I_0 correction vanishes; the biconditional
/// Σ⟨β_i,β'_i⟩ = 0 ⇔ (Σ⟨β_i,β'_i⟩_λ = 0 and Σβ*_i = 0) as an exact kernel
/// equality on 𝔟⊗𝔟 and on `samples` seeded families; that ℒ^λ is
/// bracket-closed; and, for λ = {1..k}, that the model built on base λ maps
/// homomorphically onto ℒ^λ via ⟨β,β'⟩ ↦ ⟨β,β'⟩_λ.
std::vector<CheckResult> verify_level_transition(const GradedModel &m, const std::set<int> &lambda,
                                                 std::size_t samples = 200, std::uint64_t seed = 42);

/// Truncation coherence: `small` (size n) and `large` (size n' > n) with the
/// same family, level, quadruple and 𝒦; every basis vector of `small` is a
/// basis vector of `large` and brackets agree on them.
CheckResult verify_truncation(const GradedModel &small, const GradedModel &large);

/// Number of worker threads: RG_LIE_THREADS if set and positive, else the
/// hardware concurrency.
unsigned worker_threads();

}  // namespace rglie
