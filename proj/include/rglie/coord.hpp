#pragma once
// Coordinate quadruples (𝔞, *, 𝒞, f), the coordinate algebra 𝔟 = 𝔞 ⊕ 𝒞,
// its derivations d^{ℓ,𝔟}, the Lie algebra {𝔟,𝔟}_ℓ = (𝔟⊗𝔟)/K, the full
// skew-dihedral homology FH(𝔟), β* and the uniform property.

#include "rglie/check.hpp"
#include "rglie/exactla.hpp"
#include "rglie/rootsys.hpp"

#include <memory>
#include <string>
#include <vector>

namespace rglie {

/// Raw quadruple data, indexed by basis positions of 𝔞 and 𝒞.  For type B
/// `mult` is the Clifford Jordan product.
struct CoordinateQuadruple {
  Family type = Family::A;
  std::string name;
  std::size_t a_dim = 0, c_dim = 0;
  std::vector<std::string> a_labels, c_labels;
  std::vector<std::vector<Coeffs>> mult;    // mult[i][j] = e_i e_j over 𝔞
  Coeffs unit;                              // over 𝔞
  std::vector<Coeffs> star;                 // star[i] = e_i* over 𝔞
  std::vector<std::vector<Coeffs>> action;  // action[i][k] = e_i · c_k over 𝒞
  std::vector<std::vector<Coeffs>> f;       // f[k][l] = f(c_k, c_l) over 𝔞

  /// Fills empty labels and zero-sized tables with defaults; checks sizes.
  void normalize();
};

struct LawCheck {
  std::string law;
  bool passed = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<LawCheck> laws;
  bool ok() const;
  /// "law: witness" of the first failure, or "".
  std::string first_failure() const;
};

/// Checks the axioms of the quadruple's type on all basis tuples.
ValidationReport validate_quadruple(const CoordinateQuadruple &q);

enum class Part { A, B, C };

/// 𝔟 in an adapted basis: an 𝒜-basis ("a:k"), a ℬ-basis ("b:k") — both
/// the reduced row-echelon bases of the ±-eigenspaces of * — then the
/// 𝒞-basis ("c:k").  All element arguments are coefficient maps over this
/// basis.  Construction validates the quadruple.
class CoordAlgebra {
public:
  explicit CoordAlgebra(CoordinateQuadruple q);

  const CoordinateQuadruple &quadruple() const { return q_; }
  Family type() const { return q_.type; }
  const SpaceRef &space() const { return space_; }

  std::size_t dim() const { return na_ + nb_ + nc_; }
  std::size_t dim_A() const { return na_; }
  std::size_t dim_B() const { return nb_; }
  std::size_t dim_C() const { return nc_; }
  std::size_t dim_frak_a() const { return na_ + nb_; }
  Part part(std::size_t i) const { return i < na_ ? Part::A : i < na_ + nb_ ? Part::B : Part::C; }
  std::vector<std::size_t> positions(Part p) const;
  /// Positions of 𝔞 = 𝒜 ⊕ ℬ.
  std::vector<std::size_t> frak_a_positions() const;

  const Coeffs &unit() const { return unit_; }
  /// Product of 𝔟 = 𝔞 ⊕ 𝒞.
  Coeffs mul(const Coeffs &x, const Coeffs &y) const;
  /// β∘β' = ββ' + β'β
  Coeffs circ(const Coeffs &x, const Coeffs &y) const;
  /// [β, β'] = ββ' − β'β
  Coeffs brk(const Coeffs &x, const Coeffs &y) const;
  /// Involution on the 𝔞-part (the 𝒞-part is dropped).
  Coeffs star(const Coeffs &x) const;
  Coeffs restrict_to(const Coeffs &x, Part p) const;
  Coeffs frak_a_part(const Coeffs &x) const;
  /// f on the 𝒞-parts.
  Coeffs f(const Coeffs &c, const Coeffs &c2) const;
  /// (f(c,c') − f(c',c))/2 ∈ 𝒜 and (f(c,c') + f(c',c))/2 ∈ ℬ; DomainError
  /// for types without 𝒞.
  Coeffs diamond(const Coeffs &c, const Coeffs &c2) const;
  Coeffs heart(const Coeffs &c, const Coeffs &c2) const;

  /// Conversion between raw 𝔞 ⊕ 𝒞 coordinates (quadruple positions, 𝒞
  /// shifted by a_dim) and adapted coordinates.
  Coeffs from_raw(const Coeffs &raw) const;
  Coeffs to_raw(const Coeffs &adapted) const;

  const std::vector<std::vector<Coeffs>> &table() const { return table_; }
  std::string str(const Coeffs &x) const;

private:
  CoordinateQuadruple q_;
  std::size_t na_ = 0, nb_ = 0, nc_ = 0;
  SpaceRef space_;
  std::vector<Coeffs> adapted_raw_;  // adapted basis vector -> raw coordinates
  Coordinatizer raw_coords_;
  std::vector<std::vector<Coeffs>> table_;
  Coeffs unit_;
};

using CoordAlgebraRef = std::shared_ptr<const CoordAlgebra>;
CoordAlgebraRef make_coord_algebra(CoordinateQuadruple q);

/// Element of 𝔟 split into its 𝒜-, ℬ- and 𝒞-components (each over the
/// corresponding adapted positions of 𝔟).
struct CoordElement {
  Coeffs a, b, c;
};
CoordElement split(const CoordAlgebra &B, const Coeffs &x);
Coeffs join(const CoordElement &e);

/// d^{ℓ,𝔟}_{β₁,β₂} as a matrix on B.space().
SparseMatrix derivation(const CoordAlgebra &B, int ell, const Coeffs &b1, const Coeffs &b2);

/// β*_{β₁,β₂} = [a₁,a₂] + [b₁,b₂] − c₁♥c₂.
Coeffs beta_star(const CoordAlgebra &B, const Coeffs &b1, const Coeffs &b2);

struct RelationGenerator {
  std::string family;  // which of the seven spanning families
  Coeffs tensor;       // over 𝔟⊗𝔟, position i·dim + j
};
std::vector<RelationGenerator> relation_generators(const CoordAlgebra &B);

/// {𝔟,𝔟}_ℓ.  Cosets are represented by coordinates over the quotient basis;
/// the k-th basis coset is {e_i, e_j} for (i, j) = coset_pair(k).
class BBQuotient {
public:
  /// Builds K, the quotient and the bracket table; verifies that the
  /// bracket of {𝔟,𝔟}_ℓ is well defined (InternalError with witness otherwise).
  BBQuotient(CoordAlgebraRef B, int ell);

  const CoordAlgebra &algebra() const { return *B_; }
  const CoordAlgebraRef &algebra_ref() const { return B_; }
  int ell() const { return ell_; }
  std::size_t dim() const { return quotient_.dim(); }
  const SpaceRef &tensor_space() const { return tensor_; }
  const QuotientSpace &quotient() const { return quotient_; }
  const Subspace &relations() const { return quotient_.relations(); }
  std::pair<std::size_t, std::size_t> coset_pair(std::size_t k) const;

  std::size_t tensor_index(std::size_t i, std::size_t j) const { return i * B_->dim() + j; }
  Coeffs tensor(const Coeffs &b1, const Coeffs &b2) const;
  /// {β₁, β₂} in quotient coordinates.
  Coeffs cls(const Coeffs &b1, const Coeffs &b2) const;
  Coeffs project(const Coeffs &tensor) const { return quotient_.project(tensor); }

  /// Σ d_{β_i,β'_i} for a tensor Σ β_i⊗β'_i.
  SparseMatrix total_derivation(const Coeffs &tensor) const;
  /// d_{e_i,e_j} on basis pairs (cached).
  const SparseMatrix &basis_derivation(std::size_t i, std::size_t j) const { return dtab_.at(i * B_->dim() + j); }
  /// Σ β* over a tensor.
  Coeffs beta_star_of(const Coeffs &tensor) const;

  /// The {𝔟,𝔟}_ℓ bracket on tensors, then on quotient coordinates.
  Coeffs tensor_bracket(const Coeffs &t, const Coeffs &t2) const;
  Coeffs bracket(const Coeffs &x, const Coeffs &y) const;
  const std::vector<std::vector<Coeffs>> &bracket_table() const { return table_; }

private:
  CoordAlgebraRef B_;
  int ell_;
  SpaceRef tensor_;
  QuotientSpace quotient_;
  std::vector<SparseMatrix> dtab_;
  std::vector<std::vector<Coeffs>> table_;
};

struct HomologySubspace {
  Subspace space;  // over quotient coordinates
  bool central = false;
  std::size_t dim() const { return space.dim(); }
};
/// Kernel of {β,β'} ↦ d_{β,β'}; InternalError if that map does not vanish on K.
HomologySubspace full_homology(const BBQuotient &bb);

struct UniformReport {
  int ell = 0, ell2 = 0;
  bool uniform = false;   // at ell
  bool in_fh2 = false;    // K_span ⊆ FH at ell2
  bool uniform2 = false;  // uniform at ell2
  std::string witness;    // first violating tensor, if any
  bool ell_independent() const { return uniform == uniform2 && (!uniform || in_fh2); }
};
/// Uniform property of span(K_span): β* must vanish on K + lifts of K_span.
/// DomainError if some K_span vector is outside FH(𝔟) at bb.ell().  The
/// verdict is recomputed at ell2 for the ℓ-independence cross-check.
UniformReport check_uniform(const BBQuotient &bb, const std::vector<Coeffs> &K_span, int ell2 = 7);

// ---------------------------------------------------------------- checks

/// d^{ℓ,𝔟}_{e_i,e_j} is a derivation of (𝔟,·) on all basis pairs.
CheckResult check_derivation_law(const BBQuotient &bb);
/// Antisymmetry and Jacobi of {𝔟,𝔟}_ℓ on all coset-basis pairs/triples.
CheckResult check_bb_lie(const BBQuotient &bb);
/// ◊ lands in 𝒜, ♥ in ℬ, for all 𝒞-basis pairs.
CheckResult check_diamond_heart(const CoordAlgebra &B);
/// β* vanishes on every relation generator (so {0} is uniform).
CheckResult check_beta_star_on_relations(const CoordAlgebra &B);

}  // namespace rglie
