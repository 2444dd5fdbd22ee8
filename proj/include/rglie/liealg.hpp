#pragma once
// Finite truncations of sl(I), o_B(I), o_D(I), sp(I), their natural module
// and the module S of trace-zero form-symmetric maps, Clifford Jordan
// algebras, truncation idempotents and the ∘ / bracket operators on V.

#include "rglie/exactla.hpp"
#include "rglie/rootsys.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rglie {

/// Raised when a truncation is too small to host the requested object.
struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The family of the matrix algebra realising a root-system family
/// (BC is realised by sp, i.e. type C).
Family matrix_family(Family f);

/// V with basis v_1..v_n, v_1̄..v_n̄ (labels "v:i", "vb:i") and, for B, v_0
/// ("v:0", last).  Type A uses only v_1..v_n and carries no form.
struct FormedSpace {
  Family family = Family::A;
  int n = 0;
  SpaceRef space;
  SparseMatrix gram;  // empty for A
  bool skew = false;

  std::size_t pos(int i) const { return space->index_of("v:" + std::to_string(i)); }
  std::size_t bar(int i) const { return space->index_of("vb:" + std::to_string(i)); }
  std::size_t zero() const { return space->index_of("v:0"); }
  bool has_form() const { return family != Family::A; }
  /// (u, w) = uᵀ G w.
  Rational form(const Coeffs &u, const Coeffs &w) const;
};

FormedSpace make_formed_space(Family family, int n);

struct MatrixLieAlgebra {
  Family family = Family::A;
  int n = 0;
  std::vector<int> indices;  // ordered truncation subset hosting the roots
  FormedSpace ambient;
  std::vector<SparseMatrix> basis;
  std::vector<std::string> basis_names;
  std::vector<SparseMatrix> cartan;
  std::vector<Root> basis_weight;
  std::map<Root, std::vector<std::size_t>> root_space_index;  // includes 0
  Coordinatizer coordinatizer;                                // over flattened matrices

  std::size_t dim() const { return basis.size(); }
  bool contains(const SparseMatrix &x) const { return coordinatizer.contains(x.flatten()); }
  /// Coordinates over `basis`; throws DomainError outside the algebra.
  Coeffs coordinates(const SparseMatrix &x) const { return coordinatizer.coords(x.flatten()); }
  SparseMatrix element(const Coeffs &coords) const;
};

/// e_{j,k} on a space given labels.
SparseMatrix matrix_unit(const std::string &j, const std::string &k, const SpaceRef &space);

MatrixLieAlgebra build_algebra(Family family, int n);

/// ε-coordinates of a weight from its eigenvalues on the canonical Cartan
/// generators (h_i = e_ii − e_īī, or e_{i_k i_k} − e_{i_{k+1} i_{k+1}} for A,
/// with the coefficient-sum-zero representative).  nullopt if non-integral.
std::optional<Root> eps_coordinates(Family family, const std::vector<int> &indices,
                                    const std::vector<Rational> &eigenvalues);

/// Canonical Cartan generators on the given index list.
std::vector<SparseMatrix> cartan_generators(const FormedSpace &V, Family family, const std::vector<int> &indices);

/// 𝒢_α computed from the eigen-equation [h, x] = α(h) x inside the algebra
/// (independently of the stored root-vector formulas); a subspace of the
/// flattened gl(V).
Subspace derived_root_space(const MatrixLieAlgebra &g, const Root &alpha);

enum class ModuleKind { Natural, Symmetric, Adjoint, Trivial };
std::string module_kind_name(ModuleKind k);

struct RepModule {
  ModuleKind kind = ModuleKind::Trivial;
  SpaceRef space;                  // module basis labels
  FormedSpace ambient;             // V of the acting algebra
  std::vector<SparseMatrix> mats;  // Symmetric / Adjoint: basis as matrices
  Coordinatizer coordinatizer;     // Symmetric / Adjoint: flattened coordinates
  std::vector<Root> basis_weight;
  std::map<Root, std::vector<std::size_t>> weight_index;

  std::size_t dim() const { return space->dim(); }
  /// x · v for v given in module-basis coordinates.
  Coeffs act(const SparseMatrix &x, const Coeffs &v) const;
  Coeffs coordinates(const SparseMatrix &m) const { return coordinatizer.coords(m.flatten()); }
  SparseMatrix element(const Coeffs &coords) const;
};

RepModule build_module(const MatrixLieAlgebra &g, ModuleKind kind);

struct WeightSpace {
  Root weight;
  Subspace space;  // in module-basis coordinates
};

struct DecompositionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Simultaneous eigenspace decomposition of a module given by the action
/// matrices of commuting operators (columns = images of basis vectors).
/// Eigenvalues are searched among the integers within a Gershgorin bound;
/// throws DecompositionFailure when the space is not exhausted.
std::vector<std::pair<std::vector<Rational>, std::vector<Coeffs>>>
simultaneous_eigenspaces(std::size_t dim, const std::vector<std::vector<Coeffs>> &operators);

std::vector<WeightSpace> weight_decompose(const RepModule &m, const std::vector<SparseMatrix> &cartan, Family family,
                                          const std::vector<int> &indices);
std::vector<WeightSpace> weight_decompose(const RepModule &m, const MatrixLieAlgebra &g);

MatrixLieAlgebra subalgebra_from_subsystem(const MatrixLieAlgebra &g, const std::set<Root> &S);

// -------------------------------------------------------- Clifford Jordan

/// 𝒥(g, 𝒲) = A ⊕ 𝒲 with basis: A-basis (labels "a:k") then 𝒲-basis
/// ("w:k").  Multiplication tables are indexed by basis positions.
struct CliffordJordan {
  std::size_t a_dim = 0, w_dim = 0;
  SpaceRef space;
  std::vector<std::vector<Coeffs>> table;  // table[i][j] = e_i e_j
  Coeffs unit;
  std::size_t dim() const { return a_dim + w_dim; }
};

/// a_mult[i][j]: product in A (over A positions); a_unit over A positions;
/// action[i][k]: a_i · w_k over 𝒲 positions; g[k][l] over A positions.
CliffordJordan make_clifford_jordan(const std::vector<std::vector<Coeffs>> &a_mult, const Coeffs &a_unit,
                                    const std::vector<std::vector<Coeffs>> &action,
                                    const std::vector<std::vector<Coeffs>> &g);
/// 𝒥((·,·), 𝒱) over 𝔽 for the o_B(n) form.
CliffordJordan clifford_of_form(const FormedSpace &V);

Coeffs jordan_product(const CliffordJordan &j, const Coeffs &x, const Coeffs &y);
SparseMatrix left_multiplication(const CliffordJordan &j, const Coeffs &x);
/// D_{a,b} = L_b L_a − L_a L_b.
SparseMatrix jordan_derivation(const CliffordJordan &j, const Coeffs &a, const Coeffs &b);

struct SpanReport {
  bool equal = false;
  std::size_t span_dim = 0;
  std::size_t algebra_dim = 0;
};
SpanReport derivation_span_equals_oB(int n);

// -------------------------------------------------------- truncations

struct TruncationIdempotent {
  std::set<int> subset;
  SparseMatrix matrix;
  std::size_t rank() const;
};

/// 𝔍_λ: v_i ↦ v_i for i ∈ I_λ ∪ Ī_λ, all other basis vectors ↦ 0.
TruncationIdempotent make_idempotent(const FormedSpace &V, const std::set<int> &subset);

/// x ∘ y = xy + yx − (2 tr(xy) / tr 𝔍) 𝔍.  For sp this is tr(xy)/ℓ with
/// ℓ = |subset|, for sl it is 2tr(xy)/|subset|; either way the result is
/// trace-free.  Only meaningful for families A, C and BC.
SparseMatrix circ_trunc(const SparseMatrix &x, const SparseMatrix &y, const TruncationIdempotent &idem, Family family);

enum class VOpVariant { BracketL, Circ, BracketN };

/// Operators on V built from u, v ∈ V (coordinates over V):
///   Circ:     w ↦ ½((v,w)u + (u,w)v)
///   BracketL: w ↦ ½((v,w)u + (w,u)v) + (1/2ℓ)(u,v)𝔍 w,   ℓ = |subset|
///   BracketN: as BracketL with 𝔍 replaced by the identity and ℓ by n.
SparseMatrix v_ops(const Coeffs &u, const Coeffs &v, const FormedSpace &V, const TruncationIdempotent &idem,
                   VOpVariant variant);

}  // namespace rglie
