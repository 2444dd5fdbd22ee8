#pragma once
// Exact rational scalars and sparse linear algebra over labelled bases.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rglie {

using Rational = mpq_class;

/// Shape mismatch between spaces / vectors / matrices.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// Input outside the domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
/// A check that must hold by construction failed: an implementation bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

Rational rat(long num, long den = 1);
/// "p/q", or "p" when q = 1.
std::string to_string(const Rational &q);
/// Accepts "p", "-p", "p/q"; throws std::invalid_argument on garbage.
Rational parse_rational(std::string_view s);

/// Coefficient map position -> value.  Invariant: no stored zeros.
using Coeffs = std::map<std::size_t, Rational>;

void axpy(Coeffs &y, const Rational &a, const Coeffs &x);  // y += a x
Coeffs scaled(const Coeffs &x, const Rational &a);
Coeffs add(const Coeffs &x, const Coeffs &y);
Coeffs sub(const Coeffs &x, const Coeffs &y);
void add_entry(Coeffs &y, std::size_t i, const Rational &v);
Rational get(const Coeffs &x, std::size_t i);

/// Ordered list of distinct opaque labels.  The list order is the canonical
/// pivot order used by every row reduction over the space.
class BasedSpace {
public:
  explicit BasedSpace(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::string &label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string> &labels() const { return labels_; }
  bool has(const std::string &label) const { return index_.count(label) != 0; }
  std::size_t index_of(const std::string &label) const;

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpaceRef = std::shared_ptr<const BasedSpace>;

SpaceRef make_space(std::vector<std::string> labels);
/// Tensor product space with labels "(x|y)", ordered lexicographically by
/// (position in a, position in b).
SpaceRef tensor_space(const SpaceRef &a, const SpaceRef &b);

class SparseVector {
public:
  SparseVector() = default;
  explicit SparseVector(SpaceRef space) : space_(std::move(space)) {}
  SparseVector(SpaceRef space, Coeffs entries);

  static SparseVector unit(const SpaceRef &space, const std::string &label);

  const SpaceRef &space() const { return space_; }
  const Coeffs &entries() const { return entries_; }
  Rational operator[](const std::string &label) const;
  Rational at(std::size_t i) const { return get(entries_, i); }
  void set(const std::string &label, const Rational &v);
  bool is_zero() const { return entries_.empty(); }

  SparseVector operator+(const SparseVector &o) const;
  SparseVector operator-(const SparseVector &o) const;
  SparseVector operator-() const;
  SparseVector operator*(const Rational &s) const;
  bool operator==(const SparseVector &o) const;

private:
  void check_same(const SparseVector &o) const;
  SpaceRef space_;
  Coeffs entries_;
};

/// Linear map domain -> codomain, stored by rows (codomain position ->
/// coefficients over domain positions).
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(SpaceRef domain, SpaceRef codomain);
  /// Square matrix on one space.
  explicit SparseMatrix(SpaceRef space) : SparseMatrix(space, space) {}

  static SparseMatrix identity(const SpaceRef &space);
  /// e_{j,k}: v_k -> v_j.
  static SparseMatrix unit(const SpaceRef &space, const std::string &j, const std::string &k);

  const SpaceRef &domain() const { return dom_; }
  const SpaceRef &codomain() const { return cod_; }
  const std::map<std::size_t, Coeffs> &rows() const { return rows_; }

  Rational at(std::size_t r, std::size_t c) const;
  Rational operator()(const std::string &r, const std::string &c) const;
  void set(std::size_t r, std::size_t c, const Rational &v);
  void add_to(std::size_t r, std::size_t c, const Rational &v);
  bool is_zero() const { return rows_.empty(); }
  bool is_square() const { return dom_ == cod_; }
  std::size_t nnz() const;

  SparseMatrix operator+(const SparseMatrix &o) const;
  SparseMatrix operator-(const SparseMatrix &o) const;
  SparseMatrix operator-() const;
  SparseMatrix operator*(const SparseMatrix &o) const;  // composition this∘o
  SparseMatrix operator*(const Rational &s) const;
  SparseVector operator*(const SparseVector &v) const;
  Coeffs apply(const Coeffs &v) const;
  bool operator==(const SparseMatrix &o) const;

  SparseMatrix transpose() const;
  Rational trace() const;
  /// Row-major flattening: position r * dim(domain) + c.
  Coeffs flatten() const;
  static SparseMatrix unflatten(const SpaceRef &domain, const SpaceRef &codomain, const Coeffs &flat);

private:
  SpaceRef dom_, cod_;
  std::map<std::size_t, Coeffs> rows_;
};

SparseMatrix commutator(const SparseMatrix &x, const SparseMatrix &y);

/// Incrementally maintained reduced row-echelon basis.  Optionally tracks,
/// for each row, its expression in terms of the inserted vectors.
class RowReducer {
public:
  explicit RowReducer(std::size_t ambient_dim, bool track = false)
      : n_(ambient_dim), track_(track) {}

  /// Returns true iff v was independent of the current span.
  bool insert(const Coeffs &v);
  /// v minus its projection onto the span along non-pivot coordinates.
  Coeffs reduce(const Coeffs &v) const;
  bool contains(const Coeffs &v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient_dim() const { return n_; }
  /// Rows sorted by pivot.
  std::vector<Coeffs> basis() const;
  std::vector<std::size_t> pivots() const;
  /// Coefficients over the inserted vectors (by insertion index, counting
  /// dependent insertions too) expressing v; requires tracking and v in span.
  Coeffs combination(const Coeffs &v) const;

private:
  struct Row {
    Coeffs vec;
    Coeffs combo;
  };
  std::size_t n_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;  // pivot -> row
};

class Subspace {
public:
  Subspace() = default;
  explicit Subspace(SpaceRef ambient);
  Subspace(SpaceRef ambient, const std::vector<Coeffs> &spanning);

  const SpaceRef &ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Coeffs> &rref_basis() const { return basis_; }
  const std::vector<std::size_t> &pivots() const { return pivots_; }
  std::vector<SparseVector> basis_vectors() const;

  bool contains(const Coeffs &v) const;
  bool contains(const SparseVector &v) const;
  /// Residual after eliminating pivot coordinates.
  Coeffs reduce(const Coeffs &v) const;
  /// Coordinates of v (assumed in the span) over rref_basis().
  Coeffs coordinates(const Coeffs &v) const;
  bool operator==(const Subspace &o) const;
  bool is_subspace_of(const Subspace &o) const;
  Subspace sum(const Subspace &o) const;

private:
  SpaceRef ambient_;
  std::vector<Coeffs> basis_;
  std::vector<std::size_t> pivots_;
  std::map<std::size_t, std::size_t> pivot_row_;
};

Subspace rref(const std::vector<SparseVector> &vectors);
Subspace rref(const SpaceRef &ambient, const std::vector<Coeffs> &vectors);
/// Kernel of a linear map given as rows over a domain of dimension dim.
std::vector<Coeffs> kernel_basis(const std::vector<Coeffs> &rows, std::size_t dim);
Subspace kernel(const SparseMatrix &map);
std::size_t rank(const SparseMatrix &map);

class QuotientSpace {
public:
  QuotientSpace() = default;
  QuotientSpace(SpaceRef ambient, Subspace relations);

  const SpaceRef &ambient() const { return ambient_; }
  const Subspace &relations() const { return relations_; }
  /// Non-pivot ambient positions, in order.
  const std::vector<std::size_t> &coset_basis() const { return coset_; }
  std::vector<std::string> coset_labels() const;
  std::size_t dim() const { return coset_.size(); }

  /// Canonical representative in coset-basis coordinates.
  Coeffs project(const Coeffs &v) const;
  SparseVector project(const SparseVector &v) const;
  /// Ambient vector of the canonical representative.
  Coeffs lift(const Coeffs &coset_coords) const;
  const SpaceRef &quotient_space() const { return qspace_; }

private:
  SpaceRef ambient_;
  Subspace relations_;
  std::vector<std::size_t> coset_;
  std::map<std::size_t, std::size_t> coset_index_;
  SpaceRef qspace_;
};

/// Expresses elements of a span in terms of a fixed (independent) basis.
class Coordinatizer {
public:
  Coordinatizer() = default;
  Coordinatizer(std::size_t ambient_dim, const std::vector<Coeffs> &basis);
  std::size_t size() const { return size_; }
  bool contains(const Coeffs &v) const { return red_.contains(v); }
  /// Throws DomainError when v is outside the span.
  Coeffs coords(const Coeffs &v) const;

private:
  std::size_t size_ = 0;
  RowReducer red_{0, true};
};

}  // namespace rglie
