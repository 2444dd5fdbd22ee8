#include "rglie/exactla.hpp"

#include <algorithm>
#include <cctype>

namespace rglie {

Rational rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational &q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto strip_plus = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return std::string(t);
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
  mpz_class n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

void add_entry(Coeffs &y, std::size_t i, const Rational &v) {
  if (sgn(v) == 0) return;
  auto it = y.find(i);
  if (it == y.end()) {
    y.emplace(i, v);
    return;
  }
  it->second += v;
  if (sgn(it->second) == 0) y.erase(it);
}

void axpy(Coeffs &y, const Rational &a, const Coeffs &x) {
  if (sgn(a) == 0) return;
  for (const auto &[i, v] : x) add_entry(y, i, a * v);
}

Coeffs scaled(const Coeffs &x, const Rational &a) {
  Coeffs r;
  if (sgn(a) == 0) return r;
  for (const auto &[i, v] : x) r.emplace_hint(r.end(), i, a * v);
  return r;
}

Coeffs add(const Coeffs &x, const Coeffs &y) {
  Coeffs r = x;
  axpy(r, 1, y);
  return r;
}

Coeffs sub(const Coeffs &x, const Coeffs &y) {
  Coeffs r = x;
  axpy(r, -1, y);
  return r;
}

Rational get(const Coeffs &x, std::size_t i) {
  auto it = x.find(i);
  return it == x.end() ? Rational(0) : it->second;
}

// ---------------------------------------------------------------- spaces

BasedSpace::BasedSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], i).second) throw ShapeError("duplicate basis label '" + labels_[i] + "'");
}

std::size_t BasedSpace::index_of(const std::string &label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ShapeError("unknown basis label '" + label + "'");
  return it->second;
}

SpaceRef make_space(std::vector<std::string> labels) { return std::make_shared<const BasedSpace>(std::move(labels)); }

SpaceRef tensor_space(const SpaceRef &a, const SpaceRef &b) {
  std::vector<std::string> labels;
  labels.reserve(a->dim() * b->dim());
  for (const auto &x : a->labels())
    for (const auto &y : b->labels()) labels.push_back("(" + x + "|" + y + ")");
  return make_space(std::move(labels));
}

// ---------------------------------------------------------------- vectors

SparseVector::SparseVector(SpaceRef space, Coeffs entries) : space_(std::move(space)), entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->first >= space_->dim()) throw ShapeError("vector entry outside its space");
    it = sgn(it->second) == 0 ? entries_.erase(it) : std::next(it);
  }
}

SparseVector SparseVector::unit(const SpaceRef &space, const std::string &label) {
  return SparseVector(space, Coeffs{{space->index_of(label), Rational(1)}});
}

Rational SparseVector::operator[](const std::string &label) const { return get(entries_, space_->index_of(label)); }

void SparseVector::set(const std::string &label, const Rational &v) {
  auto i = space_->index_of(label);
  if (sgn(v) == 0)
    entries_.erase(i);
  else
    entries_[i] = v;
}

void SparseVector::check_same(const SparseVector &o) const {
  if (space_ != o.space_) throw ShapeError("vectors live in different spaces");
}

SparseVector SparseVector::operator+(const SparseVector &o) const {
  check_same(o);
  return SparseVector(space_, add(entries_, o.entries_));
}

SparseVector SparseVector::operator-(const SparseVector &o) const {
  check_same(o);
  return SparseVector(space_, sub(entries_, o.entries_));
}

SparseVector SparseVector::operator-() const { return SparseVector(space_, scaled(entries_, -1)); }

SparseVector SparseVector::operator*(const Rational &s) const { return SparseVector(space_, scaled(entries_, s)); }

bool SparseVector::operator==(const SparseVector &o) const { return space_ == o.space_ && entries_ == o.entries_; }

// ---------------------------------------------------------------- matrices

SparseMatrix::SparseMatrix(SpaceRef domain, SpaceRef codomain) : dom_(std::move(domain)), cod_(std::move(codomain)) {}

SparseMatrix SparseMatrix::identity(const SpaceRef &space) {
  SparseMatrix m(space);
  for (std::size_t i = 0; i < space->dim(); ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::unit(const SpaceRef &space, const std::string &j, const std::string &k) {
  SparseMatrix m(space);
  m.set(space->index_of(j), space->index_of(k), 1);
  return m;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = rows_.find(r);
  return it == rows_.end() ? Rational(0) : get(it->second, c);
}

Rational SparseMatrix::operator()(const std::string &r, const std::string &c) const {
  return at(cod_->index_of(r), dom_->index_of(c));
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational &v) {
  if (r >= cod_->dim() || c >= dom_->dim()) throw ShapeError("matrix entry out of range");
  if (sgn(v) == 0) {
    auto it = rows_.find(r);
    if (it == rows_.end()) return;
    it->second.erase(c);
    if (it->second.empty()) rows_.erase(it);
    return;
  }
  rows_[r][c] = v;
}

void SparseMatrix::add_to(std::size_t r, std::size_t c, const Rational &v) {
  if (r >= cod_->dim() || c >= dom_->dim()) throw ShapeError("matrix entry out of range");
  auto &row = rows_[r];
  add_entry(row, c, v);
  if (row.empty()) rows_.erase(r);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto &[r, row] : rows_) n += row.size();
  return n;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix &o) const {
  if (dom_ != o.dom_ || cod_ != o.cod_) throw ShapeError("matrix sum of different shapes");
  SparseMatrix m = *this;
  for (const auto &[r, row] : o.rows_) {
    auto &dst = m.rows_[r];
    axpy(dst, 1, row);
    if (dst.empty()) m.rows_.erase(r);
  }
  return m;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix &o) const { return *this + (-o); }

SparseMatrix SparseMatrix::operator-() const { return *this * Rational(-1); }

SparseMatrix SparseMatrix::operator*(const Rational &s) const {
  SparseMatrix m(dom_, cod_);
  if (sgn(s) == 0) return m;
  for (const auto &[r, row] : rows_) m.rows_.emplace(r, scaled(row, s));
  return m;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix &o) const {
  if (dom_ != o.cod_) throw ShapeError("matrix product of incompatible shapes");
  SparseMatrix m(o.dom_, cod_);
  for (const auto &[r, row] : rows_) {
    Coeffs acc;
    for (const auto &[k, a] : row) {
      auto it = o.rows_.find(k);
      if (it != o.rows_.end()) axpy(acc, a, it->second);
    }
    if (!acc.empty()) m.rows_.emplace(r, std::move(acc));
  }
  return m;
}

Coeffs SparseMatrix::apply(const Coeffs &v) const {
  Coeffs out;
  for (const auto &[r, row] : rows_) {
    Rational s = 0;
    for (const auto &[c, a] : row) {
      auto it = v.find(c);
      if (it != v.end()) s += a * it->second;
    }
    if (sgn(s) != 0) out.emplace_hint(out.end(), r, s);
  }
  return out;
}

SparseVector SparseMatrix::operator*(const SparseVector &v) const {
  if (v.space() != dom_) throw ShapeError("matrix applied to vector of another space");
  return SparseVector(cod_, apply(v.entries()));
}

bool SparseMatrix::operator==(const SparseMatrix &o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && rows_ == o.rows_;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix m(cod_, dom_);
  for (const auto &[r, row] : rows_)
    for (const auto &[c, a] : row) m.rows_[c][r] = a;
  return m;
}

Rational SparseMatrix::trace() const {
  if (dom_ != cod_) throw ShapeError("trace of a non-square matrix");
  Rational t = 0;
  for (const auto &[r, row] : rows_) t += get(row, r);
  return t;
}

Coeffs SparseMatrix::flatten() const {
  Coeffs flat;
  const std::size_t w = dom_->dim();
  for (const auto &[r, row] : rows_)
    for (const auto &[c, a] : row) flat.emplace_hint(flat.end(), r * w + c, a);
  return flat;
}

SparseMatrix SparseMatrix::unflatten(const SpaceRef &domain, const SpaceRef &codomain, const Coeffs &flat) {
  SparseMatrix m(domain, codomain);
  const std::size_t w = domain->dim();
  for (const auto &[i, a] : flat) m.set(i / w, i % w, a);
  return m;
}

SparseMatrix commutator(const SparseMatrix &x, const SparseMatrix &y) { return x * y - y * x; }

// ---------------------------------------------------------------- row reduction

bool RowReducer::insert(const Coeffs &v0) {
  Coeffs v = v0;
  Coeffs combo;
  if (track_) combo.emplace(inserted_, Rational(1));
  ++inserted_;
  for (auto it = v0.begin(); it != v0.end(); ++it) {
    if (it->first >= n_) throw ShapeError("vector outside the ambient space of the reduction");
  }
  std::vector<std::size_t> hits;
  for (const auto &[i, a] : v)
    if (rows_.count(i)) hits.push_back(i);
  for (auto p : hits) {
    Rational c = get(v, p);
    if (sgn(c) == 0) continue;
    const Row &row = rows_.at(p);
    axpy(v, -c, row.vec);
    if (track_) axpy(combo, -c, row.combo);
  }
  if (v.empty()) return false;
  const std::size_t p = v.begin()->first;
  const Rational inv = 1 / v.begin()->second;
  Row nr{scaled(v, inv), track_ ? scaled(combo, inv) : Coeffs{}};
  for (auto &[q, row] : rows_) {
    Rational c = get(row.vec, p);
    if (sgn(c) == 0) continue;
    axpy(row.vec, -c, nr.vec);
    if (track_) axpy(row.combo, -c, nr.combo);
  }
  rows_.emplace(p, std::move(nr));
  return true;
}

Coeffs RowReducer::reduce(const Coeffs &v0) const {
  Coeffs v = v0;
  std::vector<std::size_t> hits;
  for (const auto &[i, a] : v)
    if (rows_.count(i)) hits.push_back(i);
  for (auto p : hits) {
    Rational c = get(v, p);
    if (sgn(c) != 0) axpy(v, -c, rows_.at(p).vec);
  }
  return v;
}

std::vector<Coeffs> RowReducer::basis() const {
  std::vector<Coeffs> out;
  out.reserve(rows_.size());
  for (const auto &[p, row] : rows_) out.push_back(row.vec);
  return out;
}

std::vector<std::size_t> RowReducer::pivots() const {
  std::vector<std::size_t> out;
  for (const auto &[p, row] : rows_) out.push_back(p);
  return out;
}

Coeffs RowReducer::combination(const Coeffs &v) const {
  if (!track_) throw InternalError("combination requested from an untracked reducer");
  Coeffs out;
  for (const auto &[p, row] : rows_) {
    Rational c = get(v, p);
    if (sgn(c) != 0) axpy(out, c, row.combo);
  }
  return out;
}

// ---------------------------------------------------------------- subspaces

Subspace::Subspace(SpaceRef ambient) : ambient_(std::move(ambient)) {}

Subspace::Subspace(SpaceRef ambient, const std::vector<Coeffs> &spanning) : ambient_(std::move(ambient)) {
  RowReducer red(ambient_->dim());
  for (const auto &v : spanning) red.insert(v);
  basis_ = red.basis();
  pivots_ = red.pivots();
  for (std::size_t i = 0; i < pivots_.size(); ++i) pivot_row_.emplace(pivots_[i], i);
}

std::vector<SparseVector> Subspace::basis_vectors() const {
  std::vector<SparseVector> out;
  for (const auto &b : basis_) out.emplace_back(ambient_, b);
  return out;
}

Coeffs Subspace::reduce(const Coeffs &v0) const {
  Coeffs v = v0;
  std::vector<std::size_t> hits;
  for (const auto &[i, a] : v)
    if (pivot_row_.count(i)) hits.push_back(i);
  for (auto p : hits) {
    Rational c = get(v, p);
    if (sgn(c) != 0) axpy(v, -c, basis_[pivot_row_.at(p)]);
  }
  return v;
}

bool Subspace::contains(const Coeffs &v) const { return reduce(v).empty(); }

bool Subspace::contains(const SparseVector &v) const {
  if (v.space() != ambient_) throw ShapeError("membership test across spaces");
  return contains(v.entries());
}

Coeffs Subspace::coordinates(const Coeffs &v) const {
  Coeffs out;
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    Rational c = get(v, pivots_[r]);
    if (sgn(c) != 0) out.emplace(r, c);
  }
  return out;
}

bool Subspace::operator==(const Subspace &o) const {
  return ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_;
}

bool Subspace::is_subspace_of(const Subspace &o) const {
  if (ambient_ != o.ambient_) throw ShapeError("subspace comparison across spaces");
  return std::all_of(basis_.begin(), basis_.end(), [&](const Coeffs &b) { return o.contains(b); });
}

Subspace Subspace::sum(const Subspace &o) const {
  if (ambient_ != o.ambient_) throw ShapeError("subspace sum across spaces");
  std::vector<Coeffs> all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(ambient_, all);
}

Subspace rref(const std::vector<SparseVector> &vectors) {
  if (vectors.empty()) return Subspace(make_space({}));
  const SpaceRef &sp = vectors.front().space();
  std::vector<Coeffs> raw;
  for (const auto &v : vectors) {
    if (v.space() != sp) throw ShapeError("rref over vectors from different spaces");
    raw.push_back(v.entries());
  }
  return Subspace(sp, raw);
}

Subspace rref(const SpaceRef &ambient, const std::vector<Coeffs> &vectors) { return Subspace(ambient, vectors); }

std::vector<Coeffs> kernel_basis(const std::vector<Coeffs> &rows, std::size_t dim) {
  RowReducer red(dim);
  for (const auto &r : rows) red.insert(r);
  auto basis = red.basis();
  auto piv = red.pivots();
  std::vector<bool> is_pivot(dim, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Coeffs> out;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    Coeffs v{{f, Rational(1)}};
    for (std::size_t r = 0; r < basis.size(); ++r) {
      Rational c = get(basis[r], f);
      if (sgn(c) != 0) v.emplace(piv[r], -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

Subspace kernel(const SparseMatrix &map) {
  std::vector<Coeffs> rows;
  for (const auto &[r, row] : map.rows()) rows.push_back(row);
  return Subspace(map.domain(), kernel_basis(rows, map.domain()->dim()));
}

std::size_t rank(const SparseMatrix &map) {
  RowReducer red(map.domain()->dim());
  for (const auto &[r, row] : map.rows()) red.insert(row);
  return red.rank();
}

// ---------------------------------------------------------------- quotients

QuotientSpace::QuotientSpace(SpaceRef ambient, Subspace relations)
    : ambient_(std::move(ambient)), relations_(std::move(relations)) {
  if (relations_.ambient() != ambient_) throw ShapeError("relations live in another space");
  std::vector<bool> is_pivot(ambient_->dim(), false);
  for (auto p : relations_.pivots()) is_pivot[p] = true;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < ambient_->dim(); ++i) {
    if (is_pivot[i]) continue;
    coset_index_.emplace(i, coset_.size());
    coset_.push_back(i);
    labels.push_back(ambient_->label(i));
  }
  qspace_ = make_space(std::move(labels));
}

std::vector<std::string> QuotientSpace::coset_labels() const { return qspace_->labels(); }

Coeffs QuotientSpace::project(const Coeffs &v) const {
  Coeffs out;
  for (const auto &[i, a] : relations_.reduce(v)) out.emplace(coset_index_.at(i), a);
  return out;
}

SparseVector QuotientSpace::project(const SparseVector &v) const {
  if (v.space() != ambient_) throw ShapeError("projection of a vector from another space");
  return SparseVector(qspace_, project(v.entries()));
}

Coeffs QuotientSpace::lift(const Coeffs &coset_coords) const {
  Coeffs out;
  for (const auto &[k, a] : coset_coords) out.emplace(coset_.at(k), a);
  return out;
}

// ---------------------------------------------------------------- coordinates

Coordinatizer::Coordinatizer(std::size_t ambient_dim, const std::vector<Coeffs> &basis)
    : size_(basis.size()), red_(ambient_dim, true) {
  for (const auto &b : basis)
    if (!red_.insert(b)) throw DomainError("coordinatizer basis is linearly dependent");
}

Coeffs Coordinatizer::coords(const Coeffs &v) const {
  if (!red_.contains(v)) throw DomainError("vector outside the coordinatized span");
  return red_.combination(v);
}

}  // namespace rglie
