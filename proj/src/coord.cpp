#include "rglie/coord.hpp"

#include <sstream>

namespace rglie {

namespace {

Coeffs unit_vec(std::size_t i) { return Coeffs{{i, Rational(1)}}; }

/// Raw 𝔞-product of two raw 𝔞 vectors.
Coeffs raw_mul_a(const CoordinateQuadruple &q, const Coeffs &x, const Coeffs &y) {
  Coeffs out;
  for (const auto &[i, u] : x)
    for (const auto &[j, v] : y) axpy(out, u * v, q.mult[i][j]);
  return out;
}

Coeffs raw_star(const CoordinateQuadruple &q, const Coeffs &x) {
  Coeffs out;
  for (const auto &[i, u] : x) axpy(out, u, q.star[i]);
  return out;
}

Coeffs raw_act(const CoordinateQuadruple &q, const Coeffs &a, const Coeffs &c) {
  Coeffs out;
  for (const auto &[i, u] : a)
    for (const auto &[k, v] : c) axpy(out, u * v, q.action[i][k]);
  return out;
}

Coeffs raw_f(const CoordinateQuadruple &q, const Coeffs &c, const Coeffs &c2) {
  Coeffs out;
  for (const auto &[k, u] : c)
    for (const auto &[l, v] : c2) axpy(out, u * v, q.f[k][l]);
  return out;
}

/// RREF bases of the +1 and −1 eigenspaces of * on 𝔞 (raw coordinates).
std::pair<std::vector<Coeffs>, std::vector<Coeffs>> star_eigenbases(const CoordinateQuadruple &q) {
  RowReducer plus(q.a_dim), minus(q.a_dim);
  for (std::size_t i = 0; i < q.a_dim; ++i) {
    plus.insert(add(unit_vec(i), q.star[i]));
    minus.insert(sub(unit_vec(i), q.star[i]));
  }
  return {plus.basis(), minus.basis()};
}

std::string coeffs_str(const Coeffs &x, const std::vector<std::string> &labels) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[i, v] : x) {
    if (!first) os << " + ";
    os << to_string(v) << "*" << (i < labels.size() ? labels[i] : std::to_string(i));
    first = false;
  }
  return os.str();
}

}  // namespace

void CoordinateQuadruple::normalize() {
  if (a_labels.empty())
    for (std::size_t i = 0; i < a_dim; ++i) a_labels.push_back("e" + std::to_string(i));
  if (c_labels.empty())
    for (std::size_t k = 0; k < c_dim; ++k) c_labels.push_back("c" + std::to_string(k));
  if (star.empty())
    for (std::size_t i = 0; i < a_dim; ++i) star.push_back(unit_vec(i));
  if (action.empty()) action.assign(a_dim, std::vector<Coeffs>(c_dim));
  if (f.empty()) f.assign(c_dim, std::vector<Coeffs>(c_dim));
  auto square = [](const auto &t, std::size_t r, std::size_t c) {
    if (t.size() != r) return false;
    for (const auto &row : t)
      if (row.size() != c) return false;
    return true;
  };
  if (a_dim == 0) throw DomainError("quadruple: 𝔞 must be nonzero (it is unital)");
  if (a_labels.size() != a_dim || c_labels.size() != c_dim || star.size() != a_dim || !square(mult, a_dim, a_dim) ||
      !square(action, a_dim, c_dim) || !square(f, c_dim, c_dim))
    throw DomainError("quadruple: table sizes do not match a_dim = " + std::to_string(a_dim) +
                      ", c_dim = " + std::to_string(c_dim));
  auto in_range = [](const Coeffs &x, std::size_t n) { return x.empty() || x.rbegin()->first < n; };
  for (std::size_t i = 0; i < a_dim; ++i) {
    if (!in_range(star[i], a_dim)) throw DomainError("quadruple: star entry out of range");
    for (std::size_t j = 0; j < a_dim; ++j)
      if (!in_range(mult[i][j], a_dim)) throw DomainError("quadruple: structure constant out of range");
    for (std::size_t k = 0; k < c_dim; ++k)
      if (!in_range(action[i][k], c_dim)) throw DomainError("quadruple: action entry out of range");
  }
  for (std::size_t k = 0; k < c_dim; ++k)
    for (std::size_t l = 0; l < c_dim; ++l)
      if (!in_range(f[k][l], a_dim)) throw DomainError("quadruple: f entry out of range");
  if (!in_range(unit, a_dim)) throw DomainError("quadruple: unit out of range");
}

bool ValidationReport::ok() const {
  for (const auto &l : laws)
    if (!l.passed) return false;
  return true;
}

std::string ValidationReport::first_failure() const {
  for (const auto &l : laws)
    if (!l.passed) return l.law + ": " + l.witness;
  return "";
}

ValidationReport validate_quadruple(const CoordinateQuadruple &q0) {
  CoordinateQuadruple q = q0;
  ValidationReport rep;
  try {
    q.normalize();
  } catch (const DomainError &e) {
    rep.laws.push_back({"shape", false, e.what()});
    return rep;
  }
  const auto &L = q.a_labels;
  const auto &CL = q.c_labels;
  const std::size_t n = q.a_dim, m = q.c_dim;
  auto law = [&](const std::string &name, auto &&body) {
    LawCheck c{name, true, ""};
    body(c);
    rep.laws.push_back(std::move(c));
  };
  auto fail = [](LawCheck &c, const std::string &w) {
    if (c.passed) c.witness = w;
    c.passed = false;
  };
  const Family t = q.type;
  law("no 𝒞 outside type BC", [&](LawCheck &c) {
    if (t != Family::BC && m != 0) fail(c, "c_dim = " + std::to_string(m));
  });
  law("unit", [&](LawCheck &c) {
    if (q.unit.empty()) fail(c, "unit is zero");
    for (std::size_t i = 0; i < n && c.passed; ++i) {
      if (raw_mul_a(q, q.unit, unit_vec(i)) != unit_vec(i)) fail(c, "1*" + L[i]);
      if (raw_mul_a(q, unit_vec(i), q.unit) != unit_vec(i)) fail(c, L[i] + "*1");
    }
  });
  law("involution: star^2 = id", [&](LawCheck &c) {
    for (std::size_t i = 0; i < n && c.passed; ++i)
      if (raw_star(q, q.star[i]) != unit_vec(i)) fail(c, L[i]);
  });
  // type A fixes * = id, which is an antiautomorphism only for commutative 𝔞
  if (t != Family::A)
  law("involution: (xy)* = y*x*", [&](LawCheck &c) {
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = 0; j < n && c.passed; ++j)
        if (raw_star(q, q.mult[i][j]) != raw_mul_a(q, q.star[j], q.star[i])) fail(c, L[i] + ", " + L[j]);
  });
  if (t == Family::A || t == Family::D)
    law("star = id", [&](LawCheck &c) {
      for (std::size_t i = 0; i < n && c.passed; ++i)
        if (q.star[i] != unit_vec(i)) fail(c, L[i]);
    });
  if (t == Family::B || t == Family::D)
    law("commutative", [&](LawCheck &c) {
      for (std::size_t i = 0; i < n && c.passed; ++i)
        for (std::size_t j = i + 1; j < n && c.passed; ++j)
          if (q.mult[i][j] != q.mult[j][i]) fail(c, L[i] + ", " + L[j]);
    });
  if (t != Family::B) {
    law("associative", [&](LawCheck &c) {
      for (std::size_t i = 0; i < n && c.passed; ++i)
        for (std::size_t j = 0; j < n && c.passed; ++j)
          for (std::size_t k = 0; k < n && c.passed; ++k)
            if (raw_mul_a(q, q.mult[i][j], unit_vec(k)) != raw_mul_a(q, unit_vec(i), q.mult[j][k]))
              fail(c, "(" + L[i] + ", " + L[j] + ", " + L[k] + ")");
    });
  } else {
    // 𝔞 = 𝒜 ⊕ ℬ must be the Clifford Jordan algebra of an 𝒜-valued form on ℬ
    auto [Ab, Bb] = star_eigenbases(q);
    Subspace As(make_space(q.a_labels), Ab), Bs(make_space(q.a_labels), Bb);
    law("Clifford grading: AA ⊆ A, AB ⊆ B, BB ⊆ A", [&](LawCheck &c) {
      for (const auto &x : Ab)
        for (const auto &y : Ab)
          if (!As.contains(raw_mul_a(q, x, y))) fail(c, "A*A");
      for (const auto &x : Ab)
        for (const auto &y : Bb)
          if (!Bs.contains(raw_mul_a(q, x, y))) fail(c, "A*B");
      for (const auto &x : Bb)
        for (const auto &y : Bb)
          if (!As.contains(raw_mul_a(q, x, y))) fail(c, "B*B");
    });
    law("A associative, B an A-module, form A-bilinear", [&](LawCheck &c) {
      for (const auto &a : Ab)
        for (const auto &a2 : Ab) {
          for (std::size_t k = 0; k < n; ++k)
            if (raw_mul_a(q, raw_mul_a(q, a, a2), unit_vec(k)) != raw_mul_a(q, a, raw_mul_a(q, a2, unit_vec(k))))
              fail(c, "(a a') x = a (a' x) at " + L[k]);
        }
      for (const auto &a : Ab)
        for (const auto &b : Bb)
          for (const auto &b2 : Bb)
            if (raw_mul_a(q, raw_mul_a(q, a, b), b2) != raw_mul_a(q, a, raw_mul_a(q, b, b2)))
              fail(c, "g(a b, b') = a g(b, b')");
    });
  }
  if (t == Family::BC) {
    law("C unital module", [&](LawCheck &c) {
      for (std::size_t k = 0; k < m && c.passed; ++k)
        if (raw_act(q, q.unit, unit_vec(k)) != unit_vec(k)) fail(c, "1." + CL[k]);
    });
    law("C associative module", [&](LawCheck &c) {
      for (std::size_t i = 0; i < n && c.passed; ++i)
        for (std::size_t j = 0; j < n && c.passed; ++j)
          for (std::size_t k = 0; k < m && c.passed; ++k)
            if (raw_act(q, q.mult[i][j], unit_vec(k)) != raw_act(q, unit_vec(i), q.action[j][k]))
              fail(c, "(" + L[i] + " " + L[j] + ")." + CL[k]);
    });
    law("f skew-hermitian: f(c,c')* = -f(c',c)", [&](LawCheck &c) {
      for (std::size_t k = 0; k < m && c.passed; ++k)
        for (std::size_t l = 0; l < m && c.passed; ++l)
          if (raw_star(q, q.f[k][l]) != scaled(q.f[l][k], -1)) fail(c, CL[k] + ", " + CL[l]);
    });
    law("f linear: f(x.c, c') = x f(c, c')", [&](LawCheck &c) {
      for (std::size_t i = 0; i < n && c.passed; ++i)
        for (std::size_t k = 0; k < m && c.passed; ++k)
          for (std::size_t l = 0; l < m && c.passed; ++l)
            if (raw_f(q, q.action[i][k], unit_vec(l)) != raw_mul_a(q, unit_vec(i), q.f[k][l]))
              fail(c, L[i] + ", " + CL[k] + ", " + CL[l]);
    });
  }
  return rep;
}

// ---------------------------------------------------------------- 𝔟

CoordAlgebra::CoordAlgebra(CoordinateQuadruple q) : q_(std::move(q)) {
  q_.normalize();
  auto rep = validate_quadruple(q_);
  if (!rep.ok()) throw DomainError("invalid " + family_name(q_.type) + " quadruple: " + rep.first_failure());
  auto [Ab, Bb] = star_eigenbases(q_);
  na_ = Ab.size();
  nb_ = Bb.size();
  nc_ = q_.c_dim;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < na_; ++k) labels.push_back("a:" + std::to_string(k));
  for (std::size_t k = 0; k < nb_; ++k) labels.push_back("b:" + std::to_string(k));
  for (std::size_t k = 0; k < nc_; ++k) labels.push_back("c:" + std::to_string(k));
  space_ = make_space(labels);
  adapted_raw_ = Ab;
  adapted_raw_.insert(adapted_raw_.end(), Bb.begin(), Bb.end());
  for (std::size_t k = 0; k < nc_; ++k) adapted_raw_.push_back(unit_vec(q_.a_dim + k));
  raw_coords_ = Coordinatizer(q_.a_dim + nc_, adapted_raw_);
  if (raw_coords_.size() != q_.a_dim + nc_) throw InternalError("adapted basis does not span 𝔟");
  // product of 𝔟 on raw vectors
  auto raw_mul = [&](const Coeffs &x, const Coeffs &y) {
    Coeffs xa, xc, ya, yc;
    for (const auto &[i, v] : x) (i < q_.a_dim ? xa[i] : xc[i - q_.a_dim]) = v;
    for (const auto &[i, v] : y) (i < q_.a_dim ? ya[i] : yc[i - q_.a_dim]) = v;
    Coeffs out = raw_mul_a(q_, xa, ya);
    axpy(out, 1, raw_f(q_, xc, yc));
    Coeffs cpart = raw_act(q_, xa, yc);
    axpy(cpart, 1, raw_act(q_, raw_star(q_, ya), xc));
    for (const auto &[k, v] : cpart) out[q_.a_dim + k] = v;
    return out;
  };
  const std::size_t N = dim();
  table_.assign(N, std::vector<Coeffs>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) table_[i][j] = from_raw(raw_mul(adapted_raw_[i], adapted_raw_[j]));
  unit_ = from_raw(q_.unit);
}

std::vector<std::size_t> CoordAlgebra::positions(Part p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (part(i) == p) out.push_back(i);
  return out;
}

std::vector<std::size_t> CoordAlgebra::frak_a_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < na_ + nb_; ++i) out.push_back(i);
  return out;
}

Coeffs CoordAlgebra::mul(const Coeffs &x, const Coeffs &y) const {
  Coeffs out;
  for (const auto &[i, u] : x)
    for (const auto &[j, v] : y) axpy(out, u * v, table_[i][j]);
  return out;
}

Coeffs CoordAlgebra::circ(const Coeffs &x, const Coeffs &y) const { return add(mul(x, y), mul(y, x)); }
Coeffs CoordAlgebra::brk(const Coeffs &x, const Coeffs &y) const { return sub(mul(x, y), mul(y, x)); }

Coeffs CoordAlgebra::star(const Coeffs &x) const {
  Coeffs out;
  for (const auto &[i, v] : x) {
    if (part(i) == Part::A) out.emplace(i, v);
    if (part(i) == Part::B) out.emplace(i, -v);
  }
  return out;
}

Coeffs CoordAlgebra::restrict_to(const Coeffs &x, Part p) const {
  Coeffs out;
  for (const auto &[i, v] : x)
    if (part(i) == p) out.emplace(i, v);
  return out;
}

Coeffs CoordAlgebra::frak_a_part(const Coeffs &x) const {
  Coeffs out;
  for (const auto &[i, v] : x)
    if (part(i) != Part::C) out.emplace(i, v);
  return out;
}

Coeffs CoordAlgebra::f(const Coeffs &c, const Coeffs &c2) const {
  return mul(restrict_to(c, Part::C), restrict_to(c2, Part::C));
}

Coeffs CoordAlgebra::diamond(const Coeffs &c, const Coeffs &c2) const {
  if (nc_ == 0) throw DomainError("◊ needs a quadruple with nonzero 𝒞");
  return scaled(sub(f(c, c2), f(c2, c)), Rational(1, 2));
}

Coeffs CoordAlgebra::heart(const Coeffs &c, const Coeffs &c2) const {
  if (nc_ == 0) throw DomainError("♥ needs a quadruple with nonzero 𝒞");
  return scaled(add(f(c, c2), f(c2, c)), Rational(1, 2));
}

Coeffs CoordAlgebra::from_raw(const Coeffs &raw) const { return raw_coords_.coords(raw); }

Coeffs CoordAlgebra::to_raw(const Coeffs &adapted) const {
  Coeffs out;
  for (const auto &[i, v] : adapted) axpy(out, v, adapted_raw_.at(i));
  return out;
}

std::string CoordAlgebra::str(const Coeffs &x) const { return coeffs_str(x, space_->labels()); }

CoordAlgebraRef make_coord_algebra(CoordinateQuadruple q) { return std::make_shared<const CoordAlgebra>(std::move(q)); }

CoordElement split(const CoordAlgebra &B, const Coeffs &x) {
  return {B.restrict_to(x, Part::A), B.restrict_to(x, Part::B), B.restrict_to(x, Part::C)};
}

Coeffs join(const CoordElement &e) { return add(add(e.a, e.b), e.c); }

// ---------------------------------------------------------------- derivations

SparseMatrix derivation(const CoordAlgebra &B, int ell, const Coeffs &b1, const Coeffs &b2) {
  if (ell < 1) throw DomainError("level must be positive");
  const std::size_t N = B.dim();
  SparseMatrix M(B.space());
  auto put = [&](std::size_t k, const Coeffs &col) {
    for (const auto &[r, v] : col) M.add_to(r, k, v);
  };
  const Coeffs al = B.frak_a_part(b1), al2 = B.frak_a_part(b2);
  switch (B.type()) {
  case Family::D: return M;
  case Family::A: {
    Coeffs z = scaled(B.brk(al, al2), Rational(1, ell + 1));
    for (std::size_t k = 0; k < N; ++k) put(k, B.brk(z, unit_vec(k)));
    return M;
  }
  case Family::B:
    for (std::size_t k = 0; k < N; ++k) {
      Coeffs e = unit_vec(k);
      put(k, sub(B.mul(al2, B.mul(al, e)), B.mul(al, B.mul(al2, e))));
    }
    return M;
  case Family::C:
  case Family::BC: {
    Coeffs z = scaled(add(B.brk(al, al2), B.brk(B.star(al), B.star(al2))), Rational(1, 4 * ell));
    Coeffs c = B.restrict_to(b1, Part::C), c2 = B.restrict_to(b2, Part::C);
    Coeffs h;
    if (B.dim_C() > 0) h = scaled(B.heart(c, c2), Rational(-1, 2 * ell));
    for (std::size_t k = 0; k < N; ++k) {
      Coeffs e = unit_vec(k);
      if (B.part(k) != Part::C) {
        put(k, B.brk(z, e));
        if (!h.empty()) put(k, B.brk(h, e));
      } else {
        put(k, B.mul(z, e));
        if (!h.empty()) put(k, B.mul(h, e));
        Coeffs tail = B.mul(B.f(e, c2), c);
        axpy(tail, 1, B.mul(B.f(e, c), c2));
        put(k, scaled(tail, Rational(-1, 2)));
      }
    }
    return M;
  }
  }
  return M;
}

Coeffs beta_star(const CoordAlgebra &B, const Coeffs &b1, const Coeffs &b2) {
  Coeffs out = B.brk(B.restrict_to(b1, Part::A), B.restrict_to(b2, Part::A));
  axpy(out, 1, B.brk(B.restrict_to(b1, Part::B), B.restrict_to(b2, Part::B)));
  if (B.dim_C() > 0) axpy(out, -1, B.heart(b1, b2));
  return out;
}

std::vector<RelationGenerator> relation_generators(const CoordAlgebra &B) {
  const std::size_t N = B.dim();
  std::vector<RelationGenerator> out;
  auto tensor = [&](const Coeffs &x, const Coeffs &y) {
    Coeffs t;
    for (const auto &[i, u] : x)
      for (const auto &[j, v] : y) add_entry(t, i * N + j, u * v);
    return t;
  };
  const auto fa = B.frak_a_positions();
  const auto As = B.positions(Part::A), Bs = B.positions(Part::B), Cs = B.positions(Part::C);
  for (auto a : fa)
    for (auto c : Cs) {
      out.push_back({"alpha⊗c", tensor(unit_vec(a), unit_vec(c))});
      out.push_back({"c⊗alpha", tensor(unit_vec(c), unit_vec(a))});
    }
  for (auto a : As)
    for (auto b : Bs) out.push_back({"a⊗b", tensor(unit_vec(a), unit_vec(b))});
  for (auto a : fa)
    for (auto a2 : fa)
      if (a <= a2) out.push_back({"symmetric", add(tensor(unit_vec(a), unit_vec(a2)), tensor(unit_vec(a2), unit_vec(a)))});
  for (auto c : Cs)
    for (auto c2 : Cs)
      if (c < c2) out.push_back({"c⊗c'-c'⊗c", sub(tensor(unit_vec(c), unit_vec(c2)), tensor(unit_vec(c2), unit_vec(c)))});
  for (auto x : fa)
    for (auto y : fa)
      for (auto z : fa) {
        Coeffs ex = unit_vec(x), ey = unit_vec(y), ez = unit_vec(z);
        Coeffs t = tensor(B.mul(ex, ey), ez);
        axpy(t, 1, tensor(B.mul(ez, ex), ey));
        axpy(t, 1, tensor(B.mul(ey, ez), ex));
        out.push_back({"cyclic", t});
      }
  for (auto c : Cs)
    for (auto c2 : Cs)
      for (auto a : fa) {
        Coeffs ea = unit_vec(a), ec = unit_vec(c), ec2 = unit_vec(c2);
        Coeffs t = tensor(B.f(ec, ec2), ea);
        axpy(t, 1, tensor(B.mul(B.star(ea), ec2), ec));
        axpy(t, -1, tensor(B.mul(ea, ec), ec2));
        out.push_back({"f-relation", t});
      }
  return out;
}

// ---------------------------------------------------------------- {𝔟,𝔟}_ℓ

BBQuotient::BBQuotient(CoordAlgebraRef B, int ell) : B_(std::move(B)), ell_(ell) {
  if (ell < 1) throw DomainError("level must be positive");
  const std::size_t N = B_->dim();
  tensor_ = rglie::tensor_space(B_->space(), B_->space());
  std::vector<Coeffs> gens;
  for (auto &g : relation_generators(*B_)) gens.push_back(std::move(g.tensor));
  quotient_ = QuotientSpace(tensor_, Subspace(tensor_, gens));
  dtab_.reserve(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) dtab_.push_back(derivation(*B_, ell, unit_vec(i), unit_vec(j)));
  // well-definedness: [K, 𝔟⊗𝔟] ⊆ K and [𝔟⊗𝔟, K] ⊆ K
  const auto &K = quotient_.relations();
  for (const auto &r : K.rref_basis())
    for (std::size_t p = 0; p < N * N; ++p) {
      const Coeffs e = unit_vec(p);
      if (!K.contains(tensor_bracket(r, e)) || !K.contains(tensor_bracket(e, r)))
        throw InternalError("bracket on {b,b} is not well defined: relation " + std::to_string(K.pivots().size()) +
                            " against " + tensor_->label(p));
    }
  const std::size_t Q = quotient_.dim();
  table_.assign(Q, std::vector<Coeffs>(Q));
  for (std::size_t p = 0; p < Q; ++p)
    for (std::size_t q = 0; q < Q; ++q)
      table_[p][q] = project(tensor_bracket(unit_vec(quotient_.coset_basis()[p]), unit_vec(quotient_.coset_basis()[q])));
}

std::pair<std::size_t, std::size_t> BBQuotient::coset_pair(std::size_t k) const {
  const std::size_t t = quotient_.coset_basis().at(k), N = B_->dim();
  return {t / N, t % N};
}

Coeffs BBQuotient::tensor(const Coeffs &b1, const Coeffs &b2) const {
  Coeffs t;
  for (const auto &[i, u] : b1)
    for (const auto &[j, v] : b2) add_entry(t, tensor_index(i, j), u * v);
  return t;
}

Coeffs BBQuotient::cls(const Coeffs &b1, const Coeffs &b2) const { return project(tensor(b1, b2)); }

SparseMatrix BBQuotient::total_derivation(const Coeffs &t) const {
  SparseMatrix D(B_->space());
  for (const auto &[p, v] : t) D = D + dtab_.at(p) * v;
  return D;
}

Coeffs BBQuotient::beta_star_of(const Coeffs &t) const {
  const std::size_t N = B_->dim();
  Coeffs out;
  for (const auto &[p, v] : t) axpy(out, v, beta_star(*B_, unit_vec(p / N), unit_vec(p % N)));
  return out;
}

Coeffs BBQuotient::tensor_bracket(const Coeffs &t, const Coeffs &t2) const {
  const std::size_t N = B_->dim();
  const SparseMatrix D = total_derivation(t);
  if (D.is_zero()) return {};
  // columns of D
  std::vector<Coeffs> col(N);
  for (const auto &[r, row] : D.rows())
    for (const auto &[c, v] : row) col[c].emplace(r, v);
  Coeffs out;
  for (const auto &[p, v] : t2) {
    const std::size_t k = p / N, l = p % N;
    for (const auto &[r, w] : col[k]) add_entry(out, r * N + l, v * w);
    for (const auto &[r, w] : col[l]) add_entry(out, k * N + r, v * w);
  }
  return out;
}

Coeffs BBQuotient::bracket(const Coeffs &x, const Coeffs &y) const {
  Coeffs out;
  for (const auto &[p, u] : x)
    for (const auto &[q, v] : y) axpy(out, u * v, table_[p][q]);
  return out;
}

HomologySubspace full_homology(const BBQuotient &bb) {
  const auto &K = bb.relations();
  for (const auto &r : K.rref_basis())
    if (!bb.total_derivation(r).is_zero())
      throw InternalError("{β,β'} ↦ d_{β,β'} does not vanish on the relation space");
  const std::size_t Q = bb.dim(), N = bb.algebra().dim();
  std::map<std::size_t, Coeffs> rows;
  for (std::size_t p = 0; p < Q; ++p) {
    const auto [i, j] = bb.coset_pair(p);
    for (const auto &[pos, v] : bb.basis_derivation(i, j).flatten()) rows[pos][p] = v;
  }
  (void)N;
  std::vector<Coeffs> row_list;
  for (auto &[pos, r] : rows) row_list.push_back(std::move(r));
  HomologySubspace H;
  H.space = Subspace(bb.quotient().quotient_space(), kernel_basis(row_list, Q));
  H.central = true;
  for (const auto &v : H.space.rref_basis())
    for (std::size_t q = 0; q < Q && H.central; ++q) {
      const Coeffs e = unit_vec(q);
      if (!bb.bracket(v, e).empty() || !bb.bracket(e, v).empty()) H.central = false;
    }
  return H;
}

UniformReport check_uniform(const BBQuotient &bb, const std::vector<Coeffs> &K_span, int ell2) {
  UniformReport rep;
  rep.ell = bb.ell();
  rep.ell2 = ell2;
  auto fh = full_homology(bb);
  for (const auto &k : K_span)
    if (!fh.space.contains(k)) throw DomainError("K is not contained in FH(b) at level " + std::to_string(bb.ell()));
  auto verdict = [&](const BBQuotient &q, std::string &witness) {
    for (const auto &r : q.relations().rref_basis())
      if (!q.beta_star_of(r).empty()) {
        witness = "relation tensor with β* = " + q.algebra().str(q.beta_star_of(r));
        return false;
      }
    for (const auto &k : K_span) {
      Coeffs lifted = q.quotient().lift(k);
      if (!q.beta_star_of(lifted).empty()) {
        witness = "lift of a K vector with β* = " + q.algebra().str(q.beta_star_of(lifted));
        return false;
      }
    }
    return true;
  };
  rep.uniform = verdict(bb, rep.witness);
  BBQuotient other(bb.algebra_ref(), ell2);
  auto fh2 = full_homology(other);
  rep.in_fh2 = true;
  for (const auto &k : K_span)
    if (!fh2.space.contains(k)) rep.in_fh2 = false;
  std::string w2;
  rep.uniform2 = verdict(other, w2);
  return rep;
}

// ---------------------------------------------------------------- checks

CheckResult check_derivation_law(const BBQuotient &bb) {
  const auto &B = bb.algebra();
  const std::size_t N = B.dim();
  CheckResult r{"derivation law", true, 0, {}, ""};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const auto &D = bb.basis_derivation(i, j);
      for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
          Coeffs ex = unit_vec(x), ey = unit_vec(y);
          Coeffs lhs = D.apply(B.mul(ex, ey));
          Coeffs rhs = add(B.mul(D.apply(ex), ey), B.mul(ex, D.apply(ey)));
          r.expect(lhs == rhs, "d_{" + B.space()->label(i) + "," + B.space()->label(j) + "} on (" +
                                   B.space()->label(x) + ", " + B.space()->label(y) + ")");
        }
    }
  return r;
}

CheckResult check_bb_lie(const BBQuotient &bb) {
  CheckResult r{"{b,b} Lie algebra", true, 0, {}, ""};
  const std::size_t Q = bb.dim();
  const auto &T = bb.bracket_table();
  const auto lab = bb.quotient().coset_labels();
  for (std::size_t p = 0; p < Q; ++p)
    for (std::size_t q = p; q < Q; ++q)
      r.expect(T[p][q] == scaled(T[q][p], -1), "antisymmetry " + lab[p] + ", " + lab[q]);
  for (std::size_t p = 0; p < Q; ++p)
    for (std::size_t q = p + 1; q < Q; ++q)
      for (std::size_t s = q + 1; s < Q; ++s) {
        Coeffs x = unit_vec(p), y = unit_vec(q), z = unit_vec(s);
        Coeffs j = bb.bracket(x, T[q][s]);
        axpy(j, 1, bb.bracket(y, T[s][p]));
        axpy(j, 1, bb.bracket(z, T[p][q]));
        r.expect(j.empty(), "Jacobi " + lab[p] + ", " + lab[q] + ", " + lab[s]);
      }
  r.note = "dim " + std::to_string(Q);
  return r;
}

CheckResult check_diamond_heart(const CoordAlgebra &B) {
  CheckResult r{"diamond/heart containment", true, 0, {}, ""};
  for (auto c : B.positions(Part::C))
    for (auto c2 : B.positions(Part::C)) {
      Coeffs ec = unit_vec(c), ec2 = unit_vec(c2);
      Coeffs d = B.diamond(ec, ec2), h = B.heart(ec, ec2);
      r.expect(B.restrict_to(d, Part::A) == d, "◊ leaves 𝒜 at " + B.space()->label(c) + ", " + B.space()->label(c2));
      r.expect(B.restrict_to(h, Part::B) == h, "♥ leaves ℬ at " + B.space()->label(c) + ", " + B.space()->label(c2));
    }
  return r;
}

CheckResult check_beta_star_on_relations(const CoordAlgebra &B) {
  CheckResult r{"beta* on relations", true, 0, {}, ""};
  const std::size_t N = B.dim();
  for (const auto &g : relation_generators(B)) {
    Coeffs s;
    for (const auto &[p, v] : g.tensor) axpy(s, v, beta_star(B, unit_vec(p / N), unit_vec(p % N)));
    r.expect(s.empty(), g.family + " generator has β* = " + B.str(s));
  }
  return r;
}

}  // namespace rglie
