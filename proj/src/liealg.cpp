#include "rglie/liealg.hpp"

#include <algorithm>
#include <cstdlib>

namespace rglie {

Family matrix_family(Family f) { return f == Family::BC ? Family::C : f; }

Rational FormedSpace::form(const Coeffs &u, const Coeffs &w) const {
  if (!has_form()) throw DomainError("type A carries no bilinear form");
  Rational s = 0;
  for (const auto &[r, row] : gram.rows()) {
    auto it = u.find(r);
    if (it == u.end()) continue;
    for (const auto &[c, g] : row) {
      auto jt = w.find(c);
      if (jt != w.end()) s += it->second * g * jt->second;
    }
  }
  return s;
}

FormedSpace make_formed_space(Family family, int n) {
  if (n < 1) throw DegenerateInput("truncation size must be positive");
  FormedSpace V;
  V.family = matrix_family(family);
  V.n = n;
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("v:" + std::to_string(i));
  if (V.family != Family::A)
    for (int i = 1; i <= n; ++i) labels.push_back("vb:" + std::to_string(i));
  if (V.family == Family::B) labels.push_back("v:0");
  V.space = make_space(labels);
  if (V.family == Family::A) return V;
  V.gram = SparseMatrix(V.space);
  V.skew = V.family == Family::C;
  for (int i = 1; i <= n; ++i) {
    V.gram.set(V.pos(i), V.bar(i), 2);
    V.gram.set(V.bar(i), V.pos(i), V.skew ? -2 : 2);
  }
  if (V.family == Family::B) V.gram.set(V.zero(), V.zero(), 2);
  return V;
}

SparseMatrix matrix_unit(const std::string &j, const std::string &k, const SpaceRef &space) {
  return SparseMatrix::unit(space, j, k);
}

SparseMatrix MatrixLieAlgebra::element(const Coeffs &coords) const {
  SparseMatrix m(ambient.space);
  for (const auto &[k, c] : coords) m = m + basis.at(k) * c;
  return m;
}

std::optional<Root> eps_coordinates(Family family, const std::vector<int> &indices,
                                    const std::vector<Rational> &eig) {
  std::map<int, int> coords;
  auto as_int = [](const Rational &q, int &out) {
    if (q.get_den() != 1 || !q.get_num().fits_sint_p()) return false;
    out = static_cast<int>(q.get_num().get_si());
    return true;
  };
  if (matrix_family(family) != Family::A) {
    if (eig.size() != indices.size()) throw ShapeError("eigenvalue count does not match the Cartan");
    for (std::size_t k = 0; k < eig.size(); ++k) {
      int c;
      if (!as_int(eig[k], c)) return std::nullopt;
      coords[indices[k]] = c;
    }
    return Root(coords);
  }
  const std::size_t m = indices.size();
  if (m == 0 || eig.size() + 1 != m) throw ShapeError("eigenvalue count does not match the Cartan");
  Rational weighted = 0;
  for (std::size_t j = 0; j < eig.size(); ++j) weighted += eig[j] * static_cast<long>(j + 1);
  const Rational t = -weighted / static_cast<long>(m);
  for (std::size_t k = 0; k < m; ++k) {
    Rational c = t;
    for (std::size_t j = k; j < eig.size(); ++j) c += eig[j];
    int ci;
    if (!as_int(c, ci)) return std::nullopt;
    coords[indices[k]] = ci;
  }
  return Root(coords);
}

std::vector<SparseMatrix> cartan_generators(const FormedSpace &V, Family family, const std::vector<int> &indices) {
  auto h = [&](int i) {
    SparseMatrix m(V.space);
    m.set(V.pos(i), V.pos(i), 1);
    if (V.family != Family::A) m.set(V.bar(i), V.bar(i), -1);
    return m;
  };
  std::vector<SparseMatrix> out;
  if (matrix_family(family) == Family::A) {
    for (std::size_t k = 0; k + 1 < indices.size(); ++k) out.push_back(h(indices[k]) - h(indices[k + 1]));
  } else {
    for (int i : indices) out.push_back(h(i));
  }
  return out;
}

namespace {

/// α(h) for a diagonal h: Σ_i c_i h_{v_i v_i}.
Rational evaluate_weight(const Root &alpha, const SparseMatrix &h, const FormedSpace &V) {
  Rational s = 0;
  for (const auto &[i, c] : alpha.coords()) s += h.at(V.pos(i), V.pos(i)) * c;
  return s;
}

/// If [h, x] = λ x for every Cartan generator, returns the eigenvalues.
std::optional<std::vector<Rational>> eigenvalues_of(const SparseMatrix &x, const std::vector<SparseMatrix> &cartan) {
  if (x.is_zero()) return std::nullopt;
  const auto &[r0, row0] = *x.rows().begin();
  const auto &[c0, x0] = *row0.begin();
  std::vector<Rational> eig;
  for (const auto &h : cartan) {
    SparseMatrix y = commutator(h, x);
    Rational lambda = y.at(r0, c0) / x0;
    if (!(y == x * lambda)) return std::nullopt;
    eig.push_back(lambda);
  }
  return eig;
}

/// Fills cartan, weights, root-space index and coordinatizer.  Throws
/// InternalError when a basis element is not a weight vector.
void finalize(MatrixLieAlgebra &g, const std::vector<std::optional<Root>> &claimed) {
  g.cartan = cartan_generators(g.ambient, g.family, g.indices);
  std::vector<Coeffs> flat;
  for (const auto &b : g.basis) flat.push_back(b.flatten());
  g.coordinatizer = Coordinatizer(g.ambient.space->dim() * g.ambient.space->dim(), flat);
  g.basis_weight.clear();
  g.root_space_index.clear();
  for (std::size_t k = 0; k < g.basis.size(); ++k) {
    auto eig = eigenvalues_of(g.basis[k], g.cartan);
    if (!eig) throw InternalError("basis element " + g.basis_names[k] + " is not a weight vector");
    auto w = eps_coordinates(g.family, g.indices, *eig);
    if (!w) throw InternalError("basis element " + g.basis_names[k] + " has a non-integral weight");
    if (k < claimed.size() && claimed[k] && !(*claimed[k] == *w))
      throw InternalError("basis element " + g.basis_names[k] + " has weight " + w->str());
    g.basis_weight.push_back(*w);
    g.root_space_index[*w].push_back(k);
  }
}

}  // namespace

MatrixLieAlgebra build_algebra(Family family, int n) {
  const Family f = matrix_family(family);
  if ((f == Family::A || f == Family::D) && n < 2)
    throw DegenerateInput("type " + family_name(family) + " needs truncation size >= 2 to have nonzero roots");
  if (n < 1) throw DegenerateInput("truncation size must be positive");
  MatrixLieAlgebra g;
  g.family = f;
  g.n = n;
  for (int i = 1; i <= n; ++i) g.indices.push_back(i);
  g.ambient = make_formed_space(f, n);
  const auto &V = g.ambient;
  std::vector<std::optional<Root>> claimed;
  auto e = [&](std::size_t r, std::size_t c) {
    SparseMatrix m(V.space);
    m.set(r, c, 1);
    return m;
  };
  auto push = [&](SparseMatrix m, const Root &w) {
    g.basis.push_back(std::move(m));
    g.basis_names.push_back("x[" + w.str() + "]");
    claimed.emplace_back(w);
  };
  const Rational sign = f == Family::C ? 1 : -1;  // e_{i,j̄} ± e_{j,ī}
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const Root a = Root::eps(i) - Root::eps(j);
      if (f == Family::A)
        push(e(V.pos(i), V.pos(j)), a);
      else
        push(e(V.pos(i), V.pos(j)) - e(V.bar(j), V.bar(i)), a);
    }
  if (f != Family::A) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        push(e(V.pos(i), V.bar(j)) + e(V.pos(j), V.bar(i)) * sign, Root::eps(i) + Root::eps(j));
        push(e(V.bar(i), V.pos(j)) + e(V.bar(j), V.pos(i)) * sign, -(Root::eps(i) + Root::eps(j)));
      }
    for (int i = 1; i <= n; ++i) {
      if (f == Family::B) {
        push(e(V.pos(i), V.zero()) - e(V.zero(), V.bar(i)), Root::eps(i));
        push(e(V.bar(i), V.zero()) - e(V.zero(), V.pos(i)), Root::eps(i, -1));
      }
      if (f == Family::C) {
        push(e(V.pos(i), V.bar(i)), Root::eps(i, 2));
        push(e(V.bar(i), V.pos(i)), Root::eps(i, -2));
      }
    }
  }
  auto hs = cartan_generators(V, f, g.indices);
  for (std::size_t k = 0; k < hs.size(); ++k) {
    g.basis.push_back(hs[k]);
    g.basis_names.push_back("h" + std::to_string(k + 1));
    claimed.emplace_back(Root());
  }
  finalize(g, claimed);
  return g;
}

Subspace derived_root_space(const MatrixLieAlgebra &g, const Root &alpha) {
  const std::size_t d = g.ambient.space->dim();
  auto gl = make_space([&] {
    std::vector<std::string> l;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) l.push_back(g.ambient.space->label(r) + ">" + g.ambient.space->label(c));
    return l;
  }());
  // rows over the unknown coefficients t_k of Σ t_k b_k
  std::map<std::size_t, Coeffs> rows;
  std::size_t block = 0;
  for (const auto &h : g.cartan) {
    const Rational ah = evaluate_weight(alpha, h, g.ambient);
    for (std::size_t k = 0; k < g.dim(); ++k) {
      SparseMatrix y = commutator(h, g.basis[k]) - g.basis[k] * ah;
      for (const auto &[pos, v] : y.flatten()) rows[block * d * d + pos][k] = v;
    }
    ++block;
  }
  std::vector<Coeffs> row_list;
  for (auto &[p, r] : rows) row_list.push_back(std::move(r));
  std::vector<Coeffs> vecs;
  for (const auto &t : kernel_basis(row_list, g.dim())) vecs.push_back(g.element(t).flatten());
  return Subspace(gl, vecs);
}

// ---------------------------------------------------------------- modules

std::string module_kind_name(ModuleKind k) {
  switch (k) {
  case ModuleKind::Natural: return "V";
  case ModuleKind::Symmetric: return "S";
  case ModuleKind::Adjoint: return "adjoint";
  case ModuleKind::Trivial: return "trivial";
  }
  return "?";
}

Coeffs RepModule::act(const SparseMatrix &x, const Coeffs &v) const {
  switch (kind) {
  case ModuleKind::Natural: return x.apply(v);
  case ModuleKind::Symmetric:
  case ModuleKind::Adjoint: return coordinates(commutator(x, element(v)));
  case ModuleKind::Trivial: return {};
  }
  return {};
}

SparseMatrix RepModule::element(const Coeffs &coords) const {
  SparseMatrix m(ambient.space);
  for (const auto &[k, c] : coords) m = m + mats.at(k) * c;
  return m;
}

std::vector<std::pair<std::vector<Rational>, std::vector<Coeffs>>>
simultaneous_eigenspaces(std::size_t dim, const std::vector<std::vector<Coeffs>> &ops) {
  using Piece = std::pair<std::vector<Rational>, std::vector<Coeffs>>;
  // fast path: the given basis already consists of common eigenvectors
  {
    std::vector<Piece> pieces;
    std::map<std::vector<Rational>, std::size_t> where;
    bool ok = true;
    for (std::size_t j = 0; j < dim && ok; ++j) {
      std::vector<Rational> eig;
      for (const auto &op : ops) {
        const Coeffs &img = op.at(j);
        if (img.empty()) {
          eig.emplace_back(0);
        } else if (img.size() == 1 && img.begin()->first == j) {
          eig.push_back(img.begin()->second);
        } else {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      auto [it, fresh] = where.emplace(eig, pieces.size());
      if (fresh) pieces.push_back({eig, {}});
      pieces[it->second].second.push_back(Coeffs{{j, Rational(1)}});
    }
    if (ok) return pieces;
  }
  std::vector<Piece> pieces;
  {
    std::vector<Coeffs> all;
    for (std::size_t j = 0; j < dim; ++j) all.push_back(Coeffs{{j, Rational(1)}});
    pieces.push_back({{}, all});
  }
  for (const auto &op : ops) {
    // Gershgorin bound on |λ| over columns
    Rational bound = 0;
    for (const auto &col : op) {
      Rational s = 0;
      for (const auto &[r, v] : col) s += abs(v);
      if (s > bound) bound = s;
    }
    const long B = static_cast<long>(mpz_class(bound.get_num() / bound.get_den()).get_si()) + 1;
    std::vector<Piece> next;
    for (const auto &[eig, W] : pieces) {
      std::vector<Coeffs> images;
      for (const auto &w : W) {
        Coeffs img;
        for (const auto &[j, c] : w) axpy(img, c, op.at(j));
        images.push_back(std::move(img));
      }
      std::size_t found = 0;
      for (long lam = -B; lam <= B; ++lam) {
        std::map<std::size_t, Coeffs> rows;
        for (std::size_t k = 0; k < W.size(); ++k) {
          Coeffs col = images[k];
          axpy(col, Rational(-lam), W[k]);
          for (const auto &[r, v] : col) rows[r][k] = v;
        }
        std::vector<Coeffs> row_list;
        for (auto &[r, row] : rows) row_list.push_back(std::move(row));
        auto ker = kernel_basis(row_list, W.size());
        if (ker.empty()) continue;
        std::vector<Coeffs> vecs;
        for (const auto &t : ker) {
          Coeffs v;
          for (const auto &[k, c] : t) axpy(v, c, W[k]);
          vecs.push_back(std::move(v));
        }
        found += vecs.size();
        auto e2 = eig;
        e2.emplace_back(lam);
        next.push_back({e2, vecs});
      }
      if (found != W.size()) {
        std::string witness;
        for (const auto &[j, c] : W.front()) witness += " " + std::to_string(j) + ":" + to_string(c);
        throw DecompositionFailure("operator is not diagonalizable with integral spectrum on the piece containing" +
                                   witness);
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

std::vector<WeightSpace> weight_decompose(const RepModule &m, const std::vector<SparseMatrix> &cartan, Family family,
                                          const std::vector<int> &indices) {
  std::vector<std::vector<Coeffs>> ops;
  for (const auto &h : cartan) {
    std::vector<Coeffs> cols;
    for (std::size_t j = 0; j < m.dim(); ++j) cols.push_back(m.act(h, Coeffs{{j, Rational(1)}}));
    ops.push_back(std::move(cols));
  }
  std::vector<WeightSpace> out;
  for (auto &[eig, vecs] : simultaneous_eigenspaces(m.dim(), ops)) {
    std::optional<Root> w;
    if (cartan.empty())
      w = Root();
    else
      w = eps_coordinates(family, indices, eig);
    if (!w) throw DecompositionFailure("non-integral weight in module decomposition");
    out.push_back({*w, Subspace(m.space, vecs)});
  }
  return out;
}

std::vector<WeightSpace> weight_decompose(const RepModule &m, const MatrixLieAlgebra &g) {
  return weight_decompose(m, g.cartan, g.family, g.indices);
}

namespace {

void index_module(RepModule &m, const MatrixLieAlgebra &g) {
  m.basis_weight.assign(m.dim(), Root());
  m.weight_index.clear();
  for (const auto &ws : weight_decompose(m, g)) {
    for (const auto &b : ws.space.rref_basis()) {
      if (b.size() != 1) throw InternalError("module basis is not a weight basis");
      m.basis_weight[b.begin()->first] = ws.weight;
    }
  }
  for (std::size_t k = 0; k < m.dim(); ++k) m.weight_index[m.basis_weight[k]].push_back(k);
}

}  // namespace

RepModule build_module(const MatrixLieAlgebra &g, ModuleKind kind) {
  RepModule m;
  m.kind = kind;
  m.ambient = g.ambient;
  const std::size_t d = g.ambient.space->dim();
  switch (kind) {
  case ModuleKind::Natural:
    if (g.family == Family::A) throw DomainError("natural module is only provided for B, C and D");
    m.space = g.ambient.space;
    break;
  case ModuleKind::Trivial: m.space = make_space({"1"}); break;
  case ModuleKind::Adjoint:
    m.mats = g.basis;
    m.space = make_space(g.basis_names);
    m.coordinatizer = g.coordinatizer;
    break;
  case ModuleKind::Symmetric: {
    if (g.family != Family::C) throw DomainError("module S is only defined for family C");
    // trace zero and φᵀG = Gφ, as linear conditions on flattened φ
    std::vector<Coeffs> rows;
    Coeffs tr;
    for (std::size_t i = 0; i < d; ++i) tr.emplace(i * d + i, Rational(1));
    rows.push_back(tr);
    const auto &G = g.ambient.gram;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        Coeffs row;
        for (std::size_t r = 0; r < d; ++r) {
          add_entry(row, r * d + p, G.at(r, q));
          add_entry(row, r * d + q, -G.at(p, r));
        }
        if (!row.empty()) rows.push_back(row);
      }
    auto ker = kernel_basis(rows, d * d);
    RepModule raw;
    raw.kind = ModuleKind::Symmetric;
    raw.ambient = g.ambient;
    for (const auto &k : ker) raw.mats.push_back(SparseMatrix::unflatten(g.ambient.space, g.ambient.space, k));
    raw.coordinatizer = Coordinatizer(d * d, ker);
    raw.space = make_space([&] {
      std::vector<std::string> l;
      for (std::size_t i = 0; i < ker.size(); ++i) l.push_back("s" + std::to_string(i));
      return l;
    }());
    // re-basis by weights; each weight space is put in rref over gl(V)
    std::vector<Coeffs> flat;
    std::vector<std::string> names;
    for (const auto &ws : weight_decompose(raw, g)) {
      std::vector<Coeffs> gl_vecs;
      for (const auto &b : ws.space.rref_basis()) gl_vecs.push_back(raw.element(b).flatten());
      RowReducer red(d * d);
      for (const auto &v : gl_vecs) red.insert(v);
      std::size_t k = 0;
      for (const auto &v : red.basis()) {
        flat.push_back(v);
        names.push_back("s[" + ws.weight.str() + "]" + (red.rank() > 1 ? "#" + std::to_string(++k) : ""));
      }
    }
    for (const auto &v : flat) m.mats.push_back(SparseMatrix::unflatten(g.ambient.space, g.ambient.space, v));
    m.coordinatizer = Coordinatizer(d * d, flat);
    m.space = make_space(names);
    break;
  }
  }
  if (kind == ModuleKind::Trivial) {
    m.basis_weight = {Root()};
    m.weight_index[Root()] = {0};
  } else {
    index_module(m, g);
  }
  return m;
}

// ---------------------------------------------------------------- subalgebras

namespace {

std::optional<Family> identify_family(const std::set<Root> &S, const std::vector<int> &indices) {
  const int m = static_cast<int>(indices.size());
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC}) {
    if (m < 1) break;
    std::set<Root> relabelled;
    for (const auto &r : generate(f, m).roots) {
      std::map<int, int> c;
      for (const auto &[i, k] : r.coords()) c[indices[i - 1]] = k;
      relabelled.insert(Root(c));
    }
    if (relabelled == S) return f;
  }
  return std::nullopt;
}

}  // namespace

MatrixLieAlgebra subalgebra_from_subsystem(const MatrixLieAlgebra &g, const std::set<Root> &S) {
  RootSystem R{g.family, g.n, {}};
  for (const auto &[w, idx] : g.root_space_index) R.roots.insert(w);
  if (!is_full_subsystem(S, R)) throw DomainError("subsystem is not full / not closed");
  if (connected_components(S).size() != 1) throw DomainError("subsystem is not irreducible");
  std::set<int> support;
  for (const auto &r : S)
    for (const auto &[i, c] : r.coords()) support.insert(i);
  std::vector<int> indices(support.begin(), support.end());
  auto fam = identify_family(S, indices);
  if (!fam) throw DomainError("subsystem is not of a standard type on its support");

  MatrixLieAlgebra sub;
  sub.family = matrix_family(*fam);
  sub.n = g.n;
  sub.indices = indices;
  sub.ambient = g.ambient;
  std::vector<std::optional<Root>> claimed;
  std::vector<Root> sdiv;
  for (const auto &r : S)
    if (!r.is_zero() && !S.count(r * 2)) sdiv.push_back(r);
  for (const auto &a : sdiv)
    for (auto k : g.root_space_index.at(a)) {
      sub.basis.push_back(g.basis[k]);
      sub.basis_names.push_back(g.basis_names[k]);
      claimed.emplace_back(a);
    }
  const std::size_t d = g.ambient.space->dim();
  RowReducer zero_part(d * d);
  for (const auto &a : sdiv)
    for (auto k : g.root_space_index.at(a))
      for (auto l : g.root_space_index.at(-a)) zero_part.insert(commutator(g.basis[k], g.basis[l]).flatten());
  std::size_t k = 0;
  for (const auto &v : zero_part.basis()) {
    sub.basis.push_back(SparseMatrix::unflatten(g.ambient.space, g.ambient.space, v));
    sub.basis_names.push_back("t" + std::to_string(++k));
    claimed.emplace_back(Root());
  }
  finalize(sub, claimed);
  for (const auto &h : sub.cartan)
    if (!sub.contains(h)) throw InternalError("Cartan generator outside the subsystem subalgebra");
  return sub;
}

// ---------------------------------------------------------------- Clifford Jordan

CliffordJordan make_clifford_jordan(const std::vector<std::vector<Coeffs>> &a_mult, const Coeffs &a_unit,
                                    const std::vector<std::vector<Coeffs>> &action,
                                    const std::vector<std::vector<Coeffs>> &g) {
  CliffordJordan j;
  j.a_dim = a_mult.size();
  j.w_dim = g.size();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.a_dim; ++i) labels.push_back("a:" + std::to_string(i));
  for (std::size_t k = 0; k < j.w_dim; ++k) labels.push_back("w:" + std::to_string(k));
  j.space = make_space(labels);
  const std::size_t D = j.dim();
  j.table.assign(D, std::vector<Coeffs>(D));
  auto shift = [&](const Coeffs &c) {
    Coeffs r;
    for (const auto &[k, v] : c) r.emplace(k + j.a_dim, v);
    return r;
  };
  for (std::size_t a = 0; a < j.a_dim; ++a) {
    for (std::size_t b = 0; b < j.a_dim; ++b) j.table[a][b] = a_mult[a][b];
    for (std::size_t k = 0; k < j.w_dim; ++k) {
      j.table[a][j.a_dim + k] = shift(action[a][k]);
      j.table[j.a_dim + k][a] = shift(action[a][k]);
    }
  }
  for (std::size_t k = 0; k < j.w_dim; ++k)
    for (std::size_t l = 0; l < j.w_dim; ++l) j.table[j.a_dim + k][j.a_dim + l] = g[k][l];
  j.unit = a_unit;
  return j;
}

CliffordJordan clifford_of_form(const FormedSpace &V) {
  const std::size_t d = V.space->dim();
  std::vector<std::vector<Coeffs>> a_mult{{Coeffs{{0, Rational(1)}}}};
  std::vector<std::vector<Coeffs>> action(1, std::vector<Coeffs>(d));
  for (std::size_t k = 0; k < d; ++k) action[0][k] = Coeffs{{k, Rational(1)}};
  std::vector<std::vector<Coeffs>> g(d, std::vector<Coeffs>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Rational v = V.gram.at(k, l);
      if (sgn(v) != 0) g[k][l] = Coeffs{{0, v}};
    }
  return make_clifford_jordan(a_mult, Coeffs{{0, Rational(1)}}, action, g);
}

Coeffs jordan_product(const CliffordJordan &j, const Coeffs &x, const Coeffs &y) {
  Coeffs out;
  for (const auto &[a, u] : x)
    for (const auto &[b, v] : y) axpy(out, u * v, j.table.at(a).at(b));
  return out;
}

SparseMatrix left_multiplication(const CliffordJordan &j, const Coeffs &x) {
  SparseMatrix L(j.space);
  for (std::size_t c = 0; c < j.dim(); ++c)
    for (const auto &[r, v] : jordan_product(j, x, Coeffs{{c, Rational(1)}})) L.set(r, c, v);
  return L;
}

SparseMatrix jordan_derivation(const CliffordJordan &j, const Coeffs &a, const Coeffs &b) {
  SparseMatrix La = left_multiplication(j, a), Lb = left_multiplication(j, b);
  return Lb * La - La * Lb;
}

SpanReport derivation_span_equals_oB(int n) {
  MatrixLieAlgebra g = build_algebra(Family::B, n);
  const FormedSpace &V = g.ambient;
  CliffordJordan J = clifford_of_form(V);
  const std::size_t d = V.space->dim();
  std::vector<Coeffs> span;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k + 1; l < d; ++l) {
      SparseMatrix D = jordan_derivation(J, Coeffs{{1 + k, Rational(1)}}, Coeffs{{1 + l, Rational(1)}});
      SparseMatrix onV(V.space);
      for (const auto &[r, row] : D.rows())
        for (const auto &[c, v] : row)
          if (r >= 1 && c >= 1) onV.set(r - 1, c - 1, v);
      span.push_back(onV.flatten());
    }
  auto gl = make_space([&] {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < d * d; ++i) l.push_back(std::to_string(i));
    return l;
  }());
  std::vector<Coeffs> alg;
  for (const auto &b : g.basis) alg.push_back(b.flatten());
  Subspace a(gl, span), b(gl, alg);
  return {a == b, a.dim(), b.dim()};
}

// ---------------------------------------------------------------- truncations

std::size_t TruncationIdempotent::rank() const {
  return static_cast<std::size_t>(matrix.trace().get_num().get_ui());
}

TruncationIdempotent make_idempotent(const FormedSpace &V, const std::set<int> &subset) {
  TruncationIdempotent t{subset, SparseMatrix(V.space)};
  for (int i : subset) {
    if (i < 1 || i > V.n) throw DomainError("truncation index " + std::to_string(i) + " out of range");
    t.matrix.set(V.pos(i), V.pos(i), 1);
    if (V.family != Family::A) t.matrix.set(V.bar(i), V.bar(i), 1);
  }
  return t;
}

SparseMatrix circ_trunc(const SparseMatrix &x, const SparseMatrix &y, const TruncationIdempotent &idem, Family family) {
  const Family f = matrix_family(family);
  if (f == Family::B || f == Family::D) throw DomainError("the truncated ∘ is only used for families A, C and BC");
  if (x.domain() != idem.matrix.domain() || y.domain() != idem.matrix.domain())
    throw ShapeError("∘ operands act on another space");
  SparseMatrix xy = x * y;
  const Rational trJ = idem.matrix.trace();
  if (sgn(trJ) == 0) throw DomainError("empty truncation subset");
  return xy + y * x - idem.matrix * (2 * xy.trace() / trJ);
}

SparseMatrix v_ops(const Coeffs &u, const Coeffs &v, const FormedSpace &V, const TruncationIdempotent &idem,
                   VOpVariant variant) {
  const auto &G = V.gram;
  // row functionals w ↦ (x, w) = (xᵀG) w and w ↦ (w, x) = (Gx)ᵀ w
  auto left = [&](const Coeffs &x) {
    Coeffs r;
    for (const auto &[i, a] : x)
      if (auto it = G.rows().find(i); it != G.rows().end()) axpy(r, a, it->second);
    return r;
  };
  auto right = [&](const Coeffs &x) { return G.apply(x); };
  auto outer = [&](const Coeffs &col, const Coeffs &row) {
    SparseMatrix m(V.space);
    for (const auto &[r, a] : col)
      for (const auto &[c, b] : row) m.add_to(r, c, a * b);
    return m;
  };
  const Rational half(1, 2);
  switch (variant) {
  case VOpVariant::Circ: return (outer(u, left(v)) + outer(v, left(u))) * half;
  case VOpVariant::BracketL:
  case VOpVariant::BracketN: {
    SparseMatrix m = (outer(u, left(v)) + outer(v, right(u))) * half;
    const Rational uv = V.form(u, v);
    if (variant == VOpVariant::BracketL) {
      const Rational l = static_cast<long>(idem.subset.size());
      return m + idem.matrix * (uv / (2 * l));
    }
    return m + SparseMatrix::identity(V.space) * (uv / (2 * static_cast<long>(V.n)));
  }
  }
  return SparseMatrix(V.space);
}

}  // namespace rglie
