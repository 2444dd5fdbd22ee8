#include "rglie/graded.hpp"

#include "parallel.hpp"
#include "rglie/presets.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

namespace rglie {

namespace {

Coeffs unit_vec(std::size_t i) { return Coeffs{{i, Rational(1)}}; }

bool is_ptype(Family f) { return f == Family::A || f == Family::C || f == Family::BC; }

/// Coordinates (over `mats`) spanning the maps supported on rows and columns
/// in `allowed`.
std::vector<Coeffs> restricted_span(const std::vector<SparseMatrix> &mats, const std::set<std::size_t> &allowed) {
  std::map<std::size_t, Coeffs> rows;  // flattened outside position -> coefficients over mats
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::size_t d = mats[k].domain()->dim();
    for (const auto &[r, row] : mats[k].rows())
      for (const auto &[c, v] : row)
        if (!allowed.count(r) || !allowed.count(c)) rows[r * d + c].emplace(k, v);
  }
  std::vector<Coeffs> list;
  for (auto &[p, r] : rows) list.push_back(std::move(r));
  return kernel_basis(list, mats.size());
}

}  // namespace

unsigned worker_threads() {
  if (const char *env = std::getenv("RG_LIE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

int base_size(Family family, int ell) { return (family == Family::A || family == Family::D) ? ell + 1 : ell; }

std::string bound_violation(Family family, int ell) {
  switch (family) {
  case Family::BC:
    if (ell <= 3) return "type BC needs ℓ > 3 (got ℓ = " + std::to_string(ell) + ")";
    break;
  case Family::B:
  case Family::C:
    if (ell <= 4) return "types B and C need ℓ > 4 (got ℓ = " + std::to_string(ell) + ")";
    break;
  case Family::A:
  case Family::D:
    if (ell + 1 <= 5) return "types A and D need |I_0| = ℓ+1 > 5 (got ℓ = " + std::to_string(ell) + ")";
    break;
  }
  return "";
}

std::string block_name(Block b) {
  switch (b) {
  case Block::G: return "G⊗A";
  case Block::S: return "S⊗B";
  case Block::V: return "V⊗C";
  case Block::D: return "D";
  }
  return "?";
}

// ---------------------------------------------------------------- construction

GradedModel::GradedModel(const ModelConfig &cfg) : family_(cfg.family), n_(cfg.n), ell_(cfg.ell) {
  if (cfg.quadruple.type != family_)
    throw DomainError("type mismatch: a " + family_name(family_) + " model needs a type " + family_name(family_) +
                      " quadruple, got type " + family_name(cfg.quadruple.type));
  if (ell_ < 1) throw DomainError("level ℓ must be positive");
  const int b0 = base_size(family_, ell_);
  if (b0 > n_)
    throw DomainError("|I_0| = " + std::to_string(b0) + " exceeds the truncation size n = " + std::to_string(n_));
  if (auto v = bound_violation(family_, ell_); !v.empty()) {
    if (!cfg.override_bounds) throw DomainError(v + "; pass the bound override to build anyway");
    sub_bound_ = true;
  }
  for (int i = 1; i <= b0; ++i) I0_.insert(i);
  ptype_ = is_ptype(family_);

  B_ = make_coord_algebra(cfg.quadruple);
  bb_ = std::make_shared<const BBQuotient>(B_, ell_);
  switch (cfg.k_mode) {
  case KMode::Zero: break;
  case KMode::FullHomology: K_ = full_homology(*bb_).space.rref_basis(); break;
  case KMode::Explicit: K_ = cfg.K_span; break;
  }
  for (const auto &k : K_)
    if (!k.empty() && k.rbegin()->first >= bb_->dim()) throw DomainError("K vector outside {b,b}");
  const UniformReport uni = check_uniform(*bb_, K_, ell_ == 7 ? 8 : 7);
  if (!uni.uniform) throw DomainError("K does not satisfy the uniform property: " + uni.witness);
  D_ = QuotientSpace(bb_->quotient().quotient_space(), Subspace(bb_->quotient().quotient_space(), K_));

  G_ = build_algebra(matrix_family(family_), n_);
  R_ = generate(family_, n_);
  J0_ = make_idempotent(G_.ambient, I0_);
  trJ0_ = J0_.matrix.trace();
  nA_ = B_->dim_A();
  nB_ = B_->dim_B();
  nC_ = B_->dim_C();
  nG_ = G_.dim();
  if (family_ == Family::C || family_ == Family::BC) S_ = build_module(G_, ModuleKind::Symmetric);
  if (family_ == Family::B) S_ = build_module(G_, ModuleKind::Natural);
  if (family_ == Family::BC) Vmod_ = build_module(G_, ModuleKind::Natural);
  nS_ = S_.space ? S_.dim() : 0;
  nV_ = Vmod_.space ? Vmod_.dim() : 0;
  nD_ = D_.dim();

  offG_ = 0;
  offS_ = offG_ + nG_ * nA_;
  offV_ = offS_ + nS_ * nB_;
  offD_ = offV_ + nV_ * nC_;
  std::vector<std::string> labels;
  const auto &bl = B_->space()->labels();
  for (std::size_t x = 0; x < nG_; ++x)
    for (std::size_t a = 0; a < nA_; ++a) {
      labels.push_back(G_.basis_names[x] + "⊗" + bl[a]);
      weight_.push_back(G_.basis_weight[x]);
    }
  for (std::size_t s = 0; s < nS_; ++s)
    for (std::size_t b = 0; b < nB_; ++b) {
      labels.push_back((family_ == Family::B ? "s(" + S_.space->label(s) + ")" : S_.space->label(s)) + "⊗" +
                       bl[nA_ + b]);
      weight_.push_back(S_.basis_weight[s]);
    }
  for (std::size_t v = 0; v < nV_; ++v)
    for (std::size_t c = 0; c < nC_; ++c) {
      labels.push_back(Vmod_.space->label(v) + "⊗" + bl[nA_ + nB_ + c]);
      weight_.push_back(Vmod_.basis_weight[v]);
    }
  const auto dl = D_.coset_labels();
  for (std::size_t k = 0; k < nD_; ++k) {
    labels.push_back("<" + dl[k] + ">");
    weight_.emplace_back();
  }
  space_ = make_space(labels);
  compute_table();
}

std::size_t GradedModel::block_offset(Block b) const {
  switch (b) {
  case Block::G: return offG_;
  case Block::S: return offS_;
  case Block::V: return offV_;
  case Block::D: return offD_;
  }
  return 0;
}

std::size_t GradedModel::block_dim(Block b) const {
  switch (b) {
  case Block::G: return nG_ * nA_;
  case Block::S: return nS_ * nB_;
  case Block::V: return nV_ * nC_;
  case Block::D: return nD_;
  }
  return 0;
}

Block GradedModel::block_of(std::size_t i) const {
  if (i < offS_) return Block::G;
  if (i < offV_) return Block::S;
  if (i < offD_) return Block::V;
  if (i < dim()) return Block::D;
  throw ShapeError("model basis index out of range");
}

Coeffs GradedModel::gs_coords(const SparseMatrix &M) const {
  if (!gs_coord_.contains(M.flatten()))
    throw InternalError("a bracket term left " + std::string(ptype_ ? "𝒢 ⊕ 𝒮" : "𝒢") + " in a " +
                        family_name(family_) + " model");
  return gs_coord_.coords(M.flatten());
}

void GradedModel::add_gs_term(Coeffs &out, const Coeffs &gs, const Coeffs &alpha, const Rational &s) const {
  if (gs.empty() || alpha.empty() || sgn(s) == 0) return;
  Coeffs aA, aB;
  for (const auto &[p, v] : alpha) {
    if (p < nA_)
      aA.emplace(p, v);
    else if (p < nA_ + nB_)
      aB.emplace(p - nA_, v);
    else
      throw InternalError("a 𝒞 coefficient was paired with 𝒢 or 𝒮");
  }
  for (const auto &[idx, v] : gs) {
    if (idx < nG_) {
      if (!aB.empty()) throw InternalError("a bracket term landed in 𝒢⊗ℬ: " + B_->str(alpha));
      for (const auto &[p, w] : aA) add_entry(out, offG_ + idx * nA_ + p, s * v * w);
    } else {
      if (!aA.empty()) throw InternalError("a bracket term landed in 𝒮⊗𝒜: " + B_->str(alpha));
      for (const auto &[p, w] : aB) add_entry(out, offS_ + (idx - nG_) * nB_ + p, s * v * w);
    }
  }
}

void GradedModel::add_v_term(Coeffs &out, const Coeffs &u, const Coeffs &gamma, const Rational &s,
                             Block block) const {
  if (u.empty() || gamma.empty() || sgn(s) == 0) return;
  for (const auto &[p, w] : gamma) {
    if (block == Block::V) {
      if (p < nA_ + nB_) throw InternalError("an 𝔞 coefficient was paired with 𝒱 ⊗ 𝒞");
      for (const auto &[q, v] : u) add_entry(out, offV_ + q * nC_ + (p - nA_ - nB_), s * v * w);
    } else {
      if (p < nA_ || p >= nA_ + nB_) throw InternalError("a non-ℬ coefficient was paired with 𝒮 = 𝒱");
      for (const auto &[q, v] : u) add_entry(out, offS_ + q * nB_ + (p - nA_), s * v * w);
    }
  }
}

void GradedModel::add_d_term(Coeffs &out, const Coeffs &dcoords, const Rational &s) const {
  if (sgn(s) == 0) return;
  for (const auto &[k, v] : dcoords) add_entry(out, offD_ + k, s * v);
}

Coeffs GradedModel::d_class(const Coeffs &tensor) const { return D_.project(bb_->project(tensor)); }

Coeffs GradedModel::d_element(const Coeffs &d_coords) const {
  Coeffs out;
  add_d_term(out, d_coords, 1);
  return out;
}

Coeffs GradedModel::pair(const Coeffs &b1, const Coeffs &b2) const { return d_element(d_class(bb_->tensor(b1, b2))); }

Coeffs GradedModel::matrix_tensor(const SparseMatrix &X, const Coeffs &alpha) const {
  Coeffs out;
  add_gs_term(out, gs_coords(X), alpha, 1);
  return out;
}

Coeffs GradedModel::vector_tensor(const Coeffs &u, const Coeffs &gamma, Block block) const {
  if (block != Block::V && !(block == Block::S && family_ == Family::B))
    throw DomainError("vector tensors live in 𝒱⊗𝒞 (BC) or 𝒮⊗ℬ with 𝒮 = 𝒱 (B)");
  Coeffs out;
  add_v_term(out, u, gamma, 1, block);
  return out;
}

std::vector<Coeffs> GradedModel::cartan_elements(const std::vector<int> &indices) const {
  std::vector<Coeffs> out;
  for (const auto &h : cartan_generators(G_.ambient, G_.family, indices)) out.push_back(unit_tensor(h));
  return out;
}

// ---------------------------------------------------------------- the table

void GradedModel::compute_table() {
  const auto &V = G_.ambient;
  const std::size_t d = V.space->dim();
  gs_mats_ = G_.basis;
  if (ptype_)
    for (const auto &m : S_.mats) gs_mats_.push_back(m);
  {
    std::vector<Coeffs> flat;
    for (const auto &m : gs_mats_) flat.push_back(m.flatten());
    gs_coord_ = Coordinatizer(d * d, flat);
    if (gs_coord_.size() != gs_mats_.size()) throw InternalError("𝒢 and 𝒮 bases are not independent");
  }
  const std::size_t nGS = gs_mats_.size();
  gs_br_.assign(nGS, std::vector<Coeffs>(nGS));
  gs_circ_.assign(nGS, std::vector<Coeffs>(nGS));
  gs_tr_.assign(nGS, std::vector<Rational>(nGS));
  parallel_for(nGS, [&](std::size_t x) {
    for (std::size_t y = 0; y < nGS; ++y) {
      const SparseMatrix xy = gs_mats_[x] * gs_mats_[y];
      gs_tr_[x][y] = xy.trace();
      gs_br_[x][y] = gs_coords(xy - gs_mats_[y] * gs_mats_[x]);
      if (ptype_) gs_circ_[x][y] = gs_coords(circ_trunc(gs_mats_[x], gs_mats_[y], J0_, family_));
    }
  });
  if (ptype_) {
    gs_brJ_.resize(nGS);
    gs_circJ_.resize(nGS);
    gs_trJ_.resize(nGS);
    for (std::size_t x = 0; x < nGS; ++x) {
      gs_brJ_[x] = gs_coords(commutator(gs_mats_[x], J0_.matrix));
      gs_circJ_[x] = gs_coords(circ_trunc(gs_mats_[x], J0_.matrix, J0_, family_));
      gs_trJ_[x] = (gs_mats_[x] * J0_.matrix).trace();
    }
  }
  // 𝒱 pairs: u∘v and [u,v] (BC), D_{s,t} (B)
  if (family_ == Family::BC || family_ == Family::B) {
    v_circ_.assign(d, std::vector<Coeffs>(d));
    v_br_.assign(d, std::vector<Coeffs>(d));
    v_form_.assign(d, std::vector<Rational>(d));
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t v = 0; v < d; ++v) {
        const Coeffs eu = unit_vec(u), ev = unit_vec(v);
        v_form_[u][v] = V.form(eu, ev);
        if (family_ == Family::BC) {
          v_circ_[u][v] = gs_coords(v_ops(eu, ev, V, J0_, VOpVariant::Circ));
          v_br_[u][v] = gs_coords(v_ops(eu, ev, V, J0_, VOpVariant::BracketL));
        } else {
          // D_{s,t}: w ↦ (s,w)t − (t,w)s
          SparseMatrix Dst(V.space);
          for (std::size_t w = 0; w < d; ++w) {
            const Rational sw = V.form(eu, unit_vec(w)), tw = V.form(ev, unit_vec(w));
            if (sgn(sw) != 0) Dst.add_to(v, w, sw);
            if (sgn(tw) != 0) Dst.add_to(u, w, -tw);
          }
          v_br_[u][v] = gs_coords(Dst);
        }
      }
  }
  // 𝔟 pairs and 𝒟 basis data
  const std::size_t N = B_->dim();
  dpair_.assign(N, std::vector<Coeffs>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) dpair_[i][j] = d_class(bb_->tensor(unit_vec(i), unit_vec(j)));
  auto tail = [&](const Coeffs &tensor, std::size_t c) {
    Coeffs out;
    const Coeffs ec = unit_vec(c);
    for (const auto &[p, v] : tensor) {
      const std::size_t i = p / N, j = p % N;
      if (B_->part(i) != Part::C || B_->part(j) != Part::C) continue;
      axpy(out, v, B_->mul(B_->f(ec, unit_vec(j)), unit_vec(i)));
      axpy(out, v, B_->mul(B_->f(ec, unit_vec(i)), unit_vec(j)));
    }
    return out;
  };
  dstar_.resize(nD_);
  dder_.resize(nD_);
  dtail_.assign(nD_, std::vector<Coeffs>(nC_));
  for (std::size_t k = 0; k < nD_; ++k) {
    const Coeffs t = bb_->quotient().lift(D_.lift(unit_vec(k)));
    dstar_[k] = bb_->beta_star_of(t);
    dder_[k] = bb_->total_derivation(t);
    for (std::size_t c = 0; c < nC_; ++c) dtail_[k][c] = tail(t, nA_ + nB_ + c);
  }
  // the 𝒞-tail of the ⟨β₁,β₂⟩ row must not depend on the representative
  std::vector<Coeffs> null_tensors = bb_->relations().rref_basis();
  for (const auto &k : K_) null_tensors.push_back(bb_->quotient().lift(k));
  for (const auto &r : null_tensors)
    for (std::size_t c = 0; c < nC_; ++c)
      if (!tail(r, nA_ + nB_ + c).empty())
        throw InternalError("the 𝒞-row of ⟨β₁,β₂⟩ is not constant on cosets");

  const std::size_t M = dim();
  table_.assign(M, std::vector<Coeffs>(M));
  parallel_for(M, [&](std::size_t i) {
    for (std::size_t j = 0; j < M; ++j) table_[i][j] = compute_bracket(i, j);
  });
}

Coeffs GradedModel::compute_bracket(std::size_t i, std::size_t j) const {
  const Block bi = block_of(i), bj = block_of(j);
  // block-local decoding: (matrix / vector index, 𝔟 position)
  auto decode = [&](std::size_t p, Block b) -> std::pair<std::size_t, std::size_t> {
    switch (b) {
    case Block::G: return {(p - offG_) / nA_, (p - offG_) % nA_};
    case Block::S: return {(p - offS_) / nB_, nA_ + (p - offS_) % nB_};
    case Block::V: return {(p - offV_) / nC_, nA_ + nB_ + (p - offV_) % nC_};
    case Block::D: return {p - offD_, 0};
    }
    return {0, 0};
  };
  auto negate = [](Coeffs x) {
    for (auto &[k, v] : x) v = -v;
    return x;
  };
  const Rational half(1, 2);
  const auto [xi, pi] = decode(i, bi);
  const auto [xj, pj] = decode(j, bj);
  const Coeffs ai = unit_vec(pi), aj = unit_vec(pj);
  Coeffs out;

  if (bi == Block::D && bj == Block::D) {
    Coeffs r = bb_->bracket(D_.lift(unit_vec(xi)), D_.lift(unit_vec(xj)));
    return d_element(D_.project(r));
  }

  if (ptype_) {
    auto gs_index = [&](Block b, std::size_t x) { return b == Block::G ? x : nG_ + x; };
    const bool mi = bi == Block::G || bi == Block::S, mj = bj == Block::G || bj == Block::S;
    if (mi && mj) {
      const std::size_t X = gs_index(bi, xi), Y = gs_index(bj, xj);
      add_gs_term(out, gs_br_[X][Y], B_->circ(ai, aj), half);
      add_gs_term(out, gs_circ_[X][Y], B_->brk(ai, aj), half);
      add_d_term(out, dpair_[pi][pj], gs_tr_[X][Y]);
      return out;
    }
    if (mi && bj == Block::V) {
      add_v_term(out, gs_mats_[gs_index(bi, xi)].apply(unit_vec(xj)), B_->mul(ai, aj), 1, Block::V);
      return out;
    }
    if (bi == Block::V && mj) return negate(compute_bracket(j, i));
    if (bi == Block::V && bj == Block::V) {
      add_gs_term(out, v_circ_[xi][xj], B_->diamond(ai, aj), 1);
      add_gs_term(out, v_br_[xi][xj], B_->heart(ai, aj), 1);
      add_d_term(out, dpair_[pi][pj], v_form_[xi][xj]);
      return out;
    }
    if (bi == Block::D && mj) {
      const Coeffs &bs = dstar_[xi];
      const std::size_t X = gs_index(bj, xj);
      const Rational s = Rational(-1) / (2 * trJ0_);
      add_gs_term(out, gs_circJ_[X], B_->brk(aj, bs), s);
      add_gs_term(out, gs_brJ_[X], B_->circ(aj, bs), s);
      add_d_term(out, d_class(bb_->tensor(aj, bs)), s * 2 * gs_trJ_[X]);
      return out;
    }
    if (bi == Block::D && bj == Block::V) {
      const Coeffs eu = unit_vec(xj);
      add_v_term(out, J0_.matrix.apply(eu), B_->mul(dstar_[xi], aj), Rational(1) / trJ0_, Block::V);
      add_v_term(out, eu, dtail_[xi][pj - nA_ - nB_], -half, Block::V);
      return out;
    }
    if (bj == Block::D) return negate(compute_bracket(j, i));
    throw InternalError("unhandled block pair");
  }

  // types B and D
  if (bi == Block::G && bj == Block::G) {
    add_gs_term(out, gs_br_[xi][xj], B_->mul(ai, aj), 1);
    add_d_term(out, dpair_[pi][pj], gs_tr_[xi][xj]);
    return out;
  }
  if (bi == Block::G && bj == Block::S) {
    add_v_term(out, gs_mats_[xi].apply(unit_vec(xj)), B_->mul(ai, aj), 1, Block::S);
    return out;
  }
  if (bi == Block::S && bj == Block::G) return negate(compute_bracket(j, i));
  if (bi == Block::S && bj == Block::S) {
    add_gs_term(out, v_br_[xi][xj], B_->mul(ai, aj), 1);
    add_d_term(out, dpair_[pi][pj], v_form_[xi][xj]);
    return out;
  }
  if (bi == Block::D && bj == Block::G) {
    add_gs_term(out, unit_vec(xj), dder_[xi].apply(aj), 1);
    return out;
  }
  if (bi == Block::D && bj == Block::S) {
    add_v_term(out, unit_vec(xj), dder_[xi].apply(aj), 1, Block::S);
    return out;
  }
  if (bj == Block::D) return negate(compute_bracket(j, i));
  throw InternalError("unhandled block pair");
}

Coeffs GradedModel::bracket(const Coeffs &x, const Coeffs &y) const {
  Coeffs out;
  for (const auto &[i, u] : x) {
    const auto &row = table_.at(i);
    for (const auto &[j, v] : y) axpy(out, u * v, row.at(j));
  }
  return out;
}

GradedParts GradedModel::parts(const Coeffs &x) const {
  GradedParts p;
  for (const auto &[i, v] : x) {
    switch (block_of(i)) {
    case Block::G: p.g_part.emplace(i - offG_, v); break;
    case Block::S: p.s_part.emplace(i - offS_, v); break;
    case Block::V: p.v_part.emplace(i - offV_, v); break;
    case Block::D: p.d_part.emplace(i - offD_, v); break;
    }
  }
  return p;
}

Coeffs GradedModel::join(const GradedParts &p) const {
  Coeffs out;
  for (const auto &[i, v] : p.g_part) add_entry(out, offG_ + i, v);
  for (const auto &[i, v] : p.s_part) add_entry(out, offS_ + i, v);
  for (const auto &[i, v] : p.v_part) add_entry(out, offV_ + i, v);
  for (const auto &[i, v] : p.d_part) add_entry(out, offD_ + i, v);
  return out;
}

std::string GradedModel::str(const Coeffs &x) const {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[i, v] : x) {
    if (!first) os << " + ";
    os << to_string(v) << "*" << space_->label(i);
    first = false;
  }
  return os.str();
}

ModelRef build_model(const ModelConfig &cfg) { return std::make_shared<const GradedModel>(cfg); }

ModelRef build_model(Family family, int n, int ell, const std::string &quadruple_source, KMode k,
                     bool override_bounds) {
  ModelConfig cfg;
  cfg.family = family;
  cfg.n = n;
  cfg.ell = ell;
  cfg.quadruple = load_quadruple(quadruple_source);
  cfg.k_mode = k;
  cfg.override_bounds = override_bounds;
  return build_model(cfg);
}

// ---------------------------------------------------------------- Lie checks

CheckResult verify_antisymmetry(const GradedModel &m) {
  CheckResult r{"antisymmetry", true, 0, {}, ""};
  const std::size_t M = m.dim();
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i; j < M; ++j) {
      const auto &x = m.basis_bracket(i, j);
      const auto &y = m.basis_bracket(j, i);
      bool ok = x.size() == y.size();
      if (ok)
        for (auto a = x.begin(), b = y.begin(); a != x.end(); ++a, ++b)
          if (a->first != b->first || a->second != -b->second) {
            ok = false;
            break;
          }
      r.expect(ok, "[" + m.space()->label(i) + ", " + m.space()->label(j) + "]");
    }
  r.note = "all " + std::to_string(M) + "^2 basis pairs";
  return r;
}

namespace {

/// [x,[y,z]] − [[x,y],z] − [y,[x,z]].
Coeffs jacobiator(const GradedModel &m, const Coeffs &x, const Coeffs &y, const Coeffs &z) {
  Coeffs j = m.bracket(x, m.bracket(y, z));
  axpy(j, -1, m.bracket(m.bracket(x, y), z));
  axpy(j, -1, m.bracket(y, m.bracket(x, z)));
  return j;
}

}  // namespace

CheckResult verify_jacobi(const GradedModel &m, const JacobiStrategy &st) {
  CheckResult r{"jacobi", true, 0, {}, ""};
  const std::size_t M = m.dim();
  const auto &lab = m.space()->labels();
  std::ostringstream note;
  if (st.exhaustive) {
    // with antisymmetry the Jacobiator is alternating, so i < j < k suffices
    std::vector<CheckResult> part(M);
    parallel_for(M, [&](std::size_t i) {
      CheckResult &pr = part[i];
      const Coeffs ei = unit_vec(i);
      for (std::size_t j = i + 1; j < M; ++j) {
        const Coeffs ej = unit_vec(j);
        for (std::size_t k = j + 1; k < M; ++k) {
          Coeffs J = m.bracket(ei, m.basis_bracket(j, k));
          axpy(J, 1, m.bracket(ej, m.basis_bracket(k, i)));
          axpy(J, 1, m.bracket(unit_vec(k), m.basis_bracket(i, j)));
          pr.expect(J.empty(), "basis triple (" + lab[i] + ", " + lab[j] + ", " + lab[k] + ")");
        }
      }
    });
    for (const auto &p : part) merge_check(r, p);
    note << "exhaustive basis triples: " << r.evaluated;
  }
  if (st.samples > 0) {
    std::mt19937_64 rng(st.seed);
    std::uniform_int_distribution<std::size_t> pick(0, M - 1), size(1, 3);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto element = [&] {
      Coeffs x;
      const std::size_t s = size(rng);
      for (std::size_t t = 0; t < s; ++t) {
        int c = 0;
        while (c == 0) c = coef(rng);
        add_entry(x, pick(rng), Rational(c));
      }
      if (x.empty()) x.emplace(pick(rng), Rational(1));
      return x;
    };
    std::vector<std::array<Coeffs, 3>> triples(st.samples);
    for (auto &t : triples) t = {element(), element(), element()};
    std::vector<CheckResult> part(st.samples);
    parallel_for(st.samples, [&](std::size_t s) {
      const auto &[x, y, z] = triples[s];
      part[s].expect(jacobiator(m, x, y, z).empty(),
                     "random triple #" + std::to_string(s) + ": x = " + m.str(x) + "; y = " + m.str(y) +
                         "; z = " + m.str(z));
    });
    const std::size_t before = r.evaluated;
    for (const auto &p : part) merge_check(r, p);
    if (st.exhaustive) note << "; ";
    note << "random triples: " << r.evaluated - before << " (seed " << st.seed << ")";
  }
  r.note = note.str();
  return r;
}

// ---------------------------------------------------------------- grading

namespace {

/// If x is a simultaneous eigenvector of ad h for h in hs, its eigenvalues.
std::optional<std::vector<Rational>> ad_eigenvalues(const GradedModel &m, const std::vector<Coeffs> &hs,
                                                    const Coeffs &x) {
  if (x.empty()) return std::nullopt;
  const auto &[p0, x0] = *x.begin();
  std::vector<Rational> eig;
  for (const auto &h : hs) {
    const Coeffs hx = m.bracket(h, x);
    const Rational lam = get(hx, p0) / x0;
    if (hx != scaled(x, lam)) return std::nullopt;
    eig.push_back(lam);
  }
  return eig;
}

std::vector<int> iota_indices(int n) {
  std::vector<int> v;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  return v;
}

}  // namespace

GradingReport verify_grading(const GradedModel &m) {
  GradingReport rep;
  rep.grading_pair = {"grading (i): G⊗1 with Cartan H⊗1", true, 0, {}, ""};
  rep.weights = {"grading (ii): weight decomposition", true, 0, {}, ""};
  rep.table = {"grading (ii): weight table", true, 0, {}, ""};
  rep.zero_part = {"grading (iii): L_0 = sum [L_a, L_-a]", true, 0, {}, ""};
  const auto &G = m.G();
  const std::size_t M = m.dim();
  const auto &lab = m.space()->labels();

  // (i) x ↦ x⊗1 is an injective Lie homomorphism
  std::vector<Coeffs> g1;
  RowReducer red(M);
  for (const auto &x : G.basis) {
    g1.push_back(m.unit_tensor(x));
    red.insert(g1.back());
  }
  rep.grading_pair.expect(red.rank() == G.dim(), "x ↦ x⊗1 is not injective");
  for (std::size_t x = 0; x < G.dim(); ++x)
    for (std::size_t y = 0; y < G.dim(); ++y)
      rep.grading_pair.expect(m.bracket(g1[x], g1[y]) == m.unit_tensor(commutator(G.basis[x], G.basis[y])),
                              "[" + G.basis_names[x] + "⊗1, " + G.basis_names[y] + "⊗1]");
  const auto indices = iota_indices(m.n());
  const auto hs = m.cartan_elements(indices);
  std::set<Root> groots;
  for (std::size_t x = 0; x < G.dim(); ++x) {
    auto eig = ad_eigenvalues(m, hs, g1[x]);
    std::optional<Root> w;
    if (eig) w = eps_coordinates(G.family, indices, *eig);
    rep.grading_pair.expect(w.has_value(), G.basis_names[x] + "⊗1 is not an ad H⊗1 eigenvector");
    if (w && !w->is_zero()) groots.insert(*w);
  }
  std::set<Root> sdiv;
  for (const auto &r : semidivisible(m.roots()).roots)
    if (!r.is_zero()) sdiv.insert(r);
  rep.grading_pair.expect(groots == sdiv, "the roots of G⊗1 differ from R_sdiv");
  rep.grading_pair.note = "dim G = " + std::to_string(G.dim()) + ", |R_sdiv^x| = " + std::to_string(sdiv.size());

  // (ii) every basis vector is a weight vector with the predicted weight
  std::vector<Root> found(M);
  std::vector<CheckResult> part(M);
  std::vector<char> ok(M, 0);
  parallel_for(M, [&](std::size_t i) {
    auto eig = ad_eigenvalues(m, hs, unit_vec(i));
    std::optional<Root> w;
    if (eig) w = eps_coordinates(G.family, indices, *eig);
    if (!w) {
      part[i].expect(false, lab[i] + " is not an ad H⊗1 eigenvector");
      return;
    }
    found[i] = *w;
    ok[i] = 1;
    part[i].expect(m.roots().contains(*w), lab[i] + " has weight " + w->str() + " outside R");
    part[i].expect(*w == m.basis_weight(i), lab[i] + " has weight " + w->str() + ", expected " +
                                                m.basis_weight(i).str());
  });
  for (const auto &p : part) merge_check(rep.weights, p);
  for (std::size_t i = 0; i < M; ++i)
    if (ok[i]) ++rep.weight_dims[found[i]];

  // (ii) the table: ℒ_α by length class, ℒ_0 by components
  // length classes by the δ-norm of the family (relative lengths are
  // ambiguous in rank 1): ε_i short, ±ε_i±ε_j long in B and BC, short in C;
  // 2ε_i long in C, extra-long in BC
  auto length_of = [&](const Root &a) {
    const int nrm = a.norm();
    if (m.family() == Family::C) return nrm == 4 ? LengthClass::Long : LengthClass::Short;
    return nrm == 1 ? LengthClass::Short : nrm == 2 ? LengthClass::Long : LengthClass::ExtraLong;
  };
  const auto &B = m.coord();
  const std::size_t nA = B.dim_A(), nB = B.dim_B(), nC = B.dim_C();
  auto expected = [&](const Root &a) -> std::size_t {
    if (a.is_zero()) {
      std::size_t z = 0;
      for (const auto &w : G.basis_weight) z += w.is_zero() ? nA : 0;
      if (m.has_S())
        for (const auto &w : m.S().basis_weight) z += w.is_zero() ? nB : 0;
      return z + m.D().dim();  // 𝒱 has no zero weight for BC
    }
    const LengthClass c = length_of(a);
    switch (m.family()) {
    case Family::BC: return c == LengthClass::Short ? nC : c == LengthClass::Long ? nA + nB : nA;
    case Family::B:
    case Family::C: return c == LengthClass::Short ? nA + nB : nA;
    case Family::A:
    case Family::D: return nA;
    }
    return 0;
  };
  std::ostringstream tab;
  for (const auto &a : m.roots().roots) {
    const std::size_t got = rep.weight_dims.count(a) ? rep.weight_dims.at(a) : 0;
    rep.table.expect(got == expected(a),
                     "dim L_" + a.str() + " = " + std::to_string(got) + ", expected " + std::to_string(expected(a)));
  }
  for (const auto &[w, c] : rep.weight_dims)
    if (!m.roots().contains(w)) rep.table.fail("weight " + w.str() + " outside R");
  {
    std::map<std::string, std::set<std::size_t>> by_class;
    for (const auto &[w, c] : rep.weight_dims)
      by_class[w.is_zero() ? "zero" : length_name(length_of(w))].insert(c);
    for (const auto &[k, s] : by_class) {
      tab << k << ":";
      for (auto c : s) tab << " " << c;
      tab << "; ";
    }
    tab << "dim L = " << M;
  }
  rep.table.note = tab.str();

  // (iii) ℒ_0 = Σ_{α ≠ 0} [ℒ_α, ℒ_{−α}]
  std::map<Root, std::vector<std::size_t>> by_weight;
  for (std::size_t i = 0; i < M; ++i) by_weight[m.basis_weight(i)].push_back(i);
  RowReducer L0(M), span(M);
  for (auto i : by_weight[Root()]) L0.insert(unit_vec(i));
  for (const auto &[a, idx] : by_weight) {
    if (a.is_zero() || !by_weight.count(-a)) continue;
    for (auto i : idx)
      for (auto j : by_weight.at(-a)) {
        const auto &b = m.basis_bracket(i, j);
        rep.zero_part.expect(L0.contains(b), "[" + lab[i] + ", " + lab[j] + "] has a nonzero-weight part");
        span.insert(b);
      }
  }
  rep.zero_part.expect(span.rank() == L0.rank(), "sum of [L_a, L_-a] has dim " + std::to_string(span.rank()) +
                                                     " < dim L_0 = " + std::to_string(L0.rank()));
  rep.zero_part.note = "dim L_0 = " + std::to_string(L0.rank());
  return rep;
}

// ---------------------------------------------------------------- subsystems

SubModel subalgebra(const ModelRef &m, const std::set<Root> &S0) {
  std::set<Root> S = S0;
  S.insert(Root());
  for (const auto &r : S)
    if (!m->roots().contains(r)) throw DomainError("root " + r.str() + " is not in R");
  std::set<int> J;
  for (const auto &r : S)
    for (const auto &[i, c] : r.coords()) J.insert(i);
  if (J.empty()) throw DomainError("empty subsystem");
  if (restrict_to_indices(m->roots(), J) != S)
    throw DomainError("subsystem is not full: it differs from R ∩ span{ε_j | j ∈ support}");
  std::set<Root> nz;
  for (const auto &r : S)
    if (!r.is_zero()) nz.insert(r);
  if (nz.empty() || connected_components(nz).size() != 1) throw DomainError("subsystem is not irreducible");

  SubModel sub;
  sub.parent = m;
  sub.indices = J;
  sub.roots = S;
  std::set<Root> sdiv;
  for (const auto &r : S)
    if (r.is_zero() || !S.count(r * 2)) sdiv.insert(r);
  sub.G_S = subalgebra_from_subsystem(m->G(), sdiv);
  const std::size_t M = m->dim();
  std::map<Root, std::vector<std::size_t>> by_weight;
  for (std::size_t i = 0; i < M; ++i) by_weight[m->basis_weight(i)].push_back(i);
  RowReducer red(M);
  for (const auto &a : nz)
    if (by_weight.count(a))
      for (auto i : by_weight.at(a)) {
        red.insert(unit_vec(i));
        sub.basis.push_back(unit_vec(i));
      }
  RowReducer zero(M);
  for (const auto &a : nz)
    if (by_weight.count(a) && by_weight.count(-a))
      for (auto i : by_weight.at(a))
        for (auto j : by_weight.at(-a)) zero.insert(m->basis_bracket(i, j));
  for (const auto &z : zero.basis()) {
    red.insert(z);
    sub.basis.push_back(z);
  }
  sub.span = Subspace(m->space(), sub.basis);
  return sub;
}

SubModel subalgebra(const ModelRef &m, const std::set<int> &indices) {
  for (int i : indices)
    if (i < 1 || i > m->n()) throw DomainError("index " + std::to_string(i) + " outside 1..n");
  return subalgebra(m, restrict_to_indices(m->roots(), indices));
}

std::vector<CheckResult> verify_subalgebra(const SubModel &sub) {
  const GradedModel &m = *sub.parent;
  std::string tag;
  for (int j : sub.indices) tag += (tag.empty() ? "" : ",") + std::to_string(j);
  tag = "{" + tag + "}";
  CheckResult closure{"subsystem " + tag + ": closure", true, 0, {}, ""};
  CheckResult pair{"subsystem " + tag + ": grading (i)", true, 0, {}, ""};
  CheckResult weights{"subsystem " + tag + ": grading (ii)", true, 0, {}, ""};
  CheckResult zero{"subsystem " + tag + ": grading (iii)", true, 0, {}, ""};
  const auto &basis = sub.basis;
  const std::size_t K = basis.size();
  std::vector<CheckResult> part(K);
  parallel_for(K, [&](std::size_t p) {
    for (std::size_t q = 0; q < K; ++q)
      part[p].expect(sub.span.contains(m.bracket(basis[p], basis[q])),
                     "[" + m.str(basis[p]) + ", " + m.str(basis[q]) + "] leaves L^S");
  });
  for (const auto &p : part) merge_check(closure, p);
  closure.note = "dim L^S = " + std::to_string(K);

  // (i) 𝒢^S ⊗ 1 inside ℒ^S, root system S_sdiv
  std::set<Root> groots, sdiv;
  for (const auto &r : sub.roots)
    if (!r.is_zero() && !sub.roots.count(r * 2)) sdiv.insert(r);
  for (const auto &[w, idx] : sub.G_S.root_space_index)
    if (!w.is_zero() && !idx.empty()) groots.insert(w);
  for (const auto &x : sub.G_S.basis) pair.expect(sub.span.contains(m.unit_tensor(x)), "G^S ⊗ 1 ⊄ L^S");
  pair.expect(groots == sdiv, "roots of G^S differ from S_sdiv");
  pair.note = "dim G^S = " + std::to_string(sub.G_S.dim());

  // (ii) weights with respect to ℋ^S
  const std::vector<int> J(sub.indices.begin(), sub.indices.end());
  const auto hs = m.cartan_elements(J);
  std::vector<Root> w(K);
  std::vector<char> ok(K, 0);
  for (std::size_t p = 0; p < K; ++p) {
    auto eig = ad_eigenvalues(m, hs, basis[p]);
    std::optional<Root> r;
    if (eig) r = eps_coordinates(m.G().family, J, *eig);
    weights.expect(r.has_value(), m.str(basis[p]) + " is not an ad H^S eigenvector");
    if (!r) continue;
    weights.expect(sub.roots.count(*r) != 0, "weight " + r->str() + " outside S");
    w[p] = *r;
    ok[p] = 1;
  }
  // (iii)
  RowReducer L0(m.dim()), span(m.dim());
  std::map<Root, std::vector<std::size_t>> by_weight;
  for (std::size_t p = 0; p < K; ++p)
    if (ok[p]) by_weight[w[p]].push_back(p);
  for (auto p : by_weight[Root()]) L0.insert(basis[p]);
  for (const auto &[a, idx] : by_weight) {
    if (a.is_zero() || !by_weight.count(-a)) continue;
    for (auto p : idx)
      for (auto q : by_weight.at(-a)) span.insert(m.bracket(basis[p], basis[q]));
  }
  bool eq = span.rank() == L0.rank();
  for (const auto &v : span.basis()) eq = eq && L0.contains(v);
  zero.expect(eq, "(L^S)_0 has dim " + std::to_string(L0.rank()) + ", sum of brackets has dim " +
                      std::to_string(span.rank()));
  zero.note = "dim (L^S)_0 = " + std::to_string(L0.rank());
  return {closure, pair, weights, zero};
}

// ---------------------------------------------------------------- levels

namespace {

void check_level_subset(const GradedModel &m, const std::set<int> &lambda) {
  for (int i : m.base())
    if (!lambda.count(i)) throw DomainError("λ must contain I_0 (missing " + std::to_string(i) + ")");
  for (int i : lambda)
    if (i < 1 || i > m.n()) throw DomainError("λ index " + std::to_string(i) + " outside 1..n");
}

SparseMatrix level_matrix(const GradedModel &m, const std::set<int> &lambda) {
  // 2/tr 𝔍: 1/|λ| when 𝔍 doubles indices (B, C, BC, D), 2/|λ| for A
  const auto Jl = make_idempotent(m.space_V(), lambda);
  const SparseMatrix &J0 = m.idem0().matrix;
  return J0 * (Rational(-2) / J0.trace()) + Jl.matrix * (Rational(2) / Jl.matrix.trace());
}

}  // namespace

Coeffs level_coset_of(const GradedModel &m, const std::set<int> &lambda, const Coeffs &tensor) {
  check_level_subset(m, lambda);
  Coeffs out = m.d_element(m.d_class(tensor));
  const Coeffs bs = m.bb().beta_star_of(tensor);
  if (!bs.empty()) axpy(out, 1, m.matrix_tensor(level_matrix(m, lambda), scaled(bs, Rational(1, 2))));
  return out;
}

Coeffs level_coset(const GradedModel &m, const std::set<int> &lambda, const Coeffs &b1, const Coeffs &b2) {
  return level_coset_of(m, lambda, m.bb().tensor(b1, b2));
}

std::vector<CheckResult> verify_level_transition(const GradedModel &m, const std::set<int> &lambda,
                                                 std::size_t samples, std::uint64_t seed) {
  check_level_subset(m, lambda);
  std::string tag;
  for (int j : lambda) tag += (tag.empty() ? "" : ",") + std::to_string(j);
  tag = "level {" + tag + "}";
  CheckResult zero{tag + ": I_0 correction vanishes", true, 0, {}, ""};
  CheckResult kern{tag + ": biconditional on all of b⊗b", true, 0, {}, ""};
  CheckResult sampled{tag + ": biconditional on sampled families", true, 0, {}, ""};
  CheckResult closure{tag + ": L^lambda is a subalgebra", true, 0, {}, ""};
  const auto &B = m.coord();
  const std::size_t N = B.dim(), T = N * N;
  const auto &tl = m.bb().tensor_space()->labels();

  for (std::size_t p = 0; p < T; ++p) {
    const Coeffs e = unit_vec(p);
    zero.expect(level_coset_of(m, m.base(), e) == m.d_element(m.d_class(e)), "⟨" + tl[p] + "⟩_0");
  }

  // linear maps on 𝔟⊗𝔟: Φ_0 = class in 𝒟, Φ_λ = level coset, β*
  std::map<std::size_t, Coeffs> rows0, rows1;
  const std::size_t offset = m.dim();
  for (std::size_t p = 0; p < T; ++p) {
    const Coeffs e = unit_vec(p);
    for (const auto &[k, v] : m.d_class(e)) rows0[k].emplace(p, v);
    for (const auto &[k, v] : level_coset_of(m, lambda, e)) rows1[k].emplace(p, v);
    for (const auto &[k, v] : m.bb().beta_star_of(e)) rows1[offset + k].emplace(p, v);
  }
  auto kernel_of = [&](std::map<std::size_t, Coeffs> &rows) {
    std::vector<Coeffs> list;
    for (auto &[k, r] : rows) list.push_back(r);
    return Subspace(m.bb().tensor_space(), kernel_basis(list, T));
  };
  const Subspace ker0 = kernel_of(rows0), ker1 = kernel_of(rows1);
  kern.expect(ker0.is_subspace_of(ker1), "a family with Σ⟨β,β'⟩ = 0 but Σ⟨β,β'⟩_λ ≠ 0 or Σβ* ≠ 0");
  kern.expect(ker1.is_subspace_of(ker0), "a family with Σ⟨β,β'⟩_λ = 0, Σβ* = 0 but Σ⟨β,β'⟩ ≠ 0");
  kern.note = "dim b⊗b = " + std::to_string(T) + ", dim ker = " + std::to_string(ker0.dim());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, T - 1), size(1, 4);
  std::uniform_int_distribution<int> coef(-3, 3);
  const auto &kb = ker0.rref_basis();
  for (std::size_t s = 0; s < samples; ++s) {
    Coeffs t;
    // alternate between families in the level-0 kernel and arbitrary families
    if (s % 2 == 0 && !kb.empty()) {
      for (const auto &b : kb) axpy(t, Rational(coef(rng)), b);
      if (s % 4 == 0) add_entry(t, pick(rng), Rational(1));
    } else {
      const std::size_t k = size(rng);
      for (std::size_t q = 0; q < k; ++q) add_entry(t, pick(rng), Rational(coef(rng)));
    }
    const bool lhs = m.d_class(t).empty();
    const bool rhs = level_coset_of(m, lambda, t).empty() && m.bb().beta_star_of(t).empty();
    sampled.expect(lhs == rhs, "family #" + std::to_string(s));
  }
  sampled.note = "seed " + std::to_string(seed);

  // ℒ^λ = 𝒢^λ⊗𝒜 ⊕ 𝒮^λ⊗ℬ ⊕ 𝒱^λ⊗𝒞 ⊕ ⟨𝔟,𝔟⟩_λ is bracket-closed
  const auto &V = m.space_V();
  std::set<std::size_t> allowed;
  for (int i : lambda) {
    allowed.insert(V.pos(i));
    if (V.family != Family::A) allowed.insert(V.bar(i));
  }
  if (V.family == Family::B) allowed.insert(V.zero());
  std::vector<Coeffs> gens;
  const std::size_t nA = B.dim_A(), nB = B.dim_B(), nC = B.dim_C();
  for (const auto &g : restricted_span(m.G().basis, allowed))
    for (std::size_t a = 0; a < nA; ++a) {
      Coeffs x;
      for (const auto &[k, v] : g) x.emplace(m.block_offset(Block::G) + k * nA + a, v);
      gens.push_back(x);
    }
  if (m.has_S()) {
    std::vector<Coeffs> sl;
    if (m.family() == Family::B) {
      for (auto p : allowed) sl.push_back(unit_vec(p));
    } else {
      sl = restricted_span(m.S().mats, allowed);
    }
    for (const auto &s : sl)
      for (std::size_t b = 0; b < nB; ++b) {
        Coeffs x;
        for (const auto &[k, v] : s) x.emplace(m.block_offset(Block::S) + k * nB + b, v);
        gens.push_back(x);
      }
  }
  for (auto p : allowed)
    for (std::size_t c = 0; c < nC && m.block_dim(Block::V) > 0; ++c)
      gens.push_back(unit_vec(m.block_offset(Block::V) + p * nC + c));
  for (std::size_t p = 0; p < T; ++p) {
    Coeffs x = level_coset_of(m, lambda, unit_vec(p));
    if (!x.empty()) gens.push_back(x);
  }
  const Subspace L(m.space(), gens);
  const auto &lb = L.rref_basis();
  std::vector<CheckResult> part(lb.size());
  parallel_for(lb.size(), [&](std::size_t p) {
    for (std::size_t q = 0; q < lb.size(); ++q)
      part[p].expect(L.contains(m.bracket(lb[p], lb[q])), "basis pair (" + std::to_string(p) + ", " +
                                                              std::to_string(q) + ") of L^lambda");
  });
  for (const auto &p : part) merge_check(closure, p);
  closure.note = "dim L^lambda = " + std::to_string(L.dim());

  // the model on base λ embeds with ⟨β,β'⟩ ↦ ⟨β,β'⟩_λ
  CheckResult iso{tag + ": base-lambda model embeds as L^lambda", true, 0, {}, ""};
  const int k = static_cast<int>(lambda.size());
  if (*lambda.rbegin() != k) {
    iso.note = "skipped: lambda is not an initial segment";
  } else {
    ModelConfig cfg;
    cfg.family = m.family();
    cfg.n = m.n();
    cfg.ell = (m.family() == Family::A || m.family() == Family::D) ? k - 1 : k;
    cfg.quadruple = B.quadruple();
    cfg.k_mode = KMode::Explicit;
    cfg.K_span = m.K_span();
    cfg.override_bounds = true;
    const GradedModel ml(cfg);
    const std::size_t M = ml.dim(), off = ml.block_offset(Block::D);
    std::vector<Coeffs> phi(M);
    for (std::size_t i = 0; i < M; ++i) {
      if (i < off) {
        phi[i] = unit_vec(i);
      } else {
        const Coeffs t = ml.bb().quotient().lift(ml.D().lift(unit_vec(i - off)));
        phi[i] = level_coset_of(m, lambda, t);
      }
    }
    auto image = [&](const Coeffs &x) {
      Coeffs y;
      for (const auto &[i, v] : x) axpy(y, v, phi[i]);
      return y;
    };
    std::vector<CheckResult> ip(M);
    parallel_for(M, [&](std::size_t i) {
      for (std::size_t j = 0; j < M; ++j)
        ip[i].expect(image(ml.basis_bracket(i, j)) == m.bracket(phi[i], phi[j]),
                     "[" + ml.space()->label(i) + ", " + ml.space()->label(j) + "]");
    });
    for (const auto &p : ip) merge_check(iso, p);
    RowReducer img(m.dim());
    for (const auto &x : phi) img.insert(x);
    iso.expect(img.rank() == M, "the map is not injective");
    iso.note = "dim = " + std::to_string(M);
  }
  (void)N;
  return {zero, kern, sampled, closure, iso};
}

CheckResult verify_truncation(const GradedModel &small, const GradedModel &large) {
  CheckResult r{"truncation n=" + std::to_string(small.n()) + " in n'=" + std::to_string(large.n()), true, 0, {},
                ""};
  if (small.family() != large.family() || small.ell() != large.ell() || small.n() > large.n() ||
      small.coord().dim() != large.coord().dim() || small.D().dim() != large.D().dim())
    throw DomainError("truncation check needs models of the same family, level and coordinates with n <= n'");
  // 𝒱 embeds by basis label; matrices and tensors follow
  const auto &Vs = small.space_V(), &Vl = large.space_V();
  std::vector<std::size_t> vmap(Vs.space->dim());
  for (std::size_t i = 0; i < vmap.size(); ++i) vmap[i] = Vl.space->index_of(Vs.space->label(i));
  auto embed_vec = [&](const Coeffs &u) {
    Coeffs w;
    for (const auto &[i, v] : u) w.emplace(vmap[i], v);
    return w;
  };
  auto embed_mat = [&](const SparseMatrix &X) {
    SparseMatrix Y(Vl.space);
    for (const auto &[row, cols] : X.rows())
      for (const auto &[c, v] : cols) Y.set(vmap[row], vmap[c], v);
    return Y;
  };
  const auto &B = small.coord();
  const std::size_t nA = B.dim_A(), nB = B.dim_B(), nC = B.dim_C();
  const std::size_t M = small.dim();
  std::vector<Coeffs> phi(M);
  for (std::size_t i = 0; i < M; ++i) {
    const std::size_t o = i - small.block_offset(small.block_of(i));
    switch (small.block_of(i)) {
    case Block::G: phi[i] = large.matrix_tensor(embed_mat(small.G().basis[o / nA]), unit_vec(o % nA)); break;
    case Block::S:
      if (small.family() == Family::B)
        phi[i] = large.vector_tensor(embed_vec(unit_vec(o / nB)), unit_vec(nA + o % nB), Block::S);
      else
        phi[i] = large.matrix_tensor(embed_mat(small.S().mats[o / nB]), unit_vec(nA + o % nB));
      break;
    case Block::V: phi[i] = large.vector_tensor(embed_vec(unit_vec(o / nC)), unit_vec(nA + nB + o % nC)); break;
    case Block::D: phi[i] = large.d_element(unit_vec(o)); break;
    }
  }
  auto image = [&](const Coeffs &x) {
    Coeffs y;
    for (const auto &[i, v] : x) axpy(y, v, phi[i]);
    return y;
  };
  std::vector<CheckResult> part(M);
  parallel_for(M, [&](std::size_t i) {
    for (std::size_t j = 0; j < M; ++j)
      part[i].expect(image(small.basis_bracket(i, j)) == large.bracket(phi[i], phi[j]),
                     "[" + small.space()->label(i) + ", " + small.space()->label(j) + "]");
  });
  for (const auto &p : part) merge_check(r, p);
  RowReducer img(large.dim());
  for (const auto &x : phi) img.insert(x);
  r.expect(img.rank() == M, "the embedding is not injective");
  r.note = "dim " + std::to_string(M) + " in dim " + std::to_string(large.dim());
  return r;
}

}  // namespace rglie
