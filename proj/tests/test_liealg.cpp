#include "rglie/liealg.hpp"

#include <doctest.h>

using namespace rglie;

namespace {

const Family kMatrixFamilies[] = {Family::A, Family::B, Family::C, Family::D};

std::string v(int i) { return "v:" + std::to_string(i); }
std::string vb(int i) { return "vb:" + std::to_string(i); }

SparseMatrix E(const MatrixLieAlgebra &g, const std::string &j, const std::string &k) {
  return matrix_unit(j, k, g.ambient.space);
}

// the span of one matrix, as a subspace of the flattened gl used by derived_root_space
bool spans_line(const Subspace &sub, const SparseMatrix &x) { return sub.dim() == 1 && sub.contains(x.flatten()); }

std::size_t expected_dim(Family f, int n) {
  switch (f) {
  case Family::A: return n * n - 1;
  case Family::B:
  case Family::C: return 2 * n * n + n;
  case Family::D: return 2 * n * n - n;
  default: return 0;
  }
}

// (φv, w) + (v, φw) over all basis pairs
bool form_skew(const FormedSpace &V, const SparseMatrix &phi, int sign) {
  const std::size_t d = V.space->dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Coeffs ea{{a, Rational(1)}}, eb{{b, Rational(1)}};
      if (V.form(phi.apply(ea), eb) + sign * V.form(ea, phi.apply(eb)) != 0) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("matrix units") {
  auto s = make_space({v(1), v(2)});
  Coeffs v1{{0, Rational(1)}}, v2{{1, Rational(1)}};
  CHECK(matrix_unit(v(1), v(1), s).apply(v1) == v1);
  CHECK(matrix_unit(v(1), v(2), s).apply(v2) == v1);
  CHECK(matrix_unit(v(1), v(2), s).apply(v1).empty());
  CHECK(commutator(matrix_unit(v(1), v(2), s), matrix_unit(v(2), v(1), s)) ==
        matrix_unit(v(1), v(1), s) - matrix_unit(v(2), v(2), s));
  CHECK_THROWS_AS(matrix_unit(v(1), v(3), s), ShapeError);
}

TEST_CASE("forms") {
  auto B = make_formed_space(Family::B, 2);
  CHECK(B.gram.at(B.pos(1), B.bar(1)) == 2);
  CHECK(B.gram.at(B.bar(1), B.pos(1)) == 2);
  CHECK(B.gram.at(B.zero(), B.zero()) == 2);
  auto C = make_formed_space(Family::C, 2);
  CHECK(C.gram.at(C.pos(2), C.bar(2)) == 2);
  CHECK(C.gram.at(C.bar(2), C.pos(2)) == -2);
  CHECK(C.gram.transpose() == -C.gram);
  auto D = make_formed_space(Family::D, 3);
  CHECK(D.gram.transpose() == D.gram);
  CHECK(D.space->dim() == 6);
  CHECK(rank(D.gram) == 6);
  CHECK(rank(B.gram) == 5);
}

TEST_CASE("algebra examples") {
  auto a3 = build_algebra(Family::A, 3);
  CHECK(a3.dim() == 8);
  CHECK(spans_line(derived_root_space(a3, Root::eps(1) - Root::eps(2)), E(a3, v(1), v(2))));
  auto c2 = build_algebra(Family::C, 2);
  CHECK(c2.dim() == 10);
  CHECK(spans_line(derived_root_space(c2, Root::eps(1, 2)), E(c2, v(1), vb(1))));
  auto b2 = build_algebra(Family::B, 2);
  CHECK(b2.dim() == 10);
  CHECK(spans_line(derived_root_space(b2, Root::eps(1)), E(b2, v(1), "v:0") - E(b2, "v:0", vb(1))));
  CHECK_THROWS_AS(build_algebra(Family::A, 1), DegenerateInput);
  CHECK_THROWS_AS(build_algebra(Family::D, 1), DegenerateInput);
  CHECK(build_algebra(Family::B, 1).dim() == 3);
}

TEST_CASE("defining conditions, closure, dimensions and root spaces for n = 2..6") {
  for (Family f : kMatrixFamilies)
    for (int n = 2; n <= 6; ++n) {
      CAPTURE(family_name(f));
      CAPTURE(n);
      auto g = build_algebra(f, n);
      CHECK(g.dim() == expected_dim(f, n));
      CHECK(g.cartan.size() == static_cast<std::size_t>(f == Family::A ? n - 1 : n));
      for (const auto &x : g.basis) {
        if (f == Family::A)
          CHECK(x.trace() == 0);
        else
          CHECK(form_skew(g.ambient, x, 1));
      }
      if (n <= 4)
        for (std::size_t i = 0; i < g.dim(); ++i)
          for (std::size_t j = i + 1; j < g.dim(); ++j) CHECK(g.contains(commutator(g.basis[i], g.basis[j])));
      auto R = generate(f, n);
      for (const auto &alpha : R.nonzero()) {
        REQUIRE(g.root_space_index.count(alpha));
        CHECK(g.root_space_index.at(alpha).size() == 1);
        const auto &x = g.basis[g.root_space_index.at(alpha)[0]];
        for (const auto &h : g.cartan) {
          auto hx = commutator(h, x);
          // α(h) read off from h's diagonal: h v_i = h_ii v_i, h v_ī = h_īī v_ī
          Rational ah = 0;
          for (const auto &[i, c] : alpha.coords()) ah += c * h.at(g.ambient.pos(i), g.ambient.pos(i));
          CHECK(hx == x * ah);
        }
      }
      CHECK(g.root_space_index.size() == R.roots.size());
    }
}

TEST_CASE("printed root-vector formulas agree with the eigen-equation") {
  for (int n = 2; n <= 4; ++n) {
    auto a = build_algebra(Family::A, n);
    auto b = build_algebra(Family::B, n);
    auto c = build_algebra(Family::C, n);
    auto d = build_algebra(Family::D, n);
    for (int i = 1; i <= n; ++i) {
      const Root ei = Root::eps(i);
      CHECK(spans_line(derived_root_space(b, ei), E(b, v(i), "v:0") - E(b, "v:0", vb(i))));
      CHECK(spans_line(derived_root_space(b, -ei), E(b, vb(i), "v:0") - E(b, "v:0", v(i))));
      CHECK(spans_line(derived_root_space(c, ei * 2), E(c, v(i), vb(i))));
      CHECK(spans_line(derived_root_space(c, ei * -2), E(c, vb(i), v(i))));
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const Root ej = Root::eps(j);
        CHECK(spans_line(derived_root_space(a, ei - ej), E(a, v(i), v(j))));
        for (const auto *g : {&b, &d}) {
          CHECK(spans_line(derived_root_space(*g, ei - ej), E(*g, v(i), v(j)) - E(*g, vb(j), vb(i))));
          CHECK(spans_line(derived_root_space(*g, ei + ej), E(*g, v(i), vb(j)) - E(*g, v(j), vb(i))));
          CHECK(spans_line(derived_root_space(*g, -ei - ej), E(*g, vb(i), v(j)) - E(*g, vb(j), v(i))));
          // the literal subscripts e_{i,j̄} − e_{j̄,ī} do not give a root vector
          CHECK_FALSE(derived_root_space(*g, ei + ej).contains((E(*g, v(i), vb(j)) - E(*g, vb(j), vb(i))).flatten()));
        }
        CHECK(spans_line(derived_root_space(c, ei - ej), E(c, v(i), v(j)) - E(c, vb(j), vb(i))));
        CHECK(spans_line(derived_root_space(c, ei + ej), E(c, v(i), vb(j)) + E(c, v(j), vb(i))));
        CHECK(spans_line(derived_root_space(c, -ei - ej), E(c, vb(i), v(j)) + E(c, vb(j), v(i))));
      }
    }
  }
}

TEST_CASE("truncations embed label-compatibly") {
  for (Family f : kMatrixFamilies)
    for (int n = 2; n <= 4; ++n) {
      auto small = build_algebra(f, n), big = build_algebra(f, n + 1);
      for (const auto &[alpha, pos] : small.root_space_index) {
        if (alpha.is_zero()) continue;
        // transport by labels
        const auto &x = small.basis[pos[0]];
        SparseMatrix y(big.ambient.space);
        for (const auto &[r, row] : x.rows())
          for (const auto &[c, val] : row)
            y.set(big.ambient.space->index_of(small.ambient.space->label(r)),
                  big.ambient.space->index_of(small.ambient.space->label(c)), val);
        CHECK(y == big.basis[big.root_space_index.at(alpha)[0]]);
      }
    }
}

TEST_CASE("natural and S modules") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    auto c = build_algebra(Family::C, n);
    auto b = build_algebra(Family::B, n);
    auto S = build_module(c, ModuleKind::Symmetric);
    CHECK(S.dim() == static_cast<std::size_t>(2 * n * n - n - 1));
    for (const auto &m : S.mats) {
      CHECK(m.trace() == 0);
      CHECK(form_skew(S.ambient, m, -1));
    }
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const Root w = Root::eps(i) + Root::eps(j);
        REQUIRE(S.weight_index.count(w));
        REQUIRE(S.weight_index.at(w).size() == 1);
        auto x = S.mats[S.weight_index.at(w)[0]];
        auto expect = E(c, v(i), vb(j)) - E(c, v(j), vb(i));
        RowReducer red(4 * n * n);
        red.insert(x.flatten());
        CHECK_FALSE(red.insert(expect.flatten()));
      }
    std::set<Root> s_weights{Root()};
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) s_weights.insert(Root::eps(i, s1) + Root::eps(j, s2));
    std::set<Root> got;
    for (const auto &[w, pos] : S.weight_index) got.insert(w);
    CHECK(got == s_weights);
    CHECK(S.weight_index.at(Root()).size() == static_cast<std::size_t>(n - 1));

    for (const auto *g : {&b, &c}) {
      auto V = build_module(*g, ModuleKind::Natural);
      for (int i = 1; i <= n; ++i) {
        CHECK(V.weight_index.at(Root::eps(i)) == std::vector<std::size_t>{g->ambient.pos(i)});
        CHECK(V.weight_index.at(Root::eps(i, -1)) == std::vector<std::size_t>{g->ambient.bar(i)});
      }
      CHECK(V.weight_index.size() == static_cast<std::size_t>(2 * n + (g == &b ? 1 : 0)));
    }
    CHECK(build_module(b, ModuleKind::Natural).weight_index.at(Root()) ==
          std::vector<std::size_t>{b.ambient.zero()});
  }
  CHECK_THROWS_AS(build_module(build_algebra(Family::B, 2), ModuleKind::Symmetric), DomainError);
}

TEST_CASE("module axiom on basis triples") {
  for (int n = 2; n <= 3; ++n) {
    auto c = build_algebra(Family::C, n);
    auto b = build_algebra(Family::B, n);
    std::vector<std::pair<const MatrixLieAlgebra *, RepModule>> mods;
    mods.emplace_back(&c, build_module(c, ModuleKind::Symmetric));
    mods.emplace_back(&c, build_module(c, ModuleKind::Natural));
    mods.emplace_back(&b, build_module(b, ModuleKind::Natural));
    for (const auto &[g, M] : mods)
      for (std::size_t i = 0; i < g->dim(); ++i)
        for (std::size_t j = 0; j < g->dim(); ++j) {
          const auto &x = g->basis[i], &y = g->basis[j];
          auto xy = commutator(x, y);
          for (std::size_t k = 0; k < M.dim(); ++k) {
            Coeffs e{{k, Rational(1)}};
            CHECK(M.act(xy, e) == sub(M.act(x, M.act(y, e)), M.act(y, M.act(x, e))));
          }
        }
  }
}

TEST_CASE("weight decompositions") {
  auto a3 = build_algebra(Family::A, 3);
  auto ad = build_module(a3, ModuleKind::Adjoint);
  auto ws = weight_decompose(ad, a3);
  std::set<Root> got;
  std::size_t total = 0;
  for (const auto &w : ws) {
    got.insert(w.weight);
    total += w.space.dim();
    if (!w.weight.is_zero()) CHECK(w.space.dim() == 1);
  }
  CHECK(got == generate(Family::A, 3).roots);
  CHECK(total == 8);
  auto triv = weight_decompose(build_module(a3, ModuleKind::Trivial), a3);
  REQUIRE(triv.size() == 1);
  CHECK(triv[0].weight.is_zero());
  auto sp2 = build_algebra(Family::C, 2);
  auto nat = weight_decompose(build_module(sp2, ModuleKind::Natural), sp2);
  CHECK(nat.size() == 4);
  for (const auto &w : nat) CHECK(w.space.dim() == 1);
  // a non-diagonalizable operator is rejected
  std::vector<std::vector<Coeffs>> nilp{{Coeffs{}, Coeffs{{0, Rational(1)}}}};
  CHECK_THROWS_AS(simultaneous_eigenspaces(2, nilp), DecompositionFailure);
}

TEST_CASE("subsystem subalgebras") {
  auto sp4 = build_algebra(Family::C, 4);
  CHECK(subalgebra_from_subsystem(sp4, generate(Family::C, 4).roots).dim() == sp4.dim());
  auto sub = subalgebra_from_subsystem(sp4, restrict_to_indices(generate(Family::C, 4), {1, 2}));
  CHECK(sub.dim() == 10);
  for (const auto &x : sub.basis)
    for (const auto &y : sub.basis) CHECK(sub.contains(commutator(x, y)));
  auto sl4 = build_algebra(Family::A, 4);
  CHECK(subalgebra_from_subsystem(sl4, restrict_to_indices(generate(Family::A, 4), {1, 2})).dim() == 3);
  CHECK(subalgebra_from_subsystem(sp4, restrict_to_indices(generate(Family::C, 4), {2, 3, 4})).dim() == 21);
  CHECK_THROWS_AS(subalgebra_from_subsystem(sp4, generate(Family::BC, 4).roots), DomainError);
  std::set<Root> bad{Root(), Root::eps(1) - Root::eps(2)};
  CHECK_THROWS_AS(subalgebra_from_subsystem(sl4, bad), DomainError);
}

TEST_CASE("Clifford Jordan algebras") {
  auto V = make_formed_space(Family::B, 2);
  auto J = clifford_of_form(V);
  const std::size_t D = J.dim();
  // commutative, unital
  for (std::size_t i = 0; i < D; ++i) {
    Coeffs ei{{i, Rational(1)}};
    CHECK(jordan_product(J, J.unit, ei) == ei);
    for (std::size_t k = 0; k < D; ++k) CHECK(jordan_product(J, ei, Coeffs{{k, 1}}) == jordan_product(J, Coeffs{{k, 1}}, ei));
  }
  Coeffs w1{{1 + V.pos(1), Rational(1)}}, w2{{1 + V.bar(1), Rational(1)}};
  CHECK(jordan_product(J, w1, w2) == Coeffs{{0, Rational(2)}});
  CHECK(jordan_product(J, add(J.unit, w1), add(J.unit, w2)) == add(add(Coeffs{{0, Rational(3)}}, w1), w2));
  // derivations
  for (std::size_t a = 0; a < D; ++a) {
    Coeffs ea{{a, Rational(1)}};
    CHECK(jordan_derivation(J, J.unit, ea).is_zero());
    CHECK(jordan_derivation(J, ea, ea).is_zero());
    for (std::size_t b = 0; b < D; ++b) {
      auto Dab = jordan_derivation(J, ea, Coeffs{{b, 1}});
      for (std::size_t x = 0; x < D; ++x)
        for (std::size_t y = 0; y < D; ++y) {
          Coeffs ex{{x, 1}}, ey{{y, 1}};
          CHECK(Dab.apply(jordan_product(J, ex, ey)) ==
                add(jordan_product(J, Dab.apply(ex), ey), jordan_product(J, ex, Dab.apply(ey))));
        }
    }
  }
  // 𝔽 ⊕ 𝔽² with the identity form: D_{w1,w2} w = L_{w2}(g(w1,w)) − L_{w1}(g(w2,w)) = g(w1,w)w2 − g(w2,w)w1
  std::vector<std::vector<Coeffs>> a_mult{{Coeffs{{0, 1}}}};
  std::vector<std::vector<Coeffs>> act{{Coeffs{{0, 1}}, Coeffs{{1, 1}}}};
  std::vector<std::vector<Coeffs>> g{{Coeffs{{0, 1}}, Coeffs{}}, {Coeffs{}, Coeffs{{0, 1}}}};
  auto J2 = make_clifford_jordan(a_mult, Coeffs{{0, 1}}, act, g);
  auto Dw = jordan_derivation(J2, Coeffs{{1, 1}}, Coeffs{{2, 1}});
  CHECK(Dw.apply(Coeffs{{1, 1}}) == Coeffs{{2, Rational(1)}});
  CHECK(Dw.apply(Coeffs{{2, 1}}) == Coeffs{{1, Rational(-1)}});
  CHECK(Dw.apply(Coeffs{{0, 1}}).empty());
}

TEST_CASE("o_B is spanned by Jordan derivations") {
  std::size_t dims[] = {3, 10, 21};
  for (int n = 1; n <= 3; ++n) {
    auto r = derivation_span_equals_oB(n);
    CHECK(r.equal);
    CHECK(r.span_dim == dims[n - 1]);
    CHECK(r.algebra_dim == dims[n - 1]);
  }
}

TEST_CASE("truncation idempotents and ∘") {
  auto g = build_algebra(Family::C, 3);
  auto J = make_idempotent(g.ambient, {1, 2});
  CHECK(J.matrix * J.matrix == J.matrix);
  CHECK(J.rank() == 4);
  auto x = E(g, v(1), vb(1));
  CHECK(circ_trunc(x, x, J, Family::C).is_zero());
  for (const auto &a : g.basis)
    for (const auto &b : g.basis) {
      auto ab = circ_trunc(a, b, J, Family::BC);
      CHECK(ab == circ_trunc(b, a, J, Family::BC));
      CHECK(ab.trace() == 0);
      if ((a * b).trace() == 0) CHECK(ab == a * b + b * a);
    }
  CHECK_THROWS_AS(circ_trunc(x, x, J, Family::D), DomainError);
}

TEST_CASE("operators on V") {
  auto g = build_algebra(Family::C, 2);
  const auto &V = g.ambient;
  auto J = make_idempotent(V, {1});
  const Rational ell = 1;
  Coeffs u{{V.pos(1), 1}}, w{{V.bar(1), 1}}, v1 = u;
  // ½((w,v1)u + (v1,u)w) + (1/2ℓ)(u,w)𝔍 v1 with (v1̄, v1) = −2, (v1, v1) = 0, (u,w) = 2
  auto m = v_ops(u, w, V, J, VOpVariant::BracketL);
  CHECK(m.apply(v1) == scaled(v1, Rational(-1) + 1 / ell));
  Coeffs u2{{V.pos(2), 1}};
  CHECK(v_ops(u, u2, V, J, VOpVariant::BracketL) == v_ops(u, u2, V, J, VOpVariant::BracketN));
  auto S = build_module(g, ModuleKind::Symmetric);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      Coeffs ea{{a, 1}}, eb{{b, 1}};
      auto circ = v_ops(ea, eb, V, J, VOpVariant::Circ);
      CHECK(g.contains(circ));
      CHECK(circ == v_ops(eb, ea, V, J, VOpVariant::Circ));
      // bracket_n lands in S
      CHECK(S.coordinatizer.contains(v_ops(ea, eb, V, J, VOpVariant::BracketN).flatten()));
      if (a == b)
        for (std::size_t c = 0; c < 4; ++c) {
          Coeffs ec{{c, 1}};
          CHECK(circ.apply(ec) == scaled(ea, V.form(ea, ec)));
        }
    }
}
