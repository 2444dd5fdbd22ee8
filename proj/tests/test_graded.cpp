#include "rglie/graded.hpp"
#include "rglie/presets.hpp"

#include <doctest.h>

using namespace rglie;

namespace {

Coeffs u(std::size_t i, long v = 1) { return Coeffs{{i, Rational(v)}}; }

void require_pass(const CheckResult &r) {
  INFO(r.name << ": " << (r.witnesses.empty() ? std::string() : r.witnesses.front()));
  CHECK(r.passed);
  CHECK(r.evaluated > 0);
}

ModelRef symplectic(int n) { return build_model(Family::BC, n, 4, "symplectic:m=2"); }

}  // namespace

TEST_CASE("build: dimensions and errors") {
  auto m = symplectic(5);
  CHECK(m->G().dim() == 55);
  CHECK(m->block_dim(Block::V) == 20);
  CHECK(m->block_dim(Block::G) == 55);  // 𝒜 = 𝔽
  CHECK(m->block_dim(Block::S) == 0);   // ℬ = 0
  CHECK(m->base() == std::set<int>{1, 2, 3, 4});
  CHECK_FALSE(m->sub_bound());

  CHECK_THROWS_AS(build_model(Family::A, 6, 5, "symplectic:m=2"), DomainError);
  CHECK_THROWS_AS(build_model(Family::BC, 5, 3, "symplectic:m=2"), DomainError);
  auto low = build_model(Family::BC, 4, 3, "symplectic:m=2", KMode::Zero, true);
  CHECK(low->sub_bound());
  CHECK_THROWS_AS(build_model(Family::BC, 3, 4, "symplectic:m=2"), DomainError);  // |I_0| > n
  CHECK_THROWS_AS(build_model(Family::A, 6, 4, "matrix:k=2"), DomainError);      // ℓ+1 = 5 is not > 5

  // type D: the 𝒟-part is abelian and acts trivially
  auto d = build_model(Family::D, 7, 5, "group_ring:m=3");
  const std::size_t off = d->block_offset(Block::D);
  for (std::size_t i = off; i < d->dim(); ++i)
    for (std::size_t j = 0; j < d->dim(); ++j) CHECK(d->basis_bracket(i, j).empty());
}

TEST_CASE("bracket examples") {
  auto m = symplectic(4);
  const auto &G = m->G();
  // [x⊗1, y⊗1] = [x,y]⊗1
  for (std::size_t x = 0; x < G.dim(); x += 5)
    for (std::size_t y = 0; y < G.dim(); y += 3)
      CHECK(m->bracket(m->unit_tensor(G.basis[x]), m->unit_tensor(G.basis[y])) ==
            m->unit_tensor(commutator(G.basis[x], G.basis[y])));
  // symplectic preset, (u,v) = 0: [u⊗c, v⊗c'] = (u∘v)⊗f(c,c')
  const auto &V = m->space_V();
  const auto &B = m->coord();
  const std::size_t c0 = B.dim_A() + B.dim_B();
  const Coeffs uu = u(V.pos(1)), vv = u(V.pos(2));
  REQUIRE(V.form(uu, vv) == 0);
  const Coeffs c = u(c0), c2 = u(c0 + 1);
  const Coeffs lhs = m->bracket(m->vector_tensor(uu, c), m->vector_tensor(vv, c2));
  const SparseMatrix circ = v_ops(uu, vv, V, m->idem0(), VOpVariant::Circ);
  CHECK(lhs == m->matrix_tensor(circ, B.f(c, c2)));
  CHECK_FALSE(lhs.empty());
  // ◊ = f and ♥ = 0 on this preset
  CHECK(B.diamond(c, c2) == B.f(c, c2));
  CHECK(B.heart(c, c2).empty());
  // an 𝒜 coefficient on 𝒱 is rejected
  CHECK_THROWS_AS(m->vector_tensor(uu, B.unit()), InternalError);

  // type D: [⟨a1,a2⟩, x⊗a] = 0
  auto d = build_model(Family::D, 7, 5, "group_ring:m=3");
  const Coeffs pr = d->pair(u(1), u(2));
  for (std::size_t x = 0; x < d->G().dim(); x += 7) CHECK(d->bracket(pr, d->matrix_tensor(d->G().basis[x], u(1))).empty());
}

TEST_CASE("parts and join round trip") {
  auto m = build_model(Family::BC, 5, 4, "matrix_hermitian:k=2,m=2");
  Coeffs x;
  for (Block b : {Block::G, Block::S, Block::V, Block::D}) {
    REQUIRE(m->block_dim(b) > 0);
    add_entry(x, m->block_offset(b) + m->block_dim(b) - 1, Rational(3));
  }
  const auto p = m->parts(x);
  CHECK(p.g_part.size() == 1);
  CHECK(p.s_part.size() == 1);
  CHECK(p.v_part.size() == 1);
  CHECK(p.d_part.size() == 1);
  CHECK(m->join(p) == x);
}

TEST_CASE("Lie laws") {
  SUBCASE("exhaustive Jacobi on BC n=4, symplectic(2)") {
    auto m = symplectic(4);
    require_pass(verify_antisymmetry(*m));
    JacobiStrategy st;
    st.exhaustive = true;
    auto r = verify_jacobi(*m, st);
    require_pass(r);
    const std::size_t N = m->dim();
    CHECK(r.evaluated == N * (N - 1) * (N - 2) / 6);
  }
  SUBCASE("random Jacobi on A, matrix(2)") {
    auto m = build_model(Family::A, 6, 5, "matrix:k=2");
    JacobiStrategy st;
    st.samples = 500;
    st.seed = 42;
    auto r = verify_jacobi(*m, st);
    require_pass(r);
    CHECK(r.evaluated == 500);
    CHECK(verify_jacobi(*m, st).note == r.note);
  }
  SUBCASE("exhaustive Jacobi on B, clifford(2)") {
    auto m = build_model(Family::B, 6, 5, "clifford:d=2");
    JacobiStrategy st;
    st.exhaustive = true;
    require_pass(verify_jacobi(*m, st));
  }
  SUBCASE("K = FH(b)") {
    auto m = build_model(Family::BC, 4, 4, "symplectic:m=2", KMode::FullHomology);
    JacobiStrategy st;
    st.samples = 200;
    st.seed = 7;
    require_pass(verify_jacobi(*m, st));
  }
}

TEST_CASE("grading") {
  SUBCASE("BC symplectic: extra-long root spaces are 𝒢_α⊗𝒜") {
    auto m = symplectic(5);
    auto g = verify_grading(*m);
    for (const auto &c : g.checks()) require_pass(c);
    const auto &B = m->coord();
    CHECK(g.weight_dims.at(Root::eps(1, 2)) == B.dim_A());
    CHECK(g.weight_dims.at(Root::eps(1)) == B.dim_C() * 1);
  }
  SUBCASE("type D group_ring(3): L_0 = sum of [L_a, L_-a]") {
    auto g = verify_grading(*build_model(Family::D, 7, 5, "group_ring:m=3"));
    require_pass(g.zero_part);
    CHECK(g.passed());
  }
  SUBCASE("trivial type C quadruple: L is G with its root decomposition") {
    CoordinateQuadruple q;
    q.type = Family::C;
    q.a_dim = 1;
    q.mult = {{u(0)}};
    q.unit = u(0);
    q.normalize();
    ModelConfig cfg;
    cfg.family = Family::C;
    cfg.n = 5;
    cfg.ell = 5;
    cfg.quadruple = q;
    auto m = build_model(cfg);
    CHECK(m->dim() == m->G().dim());
    auto g = verify_grading(*m);
    CHECK(g.passed());
    for (const auto &[w, d] : g.weight_dims) CHECK(d == (w.is_zero() ? 5u : 1u));
  }
}

TEST_CASE("subsystem subalgebras") {
  SUBCASE("BC_5 model, S on {1..4}") {
    auto m = symplectic(5);
    auto sub = subalgebra(m, std::set<int>{1, 2, 3, 4});
    CHECK(sub.dim() == symplectic(4)->dim());
    for (const auto &c : verify_subalgebra(sub)) require_pass(c);
  }
  SUBCASE("A model, S on 3 of 6 indices") {
    auto m = build_model(Family::A, 6, 5, "matrix:k=2");
    auto sub = subalgebra(m, std::set<int>{2, 4, 5});
    CHECK(sub.G_S.dim() == 8);
    for (const auto &x : sub.G_S.basis)
      for (std::size_t a = 0; a < m->coord().dim_A(); ++a) CHECK(sub.span.contains(m->matrix_tensor(x, u(a))));
    for (const auto &c : verify_subalgebra(sub)) require_pass(c);
  }
  SUBCASE("full system gives L") {
    auto m = symplectic(4);
    CHECK(subalgebra(m, std::set<int>{1, 2, 3, 4}).dim() == m->dim());
  }
  SUBCASE("errors") {
    auto m = symplectic(5);
    std::set<Root> notfull{Root(), Root::eps(1) - Root::eps(2), Root::eps(2) - Root::eps(1)};
    CHECK_THROWS_AS(subalgebra(m, notfull), DomainError);
    auto d = build_model(Family::D, 7, 5, "group_ring:m=3");
    CHECK_THROWS_AS(subalgebra(d, std::set<int>{1, 2}), DomainError);  // D_2 is reducible
    CHECK_THROWS_AS(subalgebra(m, std::set<int>{0, 1}), DomainError);
  }
}

TEST_CASE("level cosets") {
  auto m = build_model(Family::BC, 5, 4, "matrix_hermitian:k=2,m=2");
  const auto &B = m->coord();
  // λ = I_0: no correction
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j) CHECK(level_coset(*m, m->base(), u(i), u(j)) == m->pair(u(i), u(j)));
  // an 𝒜 pair with [a,a'] ≠ 0: correction ((−1/4)𝔍_0 + (1/5)𝔍_λ) ⊗ ½[a,a']
  std::optional<std::pair<std::size_t, std::size_t>> pr;
  for (std::size_t i = 0; i < B.dim_A() && !pr; ++i)
    for (std::size_t j = 0; j < B.dim_A() && !pr; ++j)
      if (!B.brk(u(i), u(j)).empty()) pr = {i, j};
  REQUIRE(pr);
  const std::set<int> lam{1, 2, 3, 4, 5};
  const Coeffs a = u(pr->first), a2 = u(pr->second);
  const SparseMatrix corr = m->idem0().matrix * Rational(-1, 4) +
                            make_idempotent(m->space_V(), lam).matrix * Rational(1, 5);
  Coeffs expect = m->matrix_tensor(corr, scaled(B.brk(a, a2), Rational(1, 2)));
  axpy(expect, 1, m->pair(a, a2));
  CHECK(level_coset(*m, lam, a, a2) == expect);
  CHECK_THROWS_AS(level_coset(*m, {1, 2, 3}, a, a2), DomainError);
  CHECK_THROWS_AS(level_coset(*m, {1, 2, 3, 4, 9}, a, a2), DomainError);

  // type D: no correction at any level
  auto d = build_model(Family::D, 7, 5, "group_ring:m=3");
  CHECK(level_coset(*d, {1, 2, 3, 4, 5, 6, 7}, u(1), u(2)) == d->pair(u(1), u(2)));
}

TEST_CASE("level transition") {
  SUBCASE("BC, one and two extra indices") {
    auto m = build_model(Family::BC, 6, 4, "symplectic:m=2");
    for (const std::set<int> lam : {std::set<int>{1, 2, 3, 4, 5}, std::set<int>{1, 2, 3, 4, 5, 6}})
      for (const auto &c : verify_level_transition(*m, lam, 100, 42)) require_pass(c);
  }
  SUBCASE("A, one extra index") {
    auto m = build_model(Family::A, 7, 5, "matrix:k=2");
    for (const auto &c : verify_level_transition(*m, {1, 2, 3, 4, 5, 6, 7}, 100, 42)) require_pass(c);
  }
  SUBCASE("non-initial subset skips only the embedding check") {
    auto m = build_model(Family::BC, 6, 4, "symplectic:m=2");
    auto res = verify_level_transition(*m, {1, 2, 3, 4, 6}, 50, 1);
    REQUIRE(res.size() == 5);
    for (std::size_t k = 0; k < 4; ++k) require_pass(res[k]);
    CHECK(res[4].evaluated == 0);
  }
}

TEST_CASE("truncation coherence") {
  require_pass(verify_truncation(*symplectic(4), *symplectic(5)));
  require_pass(verify_truncation(*build_model(Family::C, 5, 5, "matrix_transpose:k=2"),
                                 *build_model(Family::C, 6, 5, "matrix_transpose:k=2")));
  require_pass(verify_truncation(*build_model(Family::B, 5, 5, "clifford:d=2"),
                                 *build_model(Family::B, 6, 5, "clifford:d=2")));
  CHECK_THROWS_AS(verify_truncation(*symplectic(5), *symplectic(4)), DomainError);
}
