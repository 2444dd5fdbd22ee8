#include "rglie/exactla.hpp"

#include <doctest.h>

#include <random>

using namespace rglie;

namespace {

SpaceRef qn(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("x" + std::to_string(i));
  return make_space(l);
}

SparseVector vec(const SpaceRef &s, std::vector<long> xs) {
  Coeffs c;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i]) c.emplace(i, Rational(xs[i]));
  return SparseVector(s, c);
}

Rational random_rat(std::mt19937 &rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  return rat(num(rng), den(rng));
}

SparseMatrix random_matrix(const SpaceRef &s, std::mt19937 &rng, int density = 3) {
  SparseMatrix m(s);
  std::uniform_int_distribution<int> coin(0, density);
  for (std::size_t r = 0; r < s->dim(); ++r)
    for (std::size_t c = 0; c < s->dim(); ++c)
      if (coin(rng) == 0) m.set(r, c, random_rat(rng));
  return m;
}

}  // namespace

TEST_CASE("rationals are canonical and serialize as p/q") {
  CHECK(to_string(rat(6, -4)) == "-3/2");
  CHECK(to_string(rat(8, 4)) == "2");
  CHECK(parse_rational("10/-4") == rat(-5, 2));
  CHECK(parse_rational("7") == rat(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  mpz_class big("123456789012345678901234567890");
  Rational q(big, 3);
  q.canonicalize();
  CHECK(to_string(q * 3) == "123456789012345678901234567890");
}

TEST_CASE("field axioms hold on random rationals") {
  std::mt19937 rng(7);
  for (int t = 0; t < 500; ++t) {
    Rational a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (sgn(a) != 0) CHECK(a * (1 / a) == 1);
  }
}

TEST_CASE("rref") {
  auto s2 = qn(2), s3 = qn(3);
  CHECK(rref(std::vector<SparseVector>{}).dim() == 0);
  CHECK(rref({vec(s2, {1, 0}), vec(s2, {0, 1}), vec(s2, {1, 1})}).dim() == 2);
  // r3 = r1 + r2: hand reduction gives [1 0 -1], [0 1 2]
  auto sub = rref({vec(s3, {1, 2, 3}), vec(s3, {4, 5, 6}), vec(s3, {5, 7, 9})});
  REQUIRE(sub.dim() == 2);
  CHECK(sub.rref_basis()[0] == vec(s3, {1, 0, -1}).entries());
  CHECK(sub.rref_basis()[1] == vec(s3, {0, 1, 2}).entries());
  CHECK(sub.contains(vec(s3, {1, 1, 1})));
  CHECK_FALSE(sub.contains(vec(s3, {0, 0, 1})));
  CHECK_THROWS_AS(rref({vec(s2, {1, 0}), vec(s3, {1, 0, 0})}), ShapeError);
}

TEST_CASE("kernel") {
  auto s3 = qn(3), s1 = qn(1), s2 = qn(2);
  CHECK(kernel(SparseMatrix::identity(s3)).dim() == 0);
  CHECK(kernel(SparseMatrix(s3)).dim() == 3);
  SparseMatrix m(s2, s1);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  auto k = kernel(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(vec(s2, {1, -1})));
}

TEST_CASE("random matrices: trace(AB) = trace(BA), rank-nullity, kernel vectors") {
  std::mt19937 rng(11);
  auto s = qn(6);
  for (int t = 0; t < 30; ++t) {
    auto A = random_matrix(s, rng), B = random_matrix(s, rng);
    CHECK((A * B).trace() == (B * A).trace());
    auto K = kernel(A);
    CHECK(rank(A) + K.dim() == 6);
    for (const auto &v : K.basis_vectors()) CHECK((A * v).is_zero());
  }
}

TEST_CASE("quotient projection") {
  auto s2 = qn(2);
  QuotientSpace q(s2, rref({vec(s2, {1, 1})}));
  CHECK(q.dim() == 1);
  CHECK(q.project(vec(s2, {1, 1})).is_zero());
  CHECK(q.project(vec(s2, {2, 0})) == q.project(vec(s2, {0, -2})));
  QuotientSpace triv(s2, Subspace(s2));
  CHECK(triv.project(vec(s2, {3, 4})).entries() == vec(s2, {3, 4}).entries());
  // idempotent and linear
  std::mt19937 rng(3);
  auto s5 = qn(5);
  QuotientSpace q5(s5, rref({vec(s5, {1, 2, 0, 0, 1}), vec(s5, {0, 1, 1, 0, 0})}));
  for (int t = 0; t < 50; ++t) {
    Coeffs a, b;
    for (std::size_t i = 0; i < 5; ++i) {
      add_entry(a, i, random_rat(rng));
      add_entry(b, i, random_rat(rng));
    }
    auto pa = q5.project(a);
    CHECK(q5.project(q5.lift(pa)) == pa);
    CHECK(q5.project(add(a, scaled(b, 3))) == add(pa, scaled(q5.project(b), 3)));
  }
}

TEST_CASE("coordinatizer recovers combination coefficients") {
  auto s3 = qn(3);
  Coordinatizer c(3, {vec(s3, {1, 1, 0}).entries(), vec(s3, {0, 1, 1}).entries()});
  auto x = c.coords(vec(s3, {2, 5, 3}).entries());
  CHECK(x == Coeffs{{0, Rational(2)}, {1, Rational(3)}});
  CHECK_THROWS_AS(c.coords(vec(s3, {1, 0, 0}).entries()), DomainError);
}
