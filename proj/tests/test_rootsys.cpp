#include "rglie/rootsys.hpp"

#include <doctest.h>

using namespace rglie;

namespace {
Root e(int i) { return Root::eps(i); }

// independent counting oracle
std::size_t expected_nonzero(Family f, int n) {
  switch (f) {
  case Family::A: return n * (n - 1);
  case Family::B:
  case Family::C: return 2 * n * n;
  case Family::D: return 2 * n * (n - 1);
  case Family::BC: return 2 * n * n + 2 * n;
  }
  return 0;
}
}  // namespace

TEST_CASE("generate: sizes and examples") {
  CHECK(generate(Family::A, 3).roots.size() == 7);
  CHECK(generate(Family::BC, 2).roots.size() == 13);
  auto b1 = generate(Family::B, 1);
  CHECK(b1.roots == std::set<Root>{Root(), e(1), -e(1)});
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
    for (int n = 1; n <= 8; ++n) {
      auto R = generate(f, n);
      CHECK(R.nonzero().size() == expected_nonzero(f, n));
      CHECK(validate_root_set(R.roots) == "");
    }
  CHECK_THROWS_AS(parse_family("G2"), DomainError);
}

TEST_CASE("reflections") {
  CHECK(reflect(e(1) - e(2), e(1) - e(2)) == e(2) - e(1));
  CHECK(reflect(e(1) - e(2), e(2) - e(3)) == e(1) - e(3));
  CHECK(reflect(e(1), e(1) * 2) == e(1) * -2);
  CHECK_THROWS_AS(reflect(Root(), e(1)), DomainError);
  CHECK(coroot_pairing(e(1) + e(2), e(1)) == 2);
}

TEST_CASE("length classes") {
  auto bc = classify_lengths(generate(Family::BC, 2));
  CHECK(bc.at(e(1)) == LengthClass::Short);
  CHECK(bc.at(e(1) + e(2)) == LengthClass::Long);
  CHECK(bc.at(e(1) * 2) == LengthClass::ExtraLong);
  for (const auto &[r, l] : classify_lengths(generate(Family::A, 3))) CHECK(l == LengthClass::Short);
  auto b3 = classify_lengths(generate(Family::B, 3));
  CHECK(b3.at(e(1)) == LengthClass::Short);
  CHECK(b3.at(e(1) - e(2)) == LengthClass::Long);
  for (Family f : {Family::A, Family::B, Family::C, Family::D})
    for (const auto &[r, l] : classify_lengths(generate(f, 4))) CHECK(l != LengthClass::ExtraLong);
  // extra-long iff half is short (BC only)
  auto R = generate(Family::BC, 4);
  auto cls = classify_lengths(R);
  for (const auto &[r, l] : cls) {
    bool half_short = false;
    for (const auto &[s, ls] : cls)
      if (ls == LengthClass::Short && s * 2 == r) half_short = true;
    CHECK((l == LengthClass::ExtraLong) == half_short);
  }
}

TEST_CASE("semi-divisible subsystem") {
  CHECK(semidivisible(generate(Family::BC, 2)).roots == generate(Family::C, 2).roots);
  CHECK(semidivisible(generate(Family::A, 3)).roots == generate(Family::A, 3).roots);
  CHECK(semidivisible(generate(Family::B, 2)).roots == generate(Family::B, 2).roots);
  for (int n = 1; n <= 5; ++n) CHECK(validate_root_set(semidivisible(generate(Family::BC, n)).roots) == "");
}

TEST_CASE("full subsystems") {
  auto R = generate(Family::BC, 4);
  CHECK(is_full_subsystem(R.roots, R));
  CHECK(is_full_subsystem({Root()}, R));
  CHECK(is_full_subsystem(restrict_to_indices(R, {1, 2}), R));
  // C-type part of BC is not full: its span contains ε_i
  CHECK_FALSE(is_full_subsystem(restrict_to_indices(generate(Family::C, 4), {1, 2}), R));
  CHECK_THROWS_AS(is_full_subsystem({e(1) * 3}, R), DomainError);
}

TEST_CASE("connected components") {
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
    CHECK(connected_components(generate(f, 3)).size() == 1);
  CHECK(connected_components(generate(Family::A, 2)).size() == 1);
  std::set<Root> two{Root(), e(1) - e(2), e(2) - e(1), e(3) - e(4), e(4) - e(3)};
  CHECK(connected_components(two).size() == 2);
}

TEST_CASE("truncations commute with inclusion") {
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
    for (int n = 1; n < 6; ++n) {
      std::set<int> idx;
      for (int i = 1; i <= n; ++i) idx.insert(i);
      CHECK(restrict_to_indices(generate(f, n + 1), idx) == generate(f, n).roots);
    }
}
