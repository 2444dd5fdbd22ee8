#pragma once
// Finite truncations of the locally finite root systems of types A, B, C, D
// and BC, realised inside the span of ε_1, ..., ε_n with (ε_i, ε_j) = δ_ij.

#include "rglie/exactla.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rglie {

enum class Family { A, B, C, D, BC };

std::string family_name(Family f);
/// Accepts "A", "B", "C", "D", "BC" (case-insensitive); throws DomainError.
Family parse_family(const std::string &s);

/// ε-coordinates, index (1-based) -> nonzero integer coefficient.
class Root {
public:
  Root() = default;
  explicit Root(std::map<int, int> coords);
  static Root eps(int i, int c = 1);

  const std::map<int, int> &coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  int operator[](int i) const;
  /// (α, β) under the δ-form.
  int dot(const Root &o) const;
  int norm() const { return dot(*this); }
  int max_index() const { return coords_.empty() ? 0 : coords_.rbegin()->first; }

  Root operator+(const Root &o) const;
  Root operator-(const Root &o) const;
  Root operator-() const;
  Root operator*(int s) const;
  auto operator<=>(const Root &o) const = default;

  /// e.g. "e1-e2", "2e3", "0".
  std::string str() const;

private:
  std::map<int, int> coords_;
};

/// ⟨β, α̌⟩ = 2(β, α)/(α, α) as an exact rational.
Rational coroot_pairing(const Root &beta, const Root &alpha);

enum class LengthClass { Short, Long, ExtraLong };
std::string length_name(LengthClass l);

struct RootSystem {
  Family family;
  int n;
  std::set<Root> roots;  // zero included

  bool contains(const Root &r) const { return roots.count(r) != 0; }
  std::vector<Root> nonzero() const;
};

RootSystem generate(Family family, int n);
/// s_α(β) = β − ⟨β, α̌⟩ α.
Root reflect(const Root &alpha, const Root &beta);
std::map<Root, LengthClass> classify_lengths(const RootSystem &R);
RootSystem semidivisible(const RootSystem &R);

/// Checks the axioms of a (finite) root system on a root set containing 0:
/// closure under negation and reflections, integrality of pairings.  Returns
/// an empty string on success and a witness description otherwise.
std::string validate_root_set(const std::set<Root> &roots);

bool is_full_subsystem(const std::set<Root> &S, const RootSystem &R);
std::vector<std::set<Root>> connected_components(const std::set<Root> &roots);
std::vector<std::set<Root>> connected_components(const RootSystem &R);

/// The sub-root-system of R supported on the given indices.
std::set<Root> restrict_to_indices(const RootSystem &R, const std::set<int> &indices);

}  // namespace rglie
