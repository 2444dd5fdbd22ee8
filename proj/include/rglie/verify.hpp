#pragma once
// Verification suites: the substrate suites (root systems, classical
// algebras, Clifford–Jordan spans, modules, coordinate algebras, the uniform
// property) and the model suites run by `rglie verify`.

#include "rglie/check.hpp"
#include "rglie/graded.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rglie {

/// A check plus the wall time of the call that produced it (checks produced
/// together share that time).
struct TimedCheck {
  CheckResult result;
  std::int64_t elapsed_ms = 0;
};

// ---------------------------------------------------------------- substrate

/// Root-system axioms and |R^x| for every family and n in [1, n_max].
std::vector<TimedCheck> suite_root_systems(int n_max = 8);
/// Defining conditions, closure, dimensions and [h, x_α] = α(h) x_α for the
/// four matrix families and n in [n_min, n_max].
std::vector<TimedCheck> suite_algebras(int n_min = 2, int n_max = 6);
/// o_B(n) = span of the Jordan derivations D_{a,b}, n in [1, n_max].
std::vector<TimedCheck> suite_clifford(int n_max = 3);
/// Weight tables of 𝒱 (B, C) and 𝒮 (C) and the module axiom on basis triples.
std::vector<TimedCheck> suite_modules(int n_min = 2, int n_max = 5);
/// Quadruple laws, derivation law, {𝔟,𝔟}_ℓ Lie laws, FH central, ◊/♥ targets.
std::vector<TimedCheck> suite_coordinates(const std::string &preset, int ell = 4);
/// β* on relation generators; check_uniform verdicts for {0} and FH agree at
/// ℓ and ℓ2.
std::vector<TimedCheck> suite_uniform(const std::string &preset, int ell = 4, int ell2 = 7);

// ---------------------------------------------------------------- models

enum class Suite { Grading, Jacobi, Derivation, Homology, Uniform, Transition, Subsystem };
std::string suite_name(Suite s);
/// Comma-separated suite names; DomainError on unknown or empty input.
std::set<Suite> parse_suites(const std::string &csv);
const std::set<Suite> &default_suites();

struct SuiteOptions {
  std::size_t samples = 500;           // random Jacobi triples / sampled level families
  std::optional<std::uint64_t> seed;   // required when samples > 0
  bool exhaustive = false;             // force exhaustive Jacobi
  std::size_t exhaustive_limit = 120;  // exhaustive Jacobi when dim <= limit
  std::vector<std::set<int>> levels;   // transition subsets; default: I_0 plus one / two indices
  std::optional<std::set<int>> subsystem;  // subsystem indices; default: {1..n-1}
};

/// Runs the selected suites on a model.  Checks come back sorted by name.
std::vector<TimedCheck> run_model_suites(const ModelRef &m, const std::set<Suite> &suites, const SuiteOptions &opt);

/// The graded-construction acceptance checks for one model: antisymmetry, Jacobi
/// (seeded random triples plus exhaustive when dim <= 120) and grading.
std::vector<TimedCheck> construction_checks(const ModelRef &m, std::size_t samples, std::uint64_t seed);

}  // namespace rglie
