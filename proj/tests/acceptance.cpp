// Acceptance driver: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include "rglie/report.hpp"
#include "rglie/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace rglie;

namespace {

struct ModelSpec {
  Family family;
  int n;
  int ell;
  std::string preset;
};

const std::vector<std::string> kPresets = {"matrix:k=2",           "group_ring:m=3",    "clifford:d=2",
                                           "matrix_transpose:k=2", "symplectic:m=2",    "matrix_hermitian:k=2,m=2"};

const std::vector<ModelSpec> kModels = {
    {Family::BC, 5, 4, "symplectic:m=2"},   {Family::BC, 5, 4, "matrix_hermitian:k=2,m=2"},
    {Family::A, 6, 5, "matrix:k=2"},        {Family::D, 7, 5, "group_ring:m=3"},
    {Family::B, 6, 5, "clifford:d=2"},      {Family::C, 6, 5, "matrix_transpose:k=2"},
};

std::string label(const ModelSpec &s) {
  return family_name(s.family) + " n=" + std::to_string(s.n) + " ell=" + std::to_string(s.ell) + " " + s.preset;
}

struct Outcome {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  // A skipped check counts as a failure: every criterion must be exercised.
  void add(const std::string &ctx, const CheckResult &r) {
    ++checks;
    if (check_status(r) == "pass") return;
    ok = false;
    std::string why = r.witnesses.empty() ? r.note : r.witnesses.front();
    failures.push_back(ctx + ": " + r.name + " [" + check_status(r) + "] " + why);
  }
  void add(const std::string &ctx, const std::vector<TimedCheck> &cs) {
    for (const auto &c : cs) add(ctx, c.result);
  }
  void error(const std::string &what) {
    ok = false;
    failures.push_back(what);
  }
};

Outcome criterion_1() {
  Outcome o;
  o.add("roots", suite_root_systems(8));
  return o;
}
Outcome criterion_2() {
  Outcome o;
  o.add("algebras", suite_algebras(2, 6));
  return o;
}
Outcome criterion_3() {
  Outcome o;
  o.add("clifford", suite_clifford(3));
  return o;
}
Outcome criterion_4() {
  Outcome o;
  o.add("modules", suite_modules(2, 5));
  return o;
}
Outcome criterion_5() {
  Outcome o;
  for (const auto &p : kPresets) o.add(p, suite_coordinates(p, 4));
  return o;
}
Outcome criterion_6() {
  Outcome o;
  for (const auto &p : kPresets) o.add(p, suite_uniform(p, 4, 7));
  return o;
}

std::vector<ModelRef> &models() {
  static std::vector<ModelRef> ms;
  if (ms.empty())
    for (const auto &s : kModels) ms.push_back(build_model(s.family, s.n, s.ell, s.preset));
  return ms;
}

Report construction_report() {
  Report rep;
  rep.command = "acceptance-7";
  rep.config = {{"samples", 2000}, {"seed", 42}};
  for (std::size_t i = 0; i < kModels.size(); ++i)
    for (auto c : construction_checks(models()[i], 2000, 42)) {
      c.result.name = label(kModels[i]) + " / " + c.result.name;
      rep.checks.push_back(std::move(c));
    }
  return rep;
}

Outcome criterion_7() {
  Outcome o;
  for (const auto &c : construction_report().checks) o.add("construction", c.result);
  return o;
}

Outcome criterion_8() {
  Outcome o;
  SuiteOptions opt;
  opt.samples = 0;
  for (std::size_t i = 0; i < kModels.size(); ++i)
    o.add(label(kModels[i]), run_model_suites(models()[i], {Suite::Subsystem}, opt));
  return o;
}

Outcome criterion_9() {
  Outcome o;
  // BC at level 4 and A at level 5 with room for one and two extra indices
  const std::vector<ModelSpec> specs = {{Family::BC, 6, 4, "symplectic:m=2"},
                                        {Family::BC, 6, 4, "matrix_hermitian:k=2,m=2"},
                                        {Family::A, 8, 5, "matrix:k=2"}};
  SuiteOptions opt;
  opt.samples = 200;
  opt.seed = 42;
  for (const auto &s : specs) {
    auto m = build_model(s.family, s.n, s.ell, s.preset);
    const auto cs = run_model_suites(m, {Suite::Transition}, opt);
    if (cs.empty()) o.error(label(s) + ": no transition checks produced");
    o.add(label(s), cs);
  }
  return o;
}

Outcome criterion_10() {
  Outcome o;
  const std::string a = construction_report().dump();
  const std::string b = construction_report().dump();
  ++o.checks;
  if (a != b) o.error("construction reports differ between runs with seed 42");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"root systems", criterion_1},        {"classical algebras", criterion_2},
      {"Clifford-Jordan span", criterion_3}, {"module weight tables", criterion_4},
      {"coordinate algebras", criterion_5},  {"uniform property", criterion_6},
      {"graded construction", criterion_7},  {"subsystem subalgebras", criterion_8},
      {"level transition", criterion_9},     {"determinism", criterion_10},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.error(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %zu checks, %.1f s\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.checks, secs);
    for (const auto &f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
