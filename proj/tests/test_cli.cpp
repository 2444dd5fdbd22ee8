#include "rglie/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rglie;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char *p = std::getenv("RGLIE_CLI");
  REQUIRE_MESSAGE(p != nullptr, "RGLIE_CLI must point at the rglie binary");
  return p;
}

std::string presets_dir() {
  const char *p = std::getenv("RGLIE_PRESETS");
  return p ? p : "presets";
}

fs::path tmp(const std::string &name) { return fs::temp_directory_path() / ("rglie_cli_" + name); }

/// Runs the CLI with stdout to `out` and stderr to `err`; returns the exit status.
int run(const std::string &args, const fs::path &out = tmp("stdout"), const fs::path &err = tmp("stderr")) {
  const std::string cmd = cli() + " " + args + " > " + out.string() + " 2> " + err.string();
  const int st = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kExample =
    "verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --k zero --suite jacobi,grading --seed 42";

}  // namespace

TEST_CASE("roots and algebra") {
  CHECK(run("roots --family BC --n 2") == 0);
  json r = json::parse(slurp(tmp("stdout")));
  CHECK(r["roots"].size() == 13);
  CHECK(r["family"] == "BC");
  CHECK(r["rank"] == 2);
  CHECK(r["lengths"]["2e1"] == "extralong");
  CHECK(r["lengths"]["e1"] == "short");

  CHECK(run("algebra --family C --n 2") == 0);
  json a = json::parse(slurp(tmp("stdout")));
  CHECK(a["dim"] == 10);
  CHECK(a["cartan_dim"] == 2);
  CHECK(a["root_spaces"].size() == 9);  // 8 roots and 0

  CHECK(run("roots --family E --n 2") == 2);
  CHECK(run("roots") == 2);
  CHECK(run("bogus") == 2);
}

TEST_CASE("verify: acceptance example and exit codes") {
  CHECK(run(kExample) == 0);
  json rep = json::parse(slurp(tmp("stdout")));
  CHECK(rep["summary"]["failed"] == 0);
  CHECK(rep["summary"]["passed"] == rep["checks"].size());
  std::vector<std::string> names;
  for (const auto &c : rep["checks"]) {
    names.push_back(c["name"]);
    CHECK(c["status"] == "pass");
    CHECK(c["elapsed_ms"] == 0);
  }
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(rep["config"]["seed"] == 42);

  CHECK(run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite ''") == 2);
  CHECK(run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite jacobi") == 2);  // no seed
  CHECK(run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite jacobi --samples 0") == 0);
  CHECK(run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite flux --seed 1") == 2);
  CHECK(run("verify --family A --n 6 --ell 5 --preset symplectic:m=2 --suite grading") == 2);
  CHECK(slurp(tmp("stderr")).find("type mismatch") != std::string::npos);
  CHECK(run("verify --family BC --n 4 --ell 3 --preset symplectic:m=2 --suite grading") == 2);
  CHECK(run("verify --family BC --n 4 --ell 3 --preset symplectic:m=2 --suite grading --override-bounds") == 0);
  CHECK(json::parse(slurp(tmp("stdout")))["config"]["sub_bound"] == true);
  CHECK(run("verify --family BC --n 5 --ell 4 --preset symplectic:m=2 --suite transition --seed 1 --level 1,2") == 2);
}

TEST_CASE("report status mapping") {
  Report rep;
  CheckResult ok{"b", true, 3, {}, ""};
  CheckResult skip{"c", true, 0, {}, "skipped: nothing to do"};
  rep.checks = {{ok, 5}, {skip, 0}};
  CHECK(rep.all_passed());
  CheckResult bad{"a", true, 0, {}, ""};
  bad.expect(false, "witness");
  rep.checks.push_back({bad, 1});
  CHECK_FALSE(rep.all_passed());
  const json j = rep.to_json();
  CHECK(j["checks"][0]["name"] == "a");
  CHECK(j["checks"][0]["status"] == "fail");
  CHECK(j["checks"][0]["witnesses"][0] == "witness");
  CHECK(j["checks"][2]["status"] == "skipped");
  CHECK(j["checks"][1]["elapsed_ms"] == 0);
  rep.timing = true;
  CHECK(rep.to_json()["checks"][1]["elapsed_ms"] == 5);
  CHECK(j["summary"]["failed"] == 1);
}

TEST_CASE("deterministic reports") {
  const auto a = tmp("rep_a.json"), b = tmp("rep_b.json");
  CHECK(run(kExample + " --samples 300 --out " + a.string()) == 0);
  CHECK(run(kExample + " --samples 300 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run(kExample + " --samples 300 --seed 43 --out " + b.string()) == 2);  // --seed given twice
  CHECK(run("verify --family BC --n 4 --ell 4 --preset symplectic:m=2 --suite jacobi --samples 300 --seed 43 --out " +
            b.string()) == 0);
  CHECK(slurp(a) != slurp(b));
}

TEST_CASE("quadruple files, model files and fh") {
  const std::string file = presets_dir() + "/symplectic_2.json";
  REQUIRE(fs::exists(file));
  CHECK(run("verify --family BC --n 4 --ell 4 --file " + file + " --suite grading") == 0);

  // non-associative constants: validation names the failing triple
  json q = json::parse(slurp(presets_dir() + "/group_ring_3.json"));
  for (auto &e : q["structure_constants"])
    if (e[0] == 1 && e[1] == 1) e[2] = 1;
  const auto bad = tmp("bad.json");
  std::ofstream(bad) << q.dump();
  CHECK(run("verify --family D --n 7 --ell 5 --file " + bad.string() + " --suite grading") == 2);
  const std::string err = slurp(tmp("stderr"));
  CHECK(err.find("associativ") != std::string::npos);
  CHECK(err.find("(") != std::string::npos);

  const auto model = tmp("model.json");
  CHECK(run("build --family BC --n 5 --ell 4 --preset matrix_hermitian:k=2,m=2 --k fh --out " + model.string()) == 0);
  json m = json::parse(slurp(model));
  CHECK(m["family"] == "BC");
  CHECK(m["n"] == 5);
  CHECK(m["ell"] == 4);
  CHECK(m["quadruple"] == "matrix_hermitian:k=2,m=2");
  CHECK(m["provenance"]["tool_version"] == kToolVersion);
  CHECK(m["K"].is_array());
  CHECK(run("verify --model " + model.string() + " --suite grading,uniform,homology") == 0);

  const auto model2 = tmp("model2.json");
  CHECK(run("build --family BC --n 4 --ell 4 --file " + file + " --out " + model2.string()) == 0);
  CHECK(json::parse(slurp(model2))["quadruple"].is_object());
  CHECK(run("verify --model " + model2.string() + " --suite grading") == 0);

  CHECK(run("fh --preset matrix_transpose:k=2 --ell 4") == 0);
  json fh = json::parse(slurp(tmp("stdout")));
  CHECK(fh["central"] == true);
  CHECK(fh["dim_fh"].get<int>() == static_cast<int>(fh["basis"].size()));
  CHECK(run("fh --preset matrix_transpose:k=2") == 2);
}
