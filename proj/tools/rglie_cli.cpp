// rglie: build root-graded Lie algebra models and emit JSON verification
// reports.  Exit status: 0 all checks pass, 1 some check fails, 2 bad
// configuration, 3 internal-consistency error.

#include "rglie/coord.hpp"
#include "rglie/graded.hpp"
#include "rglie/liealg.hpp"
#include "rglie/presets.hpp"
#include "rglie/report.hpp"
#include "rglie/rootsys.hpp"
#include "rglie/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rglie;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kInternal = 3 };

struct Options {
  std::string family;
  int n = 0;
  int ell = 0;
  std::string preset, file, model;
  std::string k = "zero";
  bool override_bounds = false;
  std::string suite;
  std::size_t samples = 500;
  bool samples_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool exhaustive = false;
  std::vector<std::string> levels;
  std::string subsystem;
  std::string out;
  std::string emit = "json";
  bool timing = false;
};

std::set<int> parse_index_set(const std::string &s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size()) throw DomainError("bad index '" + tok + "' in '" + s + "'");
    out.insert(v);
  }
  if (out.empty()) throw DomainError("empty index list");
  return out;
}

void write_output(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw DomainError("cannot write " + o.out);
  f << text;
}

std::string quadruple_source(const Options &o) {
  if (!o.preset.empty() && !o.file.empty()) throw DomainError("give either --preset or --file, not both");
  if (o.preset.empty() && o.file.empty()) throw DomainError("a quadruple is required (--preset or --file)");
  return o.preset.empty() ? o.file : o.preset;
}

ModelConfig model_config(const Options &o, std::string &source) {
  if (!o.model.empty()) {
    source = o.model;
    return load_model_file(o.model);
  }
  if (o.family.empty()) throw DomainError("--family is required");
  if (o.n <= 0) throw DomainError("--n must be positive");
  if (o.ell <= 0) throw DomainError("--ell must be positive");
  source = quadruple_source(o);
  ModelConfig cfg;
  cfg.family = parse_family(o.family);
  cfg.n = o.n;
  cfg.ell = o.ell;
  cfg.quadruple = load_quadruple(source);
  if (o.k == "zero")
    cfg.k_mode = KMode::Zero;
  else if (o.k == "fh")
    cfg.k_mode = KMode::FullHomology;
  else
    throw DomainError("--k must be zero or fh");
  cfg.override_bounds = o.override_bounds;
  return cfg;
}

json config_echo(const Options &o, const std::string &cmd) {
  json c;
  c["command"] = cmd;
  if (!o.model.empty()) c["model"] = o.model;
  if (!o.family.empty()) c["family"] = o.family;
  if (o.n) c["n"] = o.n;
  if (o.ell) c["ell"] = o.ell;
  if (!o.preset.empty()) c["preset"] = o.preset;
  if (!o.file.empty()) c["file"] = o.file;
  if (cmd == "build" || cmd == "verify") {
    c["k"] = o.k;
    c["override_bounds"] = o.override_bounds;
  }
  if (cmd == "verify") {
    c["suite"] = o.suite;
    c["samples"] = o.samples;
    if (o.seed_set) c["seed"] = o.seed;
    c["exhaustive"] = o.exhaustive;
    c["levels"] = o.levels;
    if (!o.subsystem.empty()) c["subsystem"] = o.subsystem;
  }
  return c;
}

int cmd_roots(const Options &o) {
  if (o.family.empty() || o.n <= 0) throw DomainError("roots needs --family and a positive --n");
  const RootSystem R = generate(parse_family(o.family), o.n);
  const auto cls = classify_lengths(R);
  json roots = json::array(), lengths = json::object();
  for (const auto &r : R.roots) {
    json coords = json::array();
    for (const auto &[i, c] : r.coords()) coords.push_back({i, c});
    roots.push_back(coords);
    lengths[r.str()] = r.is_zero() ? "zero" : length_name(cls.at(r));
  }
  json j{{"family", family_name(R.family)}, {"rank", R.n}, {"count", R.roots.size()}, {"roots", roots},
         {"lengths", lengths}};
  write_output(o, j.dump(2) + "\n");
  return kPass;
}

int cmd_algebra(const Options &o) {
  if (o.family.empty() || o.n <= 0) throw DomainError("algebra needs --family and a positive --n");
  const Family f = parse_family(o.family);
  const MatrixLieAlgebra g = build_algebra(matrix_family(f), o.n);
  json spaces = json::object();
  for (const auto &[w, idx] : g.root_space_index) {
    json vecs = json::array();
    for (auto k : idx) {
      json entries = json::array();
      const auto &lab = g.ambient.space->labels();
      for (const auto &[r, row] : g.basis[k].rows())
        for (const auto &[c, v] : row) entries.push_back({lab[r], lab[c], to_string(v)});
      vecs.push_back({{"name", g.basis_names[k]}, {"entries", entries}});
    }
    spaces[w.str()] = vecs;
  }
  json j{{"family", family_name(g.family)}, {"n", o.n}, {"dim", g.dim()}, {"cartan_dim", g.cartan.size()},
         {"root_spaces", spaces}};
  write_output(o, j.dump(2) + "\n");
  return kPass;
}

int cmd_fh(const Options &o) {
  if (o.ell <= 0) throw DomainError("fh needs a positive --ell");
  const std::string src = quadruple_source(o);
  const auto B = make_coord_algebra(load_quadruple(src));
  const BBQuotient bb(B, o.ell);
  const auto fh = full_homology(bb);
  const auto uni = check_uniform(bb, fh.space.rref_basis(), o.ell == 7 ? 8 : 7);
  json basis = json::array();
  const auto labels = bb.quotient().coset_labels();
  for (const auto &v : fh.space.rref_basis()) basis.push_back(coeffs_to_json(v));
  json j{{"quadruple", src},     {"type", family_name(B->type())}, {"ell", o.ell},
         {"dim_bb", bb.dim()},   {"dim_fh", fh.dim()},             {"central", fh.central},
         {"uniform", uni.uniform}, {"coset_labels", labels},       {"basis", basis}};
  write_output(o, j.dump(2) + "\n");
  return kPass;
}

int cmd_build(const Options &o) {
  std::string src;
  const ModelConfig cfg = model_config(o, src);
  const auto m = build_model(cfg);
  write_output(o, model_to_json(*m, src, o.seed).dump(2) + "\n");
  return kPass;
}

int cmd_verify(const Options &o) {
  const std::set<Suite> suites = o.suite.empty() ? default_suites() : parse_suites(o.suite);
  SuiteOptions so;
  so.samples = o.samples;
  if (o.seed_set) so.seed = o.seed;
  so.exhaustive = o.exhaustive;
  for (const auto &l : o.levels) so.levels.push_back(parse_index_set(l));
  if (!o.subsystem.empty()) so.subsystem = parse_index_set(o.subsystem);
  const bool random = suites.count(Suite::Jacobi) || suites.count(Suite::Transition);
  if (random && so.samples > 0 && !so.seed) throw DomainError("--seed is required when --samples > 0");

  std::string src;
  const ModelConfig cfg = model_config(o, src);
  const auto m = build_model(cfg);
  Report rep;
  rep.command = "verify";
  rep.config = config_echo(o, "verify");
  rep.config["sub_bound"] = m->sub_bound();
  rep.config["dim"] = m->dim();
  rep.timing = o.timing;
  rep.checks = run_model_suites(m, suites, so);
  write_output(o, rep.dump());
  if (!o.out.empty()) {
    const json s = rep.to_json()["summary"];
    std::cout << "verify: " << s["passed"] << " passed, " << s["failed"] << " failed, " << s["skipped"]
              << " skipped; report written to " << o.out << "\n";
  }
  return rep.all_passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Root-graded Lie algebra models: construction and verification"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App *c, bool model_flags) {
    c->add_option("--family", o.family, "root system type: A, B, C, D, BC");
    c->add_option("--n", o.n, "truncation size");
    c->add_option("--out", o.out, "write output to this file instead of stdout");
    c->add_option("--emit", o.emit, "output format")->check(CLI::IsMember({"json"}));
    if (!model_flags) return;
    c->add_option("--ell", o.ell, "level (|I_0| = ell for B/C/BC, ell+1 for A/D)");
    c->add_option("--preset", o.preset, "coordinate quadruple preset, e.g. symplectic:m=2");
    c->add_option("--file", o.file, "coordinate quadruple JSON file");
    c->add_option("--k", o.k, "relation subspace K: zero or fh");
    c->add_flag("--override-bounds", o.override_bounds, "allow levels below the rank bounds");
  };
  auto *roots = app.add_subcommand("roots", "root system as JSON");
  common(roots, false);
  auto *algebra = app.add_subcommand("algebra", "classical Lie algebra root spaces as JSON");
  common(algebra, false);
  auto *fh = app.add_subcommand("fh", "full skew-dihedral homology of a quadruple");
  fh->add_option("--ell", o.ell, "level");
  fh->add_option("--preset", o.preset, "coordinate quadruple preset");
  fh->add_option("--file", o.file, "coordinate quadruple JSON file");
  fh->add_option("--out", o.out, "output file");
  fh->add_option("--emit", o.emit, "output format")->check(CLI::IsMember({"json"}));
  auto *build = app.add_subcommand("build", "build a model and write the model file");
  common(build, true);
  build->add_option("--seed", o.seed, "seed recorded in the model provenance");
  auto *verify = app.add_subcommand("verify", "run verification suites and write a JSON report");
  common(verify, true);
  verify->add_option("--model", o.model, "model file written by `build`");
  verify->add_option("--suite", o.suite,
                     "comma-separated subset of grading,jacobi,derivation,homology,uniform,transition,subsystem");
  auto *samples_opt = verify->add_option("--samples", o.samples, "random Jacobi triples / sampled level families");
  auto *seed_opt = verify->add_option("--seed", o.seed, "seed for all randomness");
  verify->add_flag("--exhaustive", o.exhaustive, "exhaustive Jacobi on all basis triples");
  verify->add_option("--level", o.levels, "level subset for the transition suite, e.g. 1,2,3,4,5 (repeatable)");
  verify->add_option("--subsystem", o.subsystem, "index set of the subsystem suite, e.g. 1,2,3");
  verify->add_flag("--timing", o.timing, "record elapsed_ms (reports are no longer byte-identical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }
  o.samples_set = samples_opt->count() > 0;
  o.seed_set = seed_opt->count() > 0;
  if (verify->parsed() && verify->count("--suite") && o.suite.empty()) {
    std::cerr << "error: the suite list is empty\n";
    return kConfig;
  }

  try {
    if (roots->parsed()) return cmd_roots(o);
    if (algebra->parsed()) return cmd_algebra(o);
    if (fh->parsed()) return cmd_fh(o);
    if (build->parsed()) return cmd_build(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const InternalError &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ShapeError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kConfig;
}
