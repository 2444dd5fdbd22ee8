#include "rglie/report.hpp"

#include "rglie/presets.hpp"

#include <fstream>

namespace rglie {

using nlohmann::json;

std::string check_status(const CheckResult &r) {
  if (!r.passed) return "fail";
  if (r.evaluated == 0 && r.note.rfind("skipped", 0) == 0) return "skipped";
  return "pass";
}

bool Report::all_passed() const {
  for (const auto &c : checks)
    if (!c.result.passed) return false;
  return true;
}

json Report::to_json() const {
  std::vector<const TimedCheck *> sorted;
  for (const auto &c : checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TimedCheck *a, const TimedCheck *b) { return a->result.name < b->result.name; });
  json arr = json::array();
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto *c : sorted) {
    const std::string st = check_status(c->result);
    (st == "pass" ? passed : st == "fail" ? failed : skipped) += 1;
    arr.push_back({{"name", c->result.name},
                   {"status", st},
                   {"evaluated", c->result.evaluated},
                   {"witnesses", c->result.witnesses},
                   {"note", c->result.note},
                   {"elapsed_ms", timing ? c->elapsed_ms : 0}});
  }
  json j;
  j["tool"] = "rglie";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  j["checks"] = arr;
  j["summary"] = {{"total", sorted.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

json coeffs_to_json(const Coeffs &x) {
  json a = json::array();
  for (const auto &[i, v] : x) a.push_back({i, to_string(v)});
  return a;
}

Coeffs coeffs_from_json(const json &j) {
  if (!j.is_array()) throw DomainError("vector: expected an array of [index, value] pairs");
  Coeffs x;
  for (const auto &e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned())
      throw DomainError("vector entry must be [index, value]");
    const Rational v = e[1].is_string() ? parse_rational(e[1].get<std::string>()) : Rational(e[1].get<long>());
    add_entry(x, e[0].get<std::size_t>(), v);
  }
  return x;
}

json model_to_json(const GradedModel &m, const std::string &quadruple_source, std::uint64_t seed) {
  json j;
  j["family"] = family_name(m.family());
  j["n"] = m.n();
  j["ell"] = m.ell();
  const auto &q = m.coord().quadruple();
  // presets are stored by name, files inline so the model file is self-contained
  bool is_preset = true;
  try {
    make_preset(quadruple_source);
  } catch (const DomainError &) {
    is_preset = false;
  }
  if (is_preset)
    j["quadruple"] = quadruple_source;
  else
    j["quadruple"] = quadruple_to_json(q);
  json K = json::array();
  for (const auto &k : m.K_span()) K.push_back(coeffs_to_json(k));
  j["K"] = K;
  j["override_bounds"] = m.sub_bound();
  j["provenance"] = {{"tool_version", kToolVersion}, {"seed", seed}};
  json blocks;
  for (Block b : {Block::G, Block::S, Block::V, Block::D}) blocks[block_name(b)] = m.block_dim(b);
  j["summary"] = {{"dim", m.dim()},
                  {"blocks", blocks},
                  {"base_size", m.base().size()},
                  {"dim_bb", m.bb().dim()},
                  {"sub_bound", m.sub_bound()}};
  return j;
}

ModelConfig model_config_from_json(const json &j) {
  ModelConfig cfg;
  try {
    cfg.family = parse_family(j.at("family").get<std::string>());
    cfg.n = j.at("n").get<int>();
    cfg.ell = j.at("ell").get<int>();
    const json &q = j.at("quadruple");
    cfg.quadruple = q.is_string() ? load_quadruple(q.get<std::string>()) : quadruple_from_json(q);
    if (!q.is_string()) {
      const auto rep = validate_quadruple(cfg.quadruple);
      if (!rep.ok()) throw DomainError("inline quadruple fails " + rep.first_failure());
    }
    cfg.k_mode = KMode::Explicit;
    if (j.contains("K"))
      for (const auto &k : j.at("K")) cfg.K_span.push_back(coeffs_from_json(k));
    cfg.override_bounds = j.value("override_bounds", false);
  } catch (const json::exception &e) {
    throw DomainError(std::string("model file: ") + e.what());
  }
  return cfg;
}

ModelConfig load_model_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw DomainError("model file " + path + ": " + e.what());
  }
  return model_config_from_json(j);
}

}  // namespace rglie
