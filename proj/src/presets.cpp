#include "rglie/presets.hpp"

#include <filesystem>
#include <fstream>

namespace rglie {

using nlohmann::json;

namespace {

Coeffs e(std::size_t i, long v = 1) { return Coeffs{{i, Rational(v)}}; }

int param(const PresetSpec &s, const std::string &key, int dflt, int min) {
  auto it = s.params.find(key);
  int v = it == s.params.end() ? dflt : it->second;
  if (v < min)
    throw DomainError("preset " + s.name + ": parameter " + key + " must be >= " + std::to_string(min));
  return v;
}

void reject_unknown(const PresetSpec &s, std::initializer_list<const char *> keys) {
  for (const auto &[k, v] : s.params) {
    bool known = false;
    for (const char *key : keys) known = known || k == key;
    if (!known) throw DomainError("preset " + s.name + ": unknown parameter '" + k + "'");
  }
}

/// k×k matrix units E_{pq} at position p·k + q.
CoordinateQuadruple matrix_algebra(int k, bool transpose) {
  CoordinateQuadruple q;
  const std::size_t K = k;
  q.a_dim = K * K;
  q.mult.assign(q.a_dim, std::vector<Coeffs>(q.a_dim));
  for (std::size_t p = 0; p < K; ++p)
    for (std::size_t r = 0; r < K; ++r) {
      q.a_labels.push_back("E" + std::to_string(p + 1) + std::to_string(r + 1));
      q.star.push_back(transpose ? e(r * K + p) : e(p * K + r));
      for (std::size_t s = 0; s < K; ++s) q.mult[p * K + r][r * K + s] = e(p * K + s);
    }
  for (std::size_t p = 0; p < K; ++p) q.unit.emplace(p * K + p, Rational(1));
  return q;
}

Rational rational_of(const json &v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw DomainError("quadruple file: expected an integer or a \"p/q\" string, got " + v.dump());
}

std::size_t index_of(const json &v, std::size_t bound, const char *what) {
  if (!v.is_number_integer() || v.get<long>() < 0 || static_cast<std::size_t>(v.get<long>()) >= bound)
    throw DomainError(std::string("quadruple file: bad ") + what + " index " + v.dump());
  return v.get<std::size_t>();
}

}  // namespace

PresetSpec parse_preset(const std::string &spec) {
  PresetSpec s;
  auto colon = spec.find(':');
  s.name = spec.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string kv = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("preset parameter '" + kv + "' is not key=value");
    try {
      std::size_t used = 0;
      int v = std::stoi(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      s.params[kv.substr(0, eq)] = v;
    } catch (const std::logic_error &) {
      throw DomainError("preset parameter '" + kv + "' needs an integer value");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return s;
}

std::vector<std::string> preset_names() {
  return {"matrix", "group_ring", "clifford", "matrix_transpose", "symplectic", "matrix_hermitian"};
}

CoordinateQuadruple make_preset(const std::string &spec_str) {
  const PresetSpec s = parse_preset(spec_str);
  CoordinateQuadruple q;
  if (s.name == "matrix") {
    reject_unknown(s, {"k"});
    q = matrix_algebra(param(s, "k", 2, 1), false);
    q.type = Family::A;
  } else if (s.name == "matrix_transpose") {
    reject_unknown(s, {"k"});
    q = matrix_algebra(param(s, "k", 2, 1), true);
    q.type = Family::C;
  } else if (s.name == "group_ring") {
    reject_unknown(s, {"m"});
    const std::size_t m = param(s, "m", 3, 1);
    q.type = Family::D;
    q.a_dim = m;
    q.mult.assign(m, std::vector<Coeffs>(m));
    for (std::size_t i = 0; i < m; ++i) {
      q.a_labels.push_back("g^" + std::to_string(i));
      q.star.push_back(e(i));
      for (std::size_t j = 0; j < m; ++j) q.mult[i][j] = e((i + j) % m);
    }
    q.unit = e(0);
  } else if (s.name == "clifford") {
    reject_unknown(s, {"d"});
    const std::size_t d = param(s, "d", 2, 0);
    q.type = Family::B;
    q.a_dim = 1 + d;
    q.mult.assign(q.a_dim, std::vector<Coeffs>(q.a_dim));
    q.a_labels.push_back("1");
    q.star.push_back(e(0));
    for (std::size_t i = 1; i <= d; ++i) {
      q.a_labels.push_back("w" + std::to_string(i));
      q.star.push_back(e(i, -1));
    }
    for (std::size_t i = 0; i < q.a_dim; ++i) {
      q.mult[0][i] = e(i);
      q.mult[i][0] = e(i);
    }
    for (std::size_t i = 1; i <= d; ++i) q.mult[i][i] = e(0);
    q.unit = e(0);
  } else if (s.name == "symplectic") {
    reject_unknown(s, {"m"});
    const std::size_t m = param(s, "m", 2, 2);
    if (m % 2) throw DomainError("preset symplectic: m must be even");
    q.type = Family::BC;
    q.a_dim = 1;
    q.a_labels = {"1"};
    q.mult = {{e(0)}};
    q.star = {e(0)};
    q.unit = e(0);
    q.c_dim = m;
    q.action.assign(1, std::vector<Coeffs>(m));
    q.f.assign(m, std::vector<Coeffs>(m));
    for (std::size_t k = 0; k < m; ++k) {
      q.c_labels.push_back("c" + std::to_string(k + 1));
      q.action[0][k] = e(k);
    }
    for (std::size_t t = 0; t + 1 < m; t += 2) {
      q.f[t][t + 1] = e(0);
      q.f[t + 1][t] = e(0, -1);
    }
  } else if (s.name == "matrix_hermitian") {
    reject_unknown(s, {"k", "m"});
    const std::size_t k = param(s, "k", 2, 1), m = param(s, "m", 2, 2);
    if (m % 2) throw DomainError("preset matrix_hermitian: m must be even");
    q = matrix_algebra(static_cast<int>(k), true);
    q.type = Family::BC;
    q.c_dim = k * m;
    q.action.assign(q.a_dim, std::vector<Coeffs>(q.c_dim));
    q.f.assign(q.c_dim, std::vector<Coeffs>(q.c_dim));
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t r = 0; r < m; ++r) q.c_labels.push_back("C" + std::to_string(p + 1) + std::to_string(r + 1));
    // E_{ab} · C_{pr} = δ_{bp} C_{ar}
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t r = 0; r < m; ++r) q.action[a * k + p][p * m + r] = e(a * m + r);
    // f(C_{pr}, C_{qs}) = C_{pr} G C_{qs}ᵀ = G_{rs} E_{pq}
    auto G = [](std::size_t r, std::size_t s) -> long {
      if (r % 2 == 0 && s == r + 1) return 1;
      if (s % 2 == 0 && r == s + 1) return -1;
      return 0;
    };
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t qq = 0; qq < k; ++qq)
          for (std::size_t s2 = 0; s2 < m; ++s2)
            if (long g = G(r, s2)) q.f[p * m + r][qq * m + s2] = e(p * k + qq, g);
  } else {
    throw DomainError("unknown preset '" + s.name + "'");
  }
  q.name = spec_str;
  q.normalize();
  return q;
}

CoordinateQuadruple quadruple_from_json(const json &j) {
  if (!j.is_object()) throw DomainError("quadruple file: top level must be an object");
  CoordinateQuadruple q;
  try {
    q.type = parse_family(j.at("type").get<std::string>());
    q.name = j.value("name", std::string("file"));
    q.a_dim = j.at("a_dim").get<std::size_t>();
    q.c_dim = j.value("c_dim", std::size_t{0});
    if (j.contains("a_labels")) q.a_labels = j["a_labels"].get<std::vector<std::string>>();
    if (j.contains("c_labels")) q.c_labels = j["c_labels"].get<std::vector<std::string>>();
  } catch (const json::exception &ex) {
    throw DomainError(std::string("quadruple file: ") + ex.what());
  }
  const std::size_t n = q.a_dim, m = q.c_dim;
  q.mult.assign(n, std::vector<Coeffs>(n));
  q.action.assign(n, std::vector<Coeffs>(m));
  q.f.assign(m, std::vector<Coeffs>(m));
  auto entries = [&](const char *key, std::size_t arity) {
    std::vector<json> out;
    if (!j.contains(key)) return out;
    for (const auto &row : j.at(key)) {
      if (!row.is_array() || row.size() != arity + 1)
        throw DomainError(std::string("quadruple file: entries of '") + key + "' need " + std::to_string(arity) +
                          " indices and a value");
      out.push_back(row);
    }
    return out;
  };
  for (const auto &r : entries("structure_constants", 3))
    add_entry(q.mult[index_of(r[0], n, "a")][index_of(r[1], n, "a")], index_of(r[2], n, "a"), rational_of(r[3]));
  for (const auto &r : entries("unit", 1)) add_entry(q.unit, index_of(r[0], n, "a"), rational_of(r[1]));
  if (j.contains("star")) {
    q.star.assign(n, Coeffs{});
    for (const auto &r : entries("star", 2))
      add_entry(q.star[index_of(r[0], n, "a")], index_of(r[1], n, "a"), rational_of(r[2]));
  }
  for (const auto &r : entries("action", 3))
    add_entry(q.action[index_of(r[0], n, "a")][index_of(r[1], m, "c")], index_of(r[2], m, "c"), rational_of(r[3]));
  for (const auto &r : entries("f", 3))
    add_entry(q.f[index_of(r[0], m, "c")][index_of(r[1], m, "c")], index_of(r[2], n, "a"), rational_of(r[3]));
  q.normalize();
  return q;
}

json quadruple_to_json(const CoordinateQuadruple &q) {
  json j;
  j["type"] = family_name(q.type);
  j["name"] = q.name;
  j["a_dim"] = q.a_dim;
  j["a_labels"] = q.a_labels;
  j["c_dim"] = q.c_dim;
  j["c_labels"] = q.c_labels;
  json sc = json::array(), unit = json::array(), star = json::array(), act = json::array(), f = json::array();
  for (std::size_t i = 0; i < q.a_dim; ++i)
    for (std::size_t k = 0; k < q.a_dim; ++k)
      for (const auto &[t, v] : q.mult[i][k]) sc.push_back({i, k, t, to_string(v)});
  for (const auto &[i, v] : q.unit) unit.push_back({i, to_string(v)});
  for (std::size_t i = 0; i < q.star.size(); ++i)
    for (const auto &[k, v] : q.star[i]) star.push_back({i, k, to_string(v)});
  for (std::size_t i = 0; i < q.action.size(); ++i)
    for (std::size_t k = 0; k < q.action[i].size(); ++k)
      for (const auto &[l, v] : q.action[i][k]) act.push_back({i, k, l, to_string(v)});
  for (std::size_t k = 0; k < q.f.size(); ++k)
    for (std::size_t l = 0; l < q.f[k].size(); ++l)
      for (const auto &[i, v] : q.f[k][l]) f.push_back({k, l, i, to_string(v)});
  j["structure_constants"] = sc;
  j["unit"] = unit;
  j["star"] = star;
  j["action"] = act;
  j["f"] = f;
  return j;
}

CoordinateQuadruple load_quadruple(const std::string &source) {
  CoordinateQuadruple q;
  const bool looks_like_file = source.find(".json") != std::string::npos || std::filesystem::exists(source);
  if (looks_like_file) {
    std::ifstream in(source);
    if (!in) throw DomainError("cannot open quadruple file " + source);
    json j;
    try {
      in >> j;
    } catch (const json::exception &ex) {
      throw DomainError("quadruple file " + source + ": " + ex.what());
    }
    q = quadruple_from_json(j);
  } else {
    q = make_preset(source);
  }
  auto rep = validate_quadruple(q);
  if (!rep.ok()) throw DomainError("quadruple " + source + " fails " + rep.first_failure());
  return q;
}

}  // namespace rglie
