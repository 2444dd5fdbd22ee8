#pragma once
// JSON reports and model files.

#include "rglie/graded.hpp"
#include "rglie/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rglie {

inline constexpr const char *kToolVersion = "rglie 1.0.0";

/// "pass", "fail", or "skipped" (nothing evaluated and the note says so).
std::string check_status(const CheckResult &r);

/// {tool, version, command, config, checks: [{name, status, evaluated,
/// witnesses, note, elapsed_ms}], summary: {total, passed, failed, skipped}}.
/// Checks are sorted by name; elapsed_ms is 0 unless `timing` is set, so
/// that untimed reports are byte-identical across runs.
struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<TimedCheck> checks;
  bool timing = false;

  bool all_passed() const;
  nlohmann::json to_json() const;
  /// Pretty-printed JSON with a trailing newline.
  std::string dump() const;
};

/// Model file: {family, n, ell, quadruple, K, override_bounds, provenance:
/// {tool_version, seed}, summary}.  `quadruple` is a preset spec string or
/// an inline quadruple object.
nlohmann::json model_to_json(const GradedModel &m, const std::string &quadruple_source, std::uint64_t seed);
ModelConfig model_config_from_json(const nlohmann::json &j);
ModelConfig load_model_file(const std::string &path);

nlohmann::json coeffs_to_json(const Coeffs &x);
Coeffs coeffs_from_json(const nlohmann::json &j);

}  // namespace rglie
