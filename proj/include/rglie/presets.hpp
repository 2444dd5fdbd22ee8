#pragma once
// The preset catalogue of coordinate quadruples and the JSON quadruple
// format.

#include "rglie/coord.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace rglie {

/// "name" or "name:key=value,key=value".  Throws DomainError for unknown
/// names or bad parameters.
struct PresetSpec {
  std::string name;
  std::map<std::string, int> params;
};
PresetSpec parse_preset(const std::string &spec);

/// matrix:k (A), group_ring:m (D), clifford:d (B), matrix_transpose:k (C),
/// symplectic:m (BC), matrix_hermitian:k,m (BC).
CoordinateQuadruple make_preset(const std::string &spec);
std::vector<std::string> preset_names();

CoordinateQuadruple quadruple_from_json(const nlohmann::json &j);
nlohmann::json quadruple_to_json(const CoordinateQuadruple &q);

/// A preset spec, or a path to a JSON quadruple file.  The result is
/// validated; DomainError names the first failing law and its witness.
CoordinateQuadruple load_quadruple(const std::string &source);

}  // namespace rglie
