#pragma once
// Outcome of one mechanical verification.

#include <cstddef>
#include <string>
#include <vector>

namespace rglie {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t evaluated = 0;          // number of instances checked
  std::vector<std::string> witnesses;  // first few failures, human-readable
  std::string note;                    // free-form detail (dimensions, verdicts)

  static constexpr std::size_t kMaxWitnesses = 8;
  void fail(std::string witness) {
    passed = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }
  void expect(bool ok, const std::string &witness) {
    ++evaluated;
    if (!ok) fail(witness);
  }
};

}  // namespace rglie
