// Machine-checkable verification reports.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace galloop {

struct CheckRecord {
  std::string check;
  int n_samples = 0;
  double max_residual = 0.0;
  double atol = 0.0;
  bool pass = false;

  /// pass is max_residual < atol (NaN fails).
  static CheckRecord make(std::string check, int n_samples, double max_residual, double atol);
};

/// Free-text record for convention discrepancies; never affects pass/fail.
struct Finding {
  std::string topic;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::vector<Finding> findings;
  nlohmann::json config = nlohmann::json::object();
  /// Command outputs (fields, phases) beyond the checks.
  nlohmann::json data = nlohmann::json::object();
  double wall_time_s = 0.0;

  bool all_pass() const;
  const CheckRecord* find(const std::string& check) const;
  /// Checks sorted by name; wall time under "wall_time_s".
  nlohmann::json to_json(bool include_wall_time = true) const;
};

}  // namespace galloop
