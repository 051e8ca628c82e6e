#include "galloop/report.hpp"

#include <algorithm>
#include <cmath>

namespace galloop {

CheckRecord CheckRecord::make(std::string check, int n_samples, double max_residual, double atol) {
  return {std::move(check), n_samples, max_residual, atol, max_residual < atol};
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* Report::find(const std::string& check) const {
  for (const auto& c : checks) {
    if (c.check == check) return &c;
  }
  return nullptr;
}

nlohmann::json Report::to_json(bool include_wall_time) const {
  std::vector<CheckRecord> sorted = checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
  nlohmann::json out;
  out["suite"] = suite;
  out["pass"] = all_pass();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : sorted) {
    nlohmann::json rec{{"check", c.check}, {"n_samples", c.n_samples}, {"atol", c.atol}, {"pass", c.pass}};
    // JSON has no infinity; non-finite residuals become strings.
    if (std::isfinite(c.max_residual)) {
      rec["max_residual"] = c.max_residual;
    } else {
      rec["max_residual"] = std::isnan(c.max_residual) ? "nan" : "inf";
    }
    list.push_back(std::move(rec));
  }
  out["checks"] = std::move(list);
  nlohmann::json f = nlohmann::json::array();
  for (const auto& x : findings) f.push_back({{"topic", x.topic}, {"detail", x.detail}});
  out["findings"] = std::move(f);
  out["config"] = config;
  if (!data.empty()) out["data"] = data;
  if (include_wall_time) out["wall_time_s"] = wall_time_s;
  return out;
}

}  // namespace galloop
