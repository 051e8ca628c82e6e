// Property suites over seeded random samples. Each check draws its samples
// serially from the seed, evaluates them independently (OpenMP or serial)
// and reports the largest residual.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "galloop/noninertial.hpp"
#include "galloop/report.hpp"

namespace galloop {

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Overrides every check's sample count when set.
  std::optional<int> samples;
  /// Overrides every check's tolerance when set.
  std::optional<double> atol;
  double mass = 1.0;
  bool drop_aq_gauge = false;
  int time_shift_sign = +1;
  Exec exec = Exec::parallel;
};

/// One suite per module: "cli" is not a suite.
Report verify_timefn(const VerifyConfig& cfg);
Report verify_linegroup(const VerifyConfig& cfg);
Report verify_cocycles(const VerifyConfig& cfg);
Report verify_lineloop(const VerifyConfig& cfg);
Report verify_galrep(const VerifyConfig& cfg);
Report verify_noninertial(const VerifyConfig& cfg);

/// All suites merged into one report, checks ordered by name.
Report verify_all(const VerifyConfig& cfg);

}  // namespace galloop
