// Batch entry point: verify, gauge and loop-phase subcommands.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "galloop/verify.hpp"

namespace galloop {

/// Thrown for malformed configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame file contents. Keys (one "key = value" per line, '#' comments):
///   R     = [9 TrigPoly entries, row-major]    frame rotation
///   Omega = [3 TrigPoly entries]               angular velocity (instead of R)
///   a     = [3 TrigPoly entries]               frame translation (optional)
///   t0    = real                               evaluation time (optional)
struct FrameFile {
  FrameSpec frame;
  std::optional<double> t0;
};

FrameFile parse_frame_text(std::string_view text);
FrameFile load_frame_file(const std::string& path);

struct RunConfig {
  VerifyConfig verify;
  std::optional<std::string> frame_path;
  std::optional<double> t0;
  std::optional<std::string> out_path;
  std::string format = "json";
  // loop-phase geometry
  double lx = 1.0;
  double ly = 1.0;
  Vec3 normal{0.0, 0.0, 1.0};
};

/// Frame used when no frame file is given: constant Omega = z.
FrameSpec default_frame();

Report cmd_verify(const RunConfig& cfg);

struct GaugeOutput {
  Report report;
  std::string csv;
};
GaugeOutput cmd_gauge(const RunConfig& cfg, const FrameSpec& frame, double t0);

struct LoopPhaseOutput {
  Report report;
  std::string csv;
};
LoopPhaseOutput cmd_loop_phase(const RunConfig& cfg, const FrameSpec& frame, double t0);

/// Parses argv, runs the subcommand, writes the report or CSV to --out or
/// out, diagnostics to err. Returns 0 if every check passes, 1 if a check
/// fails, 2 on usage or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace galloop
