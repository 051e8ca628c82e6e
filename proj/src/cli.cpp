#include "galloop/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace galloop {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

nlohmann::json config_json(const RunConfig& cfg, const std::string& command) {
  const VerifyConfig& v = cfg.verify;
  nlohmann::json j{{"command", command},
                   {"seed", v.seed},
                   {"mass", v.mass},
                   {"drop_aq_gauge", v.drop_aq_gauge},
                   {"time_shift_sign", v.time_shift_sign},
                   {"format", cfg.format}};
  j["samples"] = v.samples ? nlohmann::json(*v.samples) : nlohmann::json("default");
  j["atol"] = v.atol ? nlohmann::json(*v.atol) : nlohmann::json("default");
  j["frame"] = cfg.frame_path ? nlohmann::json(*cfg.frame_path) : nlohmann::json("default");
  return j;
}

FrameFile resolve_frame(const RunConfig& cfg) {
  if (cfg.frame_path) return load_frame_file(*cfg.frame_path);
  return {default_frame(), std::nullopt};
}

double resolve_t0(const RunConfig& cfg, const FrameFile& f) { return cfg.t0.value_or(f.t0.value_or(0.5)); }

}  // namespace

FrameFile parse_frame_text(std::string_view text) {
  std::optional<Mat3Fn> r;
  std::optional<Vec3Fn> omega;
  Vec3Fn a{};
  FrameFile out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "frame line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "R") {
        const auto e = parse_trigpoly_list(value);
        if (e.size() != 9) throw ConfigError(where + "R needs 9 entries");
        Mat3Fn m;
        for (int i = 0; i < 9; ++i) m.e[i] = e[i];
        r = std::move(m);
      } else if (key == "Omega" || key == "a") {
        const auto e = parse_trigpoly_list(value);
        if (e.size() != 3) throw ConfigError(where + key + " needs 3 entries");
        Vec3Fn v{{e[0], e[1], e[2]}};
        (key == "a" ? a : omega.emplace()) = std::move(v);
      } else if (key == "t0") {
        std::size_t used = 0;
        const std::string s(value);
        out.t0 = std::stod(s, &used);
        if (used != s.size()) throw ConfigError(where + "bad t0");
      } else {
        throw ConfigError(where + "unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ConfigError(where + e.what());
    } catch (const std::invalid_argument&) {
      throw ConfigError(where + "bad number");
    }
  }
  if (r && omega) throw ConfigError("frame: give either R or Omega, not both");
  if (r) {
    if (!is_rotation(*r)) throw ConfigError("frame: R is not a rotation");
    out.frame = FrameSpec::from_rotation(std::move(*r), std::move(a));
  } else if (omega) {
    out.frame = FrameSpec::from_angular_velocity(std::move(*omega), std::move(a));
  } else {
    throw ConfigError("frame: needs R or Omega");
  }
  return out;
}

FrameFile load_frame_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read frame file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_frame_text(buf.str());
}

FrameSpec default_frame() { return FrameSpec::from_angular_velocity(Vec3Fn::constant({0.0, 0.0, 1.0})); }

Report cmd_verify(const RunConfig& cfg) {
  Report r = verify_all(cfg.verify);
  r.config = config_json(cfg, "verify");
  return r;
}

GaugeOutput cmd_gauge(const RunConfig& cfg, const FrameSpec& frame, double t0) {
  const auto start = std::chrono::steady_clock::now();
  const Mass m(cfg.verify.mass);
  const bool drop = cfg.verify.drop_aq_gauge;
  GridOptions opt;
  opt.exec = cfg.verify.exec;
  const GaugeFields f = gauge_fields(frame, t0, m, drop);
  const GridWavefunction psi = GridWavefunction::gaussian(17, 0.25, m, 0.28);
  const GridWavefunction h = hamiltonian_apply(frame, psi, t0, opt, drop);
  const double printed = relative_residual(gauge_hamiltonian_apply(f, A0Variant::printed, psi, opt), h, opt.exec);
  const double subst = relative_residual(gauge_hamiltonian_apply(f, A0Variant::substitution, psi, opt), h, opt.exec);
  const double atol = cfg.verify.atol.value_or(1e-5);

  GaugeOutput out;
  Report& r = out.report;
  r.suite = "gauge";
  r.config = config_json(cfg, "gauge");
  r.config["t0"] = t0;
  r.checks.push_back(CheckRecord::make("gauge.hamiltonian_equivalence", 1, std::min(printed, subst), atol));
  r.data["omega"] = vec_json(f.omega);
  r.data["omega_dot"] = vec_json(f.omega_dot);
  r.data["vector_potential"] = "A = 2m Omega x X + m Omega x a_q, a_q = q t0";
  r.data["A_multiplicative_coefficient"] = vec_json(drop ? Vec3{} : Vec3{m.value() * t0 * f.omega[0],
                                                                          m.value() * t0 * f.omega[1],
                                                                          m.value() * t0 * f.omega[2]});
  r.data["residual_printed_A0"] = printed;
  r.data["residual_substitution_A0"] = subst;
  const bool omega_dot_zero = f.omega_dot == Vec3{};
  if (!omega_dot_zero && t0 != 0.0) {
    const char* which = subst < atol && printed >= atol   ? "substitution-derived"
                        : printed < atol && subst >= atol ? "printed"
                                                          : "neither uniquely";
    r.findings.push_back({"scalar potential Omegadot sign",
                          std::string("Omegadot != 0: printed A0 residual ") + fmt(printed) +
                              ", substitution-derived A0 residual " + fmt(subst) + "; matching variant: " + which});
  }
  std::ostringstream csv;
  csv << "component,q_x,q_y,re,im\n";
  const auto emit = [&](const char* name, const GridWavefunction& g) {
    std::ostringstream block;
    write_grid_slice_csv(block, g, false);
    std::istringstream lines(block.str());
    for (std::string line; std::getline(lines, line);) csv << name << ',' << line << '\n';
  };
  const GridVector a_psi = vector_potential_apply(f, psi, opt);
  emit("psi", psi);
  emit("A_x psi", a_psi[0]);
  emit("A_y psi", a_psi[1]);
  emit("A_z psi", a_psi[2]);
  out.csv = csv.str();
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

LoopPhaseOutput cmd_loop_phase(const RunConfig& cfg, const FrameSpec& frame, double t0) {
  const auto start = std::chrono::steady_clock::now();
  if (!(cfg.lx > 0.0) || !(cfg.ly > 0.0)) throw ConfigError("loop sides must be positive");
  if (norm(cfg.normal) == 0.0) throw ConfigError("loop normal must be nonzero");
  const Mass m(cfg.verify.mass);
  const Vec3 w = frame.omega().at(t0);
  const double area = cfg.lx * cfg.ly;
  const auto phase_of = [&](const Vec3& omega, double lx, double ly) {
    return loop_phase(rotating_frame_field(m, omega), rectangle_path(cfg.normal, lx, ly));
  };
  const double phase = phase_of(w, cfg.lx, cfg.ly);
  const double stokes = sagnac_phase(m, w, cfg.normal, area);
  const double atol = cfg.verify.atol.value_or(1e-9);

  LoopPhaseOutput out;
  Report& r = out.report;
  r.suite = "loop-phase";
  r.config = config_json(cfg, "loop-phase");
  r.config["t0"] = t0;
  r.config["lx"] = cfg.lx;
  r.config["ly"] = cfg.ly;
  r.config["normal"] = vec_json(cfg.normal);
  r.checks.push_back(CheckRecord::make("loop_phase.stokes_agreement", 1, std::abs(phase - stokes), atol));
  const Vec3 w2{2 * w[0], 2 * w[1], 2 * w[2]};
  const double lin = std::max(std::abs(phase_of(w2, cfg.lx, cfg.ly) - 2 * phase),
                              std::abs(phase_of(w, 2 * cfg.lx, cfg.ly) - 2 * phase));
  r.checks.push_back(CheckRecord::make("loop_phase.linearity", 1, lin, atol));
  r.data["field"] = "A(x) = 2m Omega x x";
  r.data["omega"] = vec_json(w);
  r.data["area"] = area;
  r.data["phase"] = phase;
  r.data["stokes"] = stokes;

  std::vector<LoopPhaseSample> rows;
  for (double ws : {0.5, 1.0, 2.0}) {
    for (double as : {0.25, 1.0, 4.0}) {
      const Vec3 wv{ws * w[0], ws * w[1], ws * w[2]};
      const double side = std::sqrt(as);
      rows.push_back({ws * norm(w), as * area, phase_of(wv, side * cfg.lx, side * cfg.ly)});
    }
  }
  std::ostringstream csv;
  write_loop_sweep_csv(csv, rows);
  out.csv = csv.str();
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galilean line loop: verification, rotating-frame gauge fields and loop phases"};
  app.require_subcommand(1);
  RunConfig cfg;
  int samples = 0;
  double atol = 0.0;
  std::string frame_path, out_path;
  double t0 = 0.0;
  std::vector<double> normal;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.verify.seed, "RNG seed")->capture_default_str();
    sub->add_option("--samples", samples, "samples per check (overrides defaults)")->check(CLI::PositiveNumber);
    sub->add_option("--atol", atol, "tolerance (overrides defaults)")->check(CLI::PositiveNumber);
    sub->add_option("--mass", cfg.verify.mass, "particle mass")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--frame", frame_path, "frame file")->check(CLI::ExistingFile);
    sub->add_flag("--drop-aq-gauge", cfg.verify.drop_aq_gauge, "drop the a_q/2 pieces of the gauge fields");
    sub->add_option("--time-shift-sign", cfg.verify.time_shift_sign, "sign convention of the time-shift term")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  CLI::App* verify = app.add_subcommand("verify", "run all property suites");
  CLI::App* gauge = app.add_subcommand("gauge", "gauge potentials of the configured frame");
  CLI::App* loop = app.add_subcommand("loop-phase", "closed-loop phase of the rotating-frame field");
  add_common(verify);
  add_common(gauge);
  add_common(loop);
  for (CLI::App* sub : {gauge, loop}) sub->add_option("--t0", t0, "evaluation time (default: frame file t0, else 0.5)");
  loop->add_option("--lx", cfg.lx, "side along the first in-plane axis")->check(CLI::PositiveNumber)->capture_default_str();
  loop->add_option("--ly", cfg.ly, "side along the second in-plane axis")->check(CLI::PositiveNumber)->capture_default_str();
  loop->add_option("--normal", normal, "loop normal x,y,z")->delimiter(',')->expected(3);

  std::vector<const char*> argv{"galloop"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  CLI::App* active = app.get_subcommands().front();
  const auto given = [active](const std::string& name) {
    const CLI::Option* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--samples")) cfg.verify.samples = samples;
  if (given("--atol")) cfg.verify.atol = atol;
  if (given("--frame")) cfg.frame_path = frame_path;
  if (given("--out")) cfg.out_path = out_path;
  if (given("--t0")) cfg.t0 = t0;
  if (!normal.empty()) cfg.normal = {normal[0], normal[1], normal[2]};

  try {
    Report report;
    std::string csv;
    if (active == verify) {
      if (cfg.format == "csv") throw ConfigError("verify produces JSON only");
      report = cmd_verify(cfg);
    } else {
      const FrameFile ff = resolve_frame(cfg);
      const double when = resolve_t0(cfg, ff);
      if (active == gauge) {
        GaugeOutput g = cmd_gauge(cfg, ff.frame, when);
        report = std::move(g.report);
        csv = std::move(g.csv);
      } else {
        LoopPhaseOutput l = cmd_loop_phase(cfg, ff.frame, when);
        report = std::move(l.report);
        csv = std::move(l.csv);
      }
    }
    const std::string text = cfg.format == "csv" ? csv : report.to_json().dump(2) + "\n";
    if (cfg.out_path) {
      std::ofstream f(*cfg.out_path);
      if (!f) throw ConfigError("cannot write '" + *cfg.out_path + "'");
      f << text;
    } else {
      out << text;
    }
    for (const auto& c : report.checks) {
      if (!c.pass) err << "FAIL " << c.check << " max_residual=" << c.max_residual << " atol=" << c.atol << "\n";
    }
    return report.all_pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace galloop
