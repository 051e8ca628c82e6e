#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "galloop/cli.hpp"

using namespace galloop;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("galloop_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cli: frame text parsing") {
  const FrameFile f = parse_frame_text("# rotating about z\nOmega = [0, 0, 1 + t]\na = [t, 0, 0]\nt0 = 0.25\n");
  CHECK(f.t0 == 0.25);
  CHECK_FALSE(f.frame.R.has_value());
  CHECK(approx_equal(f.frame.omega_dot(), Vec3Fn::constant({0, 0, 1})));
  const FrameFile r = parse_frame_text("R = [cos(2*t), -1*sin(2*t), 0, sin(2*t), cos(2*t), 0, 0, 0, 1]");
  REQUIRE(r.frame.R.has_value());
  CHECK(approx_equal(r.frame.omega(), Vec3Fn::constant({0, 0, 2}), 1e-12));
  CHECK_FALSE(r.t0.has_value());
  CHECK_THROWS_AS(parse_frame_text(""), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("Omega = [0, 0]"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("Omega = [0, 0, x]"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("Omega = [0, 0, 1]\nspin = 1"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("Omega [0, 0, 1]"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("Omega = [0, 0, 1]\nt0 = 1x"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("R = [2,0,0, 0,1,0, 0,0,1]"), ConfigError);
  CHECK_THROWS_AS(parse_frame_text("R = [1,0,0, 0,1,0, 0,0,1]\nOmega = [0,0,1]"), ConfigError);
  CHECK_THROWS_AS(load_frame_file("/nonexistent/frame.txt"), ConfigError);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify", "--samples", "0"}).code == 2);
  CHECK(run({"verify", "--atol", "-1"}).code == 2);
  CHECK(run({"verify", "--mass", "0"}).code == 2);
  CHECK(run({"verify", "--time-shift-sign", "2"}).code == 2);
  CHECK(run({"verify", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "--format", "csv"}).code == 2);
  CHECK(run({"gauge", "--frame", "/nonexistent/frame.txt"}).code == 2);
  CHECK(run({"gauge", "--frame", temp_file("bad.txt", "Omega = [1, 2]\n")}).code == 2);
  CHECK(run({"loop-phase", "--lx", "0"}).code == 2);
  CHECK(run({"loop-phase", "--normal", "0,0,0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: loop-phase") {
  const Run r = run({"loop-phase"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["data"]["phase"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(j["data"]["stokes"].get<double>() == 4.0);
  const auto perp = nlohmann::json::parse(run({"loop-phase", "--normal", "1,0,0"}).out);
  CHECK(std::abs(perp["data"]["phase"].get<double>()) < 1e-12);
  const auto big = nlohmann::json::parse(run({"loop-phase", "--lx", "2"}).out);
  CHECK(big["data"]["phase"].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
  const auto heavy = nlohmann::json::parse(run({"loop-phase", "--mass", "3"}).out);
  CHECK(heavy["data"]["phase"].get<double>() == doctest::Approx(12.0).epsilon(1e-12));
  const Run csv = run({"loop-phase", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("omega,area,phase\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);
}

TEST_CASE("cli: gauge") {
  const Run r = run({"gauge"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["checks"]) CHECK(c["pass"].get<bool>());
  CHECK(j["config"]["command"] == "gauge");
  // Omega = 0: all fields vanish.
  const auto zero = nlohmann::json::parse(run({"gauge", "--frame", temp_file("zero.txt", "Omega = [0, 0, 0]\n")}).out);
  CHECK(zero["data"]["omega"] == nlohmann::json::array({0.0, 0.0, 0.0}));
  CHECK(zero["data"]["A_multiplicative_coefficient"] == nlohmann::json::array({0.0, 0.0, 0.0}));
  // Omega = (0, 0, 1 + t): the sign finding is reported.
  const Run v = run({"gauge", "--frame", temp_file("vary.txt", "Omega = [0, 0, 1 + t]\nt0 = 0.8\n")});
  CHECK(v.code == 0);
  const auto jv = nlohmann::json::parse(v.out);
  bool flagged = false;
  for (const auto& f : jv["findings"]) {
    if (f["detail"].get<std::string>().find("substitution-derived") != std::string::npos) flagged = true;
  }
  CHECK(flagged);
  CHECK(jv["data"]["residual_substitution_A0"].get<double>() < 1e-5);
  CHECK(jv["data"]["residual_printed_A0"].get<double>() > 1e-3);
  const Run csv = run({"gauge", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("component,q_x,q_y,re,im\n", 0) == 0);
}

TEST_CASE("cli: --out writes the report to a file") {
  const auto path = (std::filesystem::temp_directory_path() / "galloop_test_out.json").string();
  std::filesystem::remove(path);
  const Run r = run({"loop-phase", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(nlohmann::json::parse(in)["suite"] == "loop-phase");
}

TEST_CASE("cli: impossible tolerance fails with exit 1") {
  const Run r = run({"loop-phase", "--atol", "1e-300"});
  CHECK(r.code == 1);
  CHECK(r.err.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: reports are deterministic and independent of the execution mode") {
  VerifyConfig a;
  a.samples = 3;
  VerifyConfig b = a;
  b.exec = Exec::serial;
  for (auto suite : {&verify_timefn, &verify_linegroup, &verify_cocycles, &verify_lineloop, &verify_galrep}) {
    const std::string x = suite(a).to_json(false).dump();
    CHECK(x == suite(a).to_json(false).dump());
    CHECK(x == suite(b).to_json(false).dump());
  }
  VerifyConfig c = a;
  c.seed = a.seed + 1;
  CHECK(verify_cocycles(a).to_json(false).dump() != verify_cocycles(c).to_json(false).dump());
}
