#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

using namespace gphase;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("gphase_test_" + name);
  fs::remove_all(d);
  return d;
}

RunConfig small_config(const fs::path& out) {
  RunConfig c;
  c.contour.n_samples = 64;
  c.integrator.rel_tol = 1e-6;
  c.out_dir = out;
  c.jobs = 1;
  return c;
}

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("format_number round trips") {
  for (double v : {0.1, -6.6357, 1.0 / 3.0, 1e-300, 12345.678})
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.contour = {{-6.6357, 0.25}, 0.2, 500};
  c.x0 = -12.0;
  c.x1 = 14.0;
  c.integrator.rel_tol = 1e-7;
  c.integrator.rescale = false;
  c.quadrature = Quadrature::trapezoid;
  c.jobs = 3;
  c.s_max = 50.0;
  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.contour.center == c.contour.center);
  CHECK(back.contour.n_samples == 500);
  CHECK(back.quadrature == Quadrature::trapezoid);
  CHECK_FALSE(back.integrator.rescale);
}

TEST_CASE("partial config keeps defaults") {
  const RunConfig c = config_from_json(nlohmann::json::parse(R"({"contour": {"center": [0, 0]}})"));
  CHECK(c.contour.center == cplx(0.0));
  CHECK(c.contour.radius == 0.1);
  CHECK(c.contour.n_samples == 10000);
  CHECK(c.x1 == 10.0);
}

TEST_CASE("fast profile is overridable") {
  const RunConfig c =
      config_from_json(nlohmann::json::parse(R"({"fast": true, "contour": {"samples": 300}})"));
  CHECK(c.contour.n_samples == 300);
  CHECK(c.integrator.rel_tol == 1e-6);
  CHECK(acceptance_tolerance(c) == 0.1);
  CHECK(acceptance_tolerance(RunConfig{}) == 0.05);
}

TEST_CASE("config validation") {
  using nlohmann::json;
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"contour": {"radius": -1}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"contour": {"samples": 8}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"x0": 5, "x1": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"quadrature": "simpson"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"preset": "nope"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"contour": {"center": "zero"}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"integrator": {"rel_tol": 0}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"x0": -10.01})")), ConfigError);
  CHECK_THROWS_AS(load_config(scratch("missing") / "none.json"), ConfigError);

  const fs::path d = scratch("badjson");
  fs::create_directories(d);
  std::ofstream(d / "c.json") << "{ not json";
  CHECK_THROWS_AS(load_config(d / "c.json"), ConfigError);
}

TEST_CASE("phase artifacts") {
  const fs::path d = scratch("phase");
  RunConfig c = small_config(d);
  REQUIRE(cmd_phase(c, std::cout) == kExitOk);

  const std::string csv = slurp(d / "phase_series.csv");
  CHECK(first_line(csv) == "x,gp_at_x,relative");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 502);

  const auto j = nlohmann::json::parse(slurp(d / "summary.json"));
  for (const char* key : {"terminal_relative_phase", "count", "rounding_residual", "gp_initial", "gp_terminal",
                          "max_jump", "plateau_x", "clearance", "config", "timing"})
    CHECK(j.contains(key));
  CHECK(j["count"] == 1);
  CHECK(j["config"] == config_to_json(c));

  const std::string svg = slurp(d / "phase_transition.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("relative phase") != std::string::npos);
}

TEST_CASE("phase runs are reproducible") {
  const fs::path a = scratch("repro_a"), b = scratch("repro_b");
  RunConfig ca = small_config(a), cb = small_config(b);
  cb.jobs = 2;
  cmd_phase(ca, std::cout);
  cmd_phase(cb, std::cout);
  CHECK(slurp(a / "phase_series.csv") == slurp(b / "phase_series.csv"));
  auto ja = without_timing(nlohmann::json::parse(slurp(a / "summary.json")));
  auto jb = without_timing(nlohmann::json::parse(slurp(b / "summary.json")));
  ja["config"].erase("output");
  jb["config"].erase("output");
  ja["config"].erase("jobs");
  jb["config"].erase("jobs");
  CHECK(ja == jb);
}

TEST_CASE("evans artifacts") {
  const fs::path d = scratch("evans");
  RunConfig c = small_config(d);
  c.contour.n_samples = 100;
  REQUIRE(cmd_evans(c, std::cout) == kExitOk);
  const std::string csv = slurp(d / "evans_trace.csv");
  CHECK(first_line(csv) == "re_lambda,im_lambda,re_E,im_E,log_mag,unwrapped_arg");
  CHECK(nlohmann::json::parse(slurp(d / "summary.json"))["winding"] == 1);
}

TEST_CASE("spectrum artifacts") {
  const fs::path d = scratch("spectrum");
  RunConfig c = small_config(d);
  c.s_max = 2.0;
  c.s_step = 0.5;
  REQUIRE(cmd_spectrum(c, std::cout) == kExitOk);
  const std::string csv = slurp(d / "essential_spectrum.csv");
  CHECK(first_line(csv) == "s,branch,re,im");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 5);
  CHECK(run_spectrum(RunConfig{}).rows.size() == 2 * 10001);
}

TEST_CASE("artifact toggles") {
  const fs::path d = scratch("toggles");
  RunConfig c = small_config(d);
  c.emit_svg = false;
  c.emit_csv = false;
  cmd_phase(c, std::cout);
  CHECK(fs::exists(d / "summary.json"));
  CHECK_FALSE(fs::exists(d / "phase_series.csv"));
  CHECK_FALSE(fs::exists(d / "phase_transition.svg"));
}

TEST_CASE("validation suite") {
  const auto results = run_validation(fast_validate_options());
  for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
}

TEST_CASE("validation catches a corrupted coefficient") {
  ValidateOptions opt = fast_validate_options();
  opt.field4 = [](double x, cplx l, const SystemParams& P) {
    Mat4 m = field4(x, l, P);
    m(2, 0) = -m(2, 0);
    return m;
  };
  std::ostringstream out;
  CHECK(cmd_validate(opt, out) == kExitValidation);
  bool compound_failed = false;
  for (const auto& r : run_validation(opt))
    if (!r.passed && r.name.find("compound") != std::string::npos) compound_failed = true;
  CHECK(compound_failed);
}
