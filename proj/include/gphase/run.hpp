#pragma once

// Experiment configuration, orchestration and artifact writing behind the
// `gphase` command line tool.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gphase/cglmodel.hpp"
#include "gphase/contour.hpp"
#include "gphase/odeint.hpp"
#include "gphase/oracle.hpp"
#include "gphase/phase.hpp"

namespace gphase {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitValidation = 4 };

struct RunConfig {
  std::optional<std::string> preset = std::string(kDefaultPreset);
  SystemParams params = gphase::preset(kDefaultPreset);
  ContourSpec contour{{15.0, 0.0}, 0.1, 10000};
  double x0 = -10.0;
  double x1 = 10.0;
  IntegratorConfig integrator;
  Quadrature quadrature = Quadrature::euler;
  std::filesystem::path out_dir = "out";
  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = true;
  std::size_t jobs = 0;
  bool fast = false;
  double s_max = 100.0;
  double s_step = 0.01;
  double clearance_warning = 1e-2;

  // Throws ConfigError on any out-of-range field.
  void validate() const;
};

// n_samples = 1000, rel_tol = 1e-6.
void apply_fast_profile(RunConfig& cfg);

// Terminal-phase tolerance for a profile: 0.05, or 0.1 with --fast.
double acceptance_tolerance(const RunConfig& cfg);

nlohmann::json config_to_json(const RunConfig& cfg);
// Missing keys keep their defaults. Throws ConfigError on bad types or values.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

std::string quadrature_name(Quadrature q);
Quadrature parse_quadrature(const std::string& s);

// ------------------------------------------------------------- commands

struct PhaseRun {
  PhaseSeries series;
  Clearance clearance;
  double terminal = 0.0;
  int count = 0;
  double rounding_residual = 0.0;
  double max_jump = 0.0;
  std::optional<double> plateau_x;
  double runtime_seconds = 0.0;
};

struct EvansRun {
  EvansTrace trace;
  Winding winding;
  Clearance clearance;
  double runtime_seconds = 0.0;
};

struct SpectrumRow {
  double s;
  Branch branch;
  cplx value;
};

struct SpectrumRun {
  std::vector<SpectrumRow> rows;
  Clearance clearance;
};

PhaseRun run_phase(const RunConfig& cfg);
EvansRun run_evans(const RunConfig& cfg);
SpectrumRun run_spectrum(const RunConfig& cfg);

// Write the artifacts of a finished run into cfg.out_dir.
void write_phase_artifacts(const RunConfig& cfg, const PhaseRun& run);
void write_evans_artifacts(const RunConfig& cfg, const EvansRun& run);
void write_spectrum_artifacts(const RunConfig& cfg, const SpectrumRun& run);

// Serialized forms, shared by the writers and the tests.
std::string format_number(double v);  // 17 significant digits
std::string phase_csv(const PhaseSeries& s);
std::string evans_csv(const EvansTrace& t);
std::string spectrum_csv(const SpectrumRun& r);
nlohmann::json phase_summary(const RunConfig& cfg, const PhaseRun& run);
nlohmann::json evans_summary(const RunConfig& cfg, const EvansRun& run);
nlohmann::json spectrum_summary(const RunConfig& cfg, const SpectrumRun& run);

struct SvgSeries {
  std::string title;
  std::string x_label;
  std::string y_label;
};
std::string line_chart_svg(std::span<const double> x, std::span<const double> y, const SvgSeries& labels);

// Each command runs, writes artifacts, logs a one-line result and returns an
// exit code. Exceptions are left to the caller.
int cmd_phase(const RunConfig& cfg, std::ostream& log);
int cmd_evans(const RunConfig& cfg, std::ostream& log);
int cmd_spectrum(const RunConfig& cfg, std::ostream& log);

// ------------------------------------------------------------- validation

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

using Field4Fn = std::function<Mat4(double, cplx, const SystemParams&)>;

struct ValidateOptions {
  std::size_t loop_samples = 10000;  // synthetic winding loops
  double winding_tolerance = 1e-4;
  SystemParams params = gphase::preset(kDefaultPreset);
  // The C^4 field checked against the compound field; replaceable for fault
  // injection.
  Field4Fn field4 = [](double x, cplx l, const SystemParams& P) { return gphase::field4(x, l, P); };
};

// ValidateOptions for the reduced profile: 1000 loop samples, tolerance 1e-3.
ValidateOptions fast_validate_options();

std::vector<CheckResult> run_validation(const ValidateOptions& opt = {});
// Prints a pass/fail table; returns kExitOk or kExitValidation.
int cmd_validate(const ValidateOptions& opt, std::ostream& out);

}  // namespace gphase
