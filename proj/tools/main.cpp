// gphase: eigenvalue counting for the Hocking-Stewartson pulse by geometric
// phase, with an Evans-function winding cross-check.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> center;
  std::optional<double> radius;
  std::optional<std::size_t> samples;
  std::optional<double> x0;
  std::optional<double> x1;
  std::optional<double> store_step;
  std::optional<std::string> quadrature;
  bool no_rescale = false;
  std::optional<std::string> out;
  bool fast = false;
  std::optional<std::size_t> jobs;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--preset", f.preset, "named parameter preset");
  cmd->add_option("--center", f.center, "contour center as RE,IM");
  cmd->add_option("--radius", f.radius, "contour radius");
  cmd->add_option("--samples", f.samples, "contour samples");
  cmd->add_option("--x0", f.x0, "start of the x interval");
  cmd->add_option("--x1", f.x1, "end of the x interval");
  cmd->add_option("--store-step", f.store_step, "storage grid spacing");
  cmd->add_option("--quadrature", f.quadrature, "euler | trapezoid");
  cmd->add_flag("--no-rescale", f.no_rescale, "keep unnormalized states");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--fast", f.fast, "1000 samples, rel_tol 1e-6");
  cmd->add_option("--jobs", f.jobs, "worker threads (0 = auto)");
}

gphase::cplx parse_center(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw gphase::ConfigError("--center expects RE,IM, got '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw gphase::ConfigError("--center expects RE,IM, got '" + s + "'");
  }
  if (in >> comma) throw gphase::ConfigError("--center expects RE,IM, got '" + s + "'");
  return {re, im};
}

gphase::RunConfig build_config(const Flags& f) {
  gphase::RunConfig c = f.config ? gphase::load_config(*f.config) : gphase::RunConfig{};
  if (f.preset) {
    c.preset = *f.preset;
    c.params = gphase::preset(*f.preset);
  }
  if (f.fast) gphase::apply_fast_profile(c);
  if (f.center) c.contour.center = parse_center(*f.center);
  if (f.radius) c.contour.radius = *f.radius;
  if (f.samples) c.contour.n_samples = *f.samples;
  if (f.x0) c.x0 = *f.x0;
  if (f.x1) c.x1 = *f.x1;
  if (f.store_step) c.integrator.h_store = *f.store_step;
  if (f.quadrature) c.quadrature = gphase::parse_quadrature(*f.quadrature);
  if (f.no_rescale) c.integrator.rescale = false;
  if (f.out) c.out_dir = *f.out;
  if (f.jobs) c.jobs = *f.jobs;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count eigenvalues inside a spectral contour by geometric phase"};
  app.require_subcommand(1);

  Flags phase_flags, evans_flags, spectrum_flags;
  auto* phase = app.add_subcommand("phase", "relative geometric phase transition");
  add_run_flags(phase, phase_flags);
  auto* evans = app.add_subcommand("evans", "Evans-function winding number");
  add_run_flags(evans, evans_flags);
  auto* spectrum = app.add_subcommand("spectrum", "essential spectrum and contour clearance");
  add_run_flags(spectrum, spectrum_flags);
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  bool validate_fast = false;
  validate->add_flag("--fast", validate_fast, "reduced loop sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gphase::kExitConfig;
  }

  try {
    if (phase->parsed()) return gphase::cmd_phase(build_config(phase_flags), std::cout);
    if (evans->parsed()) return gphase::cmd_evans(build_config(evans_flags), std::cout);
    if (spectrum->parsed()) return gphase::cmd_spectrum(build_config(spectrum_flags), std::cout);
    if (validate->parsed())
      return gphase::cmd_validate(validate_fast ? gphase::fast_validate_options() : gphase::ValidateOptions{},
                                  std::cout);
  } catch (const gphase::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gphase::kExitConfig;
  } catch (const gphase::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return gphase::kExitNumerical;
  } catch (const gphase::ContractViolation& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return gphase::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return gphase::kExitOk;
}
