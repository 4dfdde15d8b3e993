#include <cmath>
#include <fstream>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

namespace gphase {

using nlohmann::json;

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  try {
    params.validate();
  } catch (const ContractViolation& e) {
    fail(e.what());
  }
  if (!(contour.radius > 0.0) || !std::isfinite(contour.radius)) fail("contour radius must be positive");
  if (contour.n_samples < ContourSpec::kMinSamples) fail("contour needs at least 16 samples");
  if (!std::isfinite(contour.center.real()) || !std::isfinite(contour.center.imag()))
    fail("contour center must be finite");
  if (!std::isfinite(x0) || !std::isfinite(x1) || !(x0 < x1)) fail("need x0 < x1");
  if (!(integrator.h_store > 0.0)) fail("store step must be positive");
  if (!(integrator.rel_tol > 0.0) || !(integrator.abs_tol > 0.0)) fail("tolerances must be positive");
  if (integrator.max_steps == 0) fail("max_steps must be positive");
  try {
    storage_grid(x0, x1, integrator.h_store);
  } catch (const ContractViolation& e) {
    fail(e.what());
  }
  if (!(s_max >= 0.0) || !(s_step > 0.0)) fail("spectrum sampling needs s_max >= 0 and s_step > 0");
  if (!(clearance_warning >= 0.0)) fail("clearance warning threshold must be nonnegative");
}

void apply_fast_profile(RunConfig& cfg) {
  cfg.fast = true;
  cfg.contour.n_samples = 1000;
  cfg.integrator.rel_tol = 1e-6;
}

double acceptance_tolerance(const RunConfig& cfg) { return cfg.fast ? 0.1 : 0.05; }

std::string quadrature_name(Quadrature q) { return q == Quadrature::euler ? "euler" : "trapezoid"; }

Quadrature parse_quadrature(const std::string& s) {
  if (s == "euler") return Quadrature::euler;
  if (s == "trapezoid") return Quadrature::trapezoid;
  throw ConfigError("quadrature must be 'euler' or 'trapezoid', got '" + s + "'");
}

namespace {

std::string form_name(CoefficientForm f) { return f == CoefficientForm::linearized ? "linearized" : "printed"; }

CoefficientForm parse_form(const std::string& s) {
  if (s == "linearized") return CoefficientForm::linearized;
  if (s == "printed") return CoefficientForm::printed;
  throw ConfigError("coefficients must be 'linearized' or 'printed', got '" + s + "'");
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json j;
  if (c.preset) j["preset"] = *c.preset;
  j["params"] = {{"rho", c.params.rho},
                 {"psi", c.params.psi},
                 {"omega", c.params.omega},
                 {"coefficients", form_name(c.params.form)}};
  j["contour"] = {{"center", {c.contour.center.real(), c.contour.center.imag()}},
                  {"radius", c.contour.radius},
                  {"samples", c.contour.n_samples}};
  j["x0"] = c.x0;
  j["x1"] = c.x1;
  j["store_step"] = c.integrator.h_store;
  j["integrator"] = {{"rel_tol", c.integrator.rel_tol},
                     {"abs_tol", c.integrator.abs_tol},
                     {"max_steps", c.integrator.max_steps},
                     {"rescale", c.integrator.rescale}};
  j["quadrature"] = quadrature_name(c.quadrature);
  j["output"] = {{"dir", c.out_dir.string()}, {"csv", c.emit_csv}, {"json", c.emit_json}, {"svg", c.emit_svg}};
  j["jobs"] = c.jobs;
  j["fast"] = c.fast;
  j["spectrum"] = {{"s_max", c.s_max}, {"s_step", c.s_step}, {"clearance_warning", c.clearance_warning}};
  return j;
}

RunConfig config_from_json(const json& j, RunConfig c) {
  try {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    if (j.contains("preset")) {
      c.preset = j.at("preset").get<std::string>();
      c.params = preset(*c.preset);
    }
    if (j.contains("params")) {
      const json& p = j.at("params");
      if (!j.contains("preset")) c.preset.reset();
      c.params.rho = p.value("rho", c.params.rho);
      c.params.psi = p.value("psi", c.params.psi);
      c.params.omega = p.value("omega", c.params.omega);
      if (p.contains("coefficients")) c.params.form = parse_form(p.at("coefficients").get<std::string>());
    }
    // Explicit fields below override the profile.
    if (j.value("fast", false)) apply_fast_profile(c);
    if (j.contains("contour")) {
      const json& k = j.at("contour");
      if (k.contains("center")) {
        const auto xy = k.at("center").get<std::vector<double>>();
        if (xy.size() != 2) throw ConfigError("contour.center must be [re, im]");
        c.contour.center = {xy[0], xy[1]};
      }
      c.contour.radius = k.value("radius", c.contour.radius);
      if (k.contains("samples")) {
        const auto n = k.at("samples").get<long long>();
        if (n < 0) throw ConfigError("contour.samples must be nonnegative");
        c.contour.n_samples = static_cast<std::size_t>(n);
      }
    }
    c.x0 = j.value("x0", c.x0);
    c.x1 = j.value("x1", c.x1);
    c.integrator.h_store = j.value("store_step", c.integrator.h_store);
    if (j.contains("integrator")) {
      const json& g = j.at("integrator");
      c.integrator.rel_tol = g.value("rel_tol", c.integrator.rel_tol);
      c.integrator.abs_tol = g.value("abs_tol", c.integrator.abs_tol);
      c.integrator.max_steps = g.value("max_steps", c.integrator.max_steps);
      c.integrator.rescale = g.value("rescale", c.integrator.rescale);
    }
    if (j.contains("quadrature")) c.quadrature = parse_quadrature(j.at("quadrature").get<std::string>());
    if (j.contains("output")) {
      const json& o = j.at("output");
      if (o.contains("dir")) c.out_dir = o.at("dir").get<std::string>();
      c.emit_csv = o.value("csv", c.emit_csv);
      c.emit_json = o.value("json", c.emit_json);
      c.emit_svg = o.value("svg", c.emit_svg);
    }
    c.jobs = j.value("jobs", c.jobs);
    if (j.contains("spectrum")) {
      const json& s = j.at("spectrum");
      c.s_max = s.value("s_max", c.s_max);
      c.s_step = s.value("s_step", c.s_step);
      c.clearance_warning = s.value("clearance_warning", c.clearance_warning);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace gphase
