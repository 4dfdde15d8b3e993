#include <chrono>
#include <cmath>
#include <ostream>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

namespace gphase {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Clearance preflight(const RunConfig& cfg) {
  return contour_clearance(cfg.contour, cfg.params, {cfg.s_max, cfg.s_step, cfg.clearance_warning});
}

void warn_clearance(const Clearance& c, std::ostream& log) {
  if (c.low)
    log << "warning: contour passes within " << format_number(c.distance) << " of the essential spectrum\n";
}

}  // namespace

PhaseRun run_phase(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  PhaseRun r;
  r.clearance = preflight(cfg);
  const LoopField field = transport_loop(cfg.contour, cfg.params, cfg.x0, cfg.x1, cfg.integrator, {cfg.jobs, {}});
  r.series = phase_transition_series(field, cfg.quadrature, cfg.jobs);
  r.terminal = r.series.relative.back();
  r.count = static_cast<int>(std::lround(r.terminal));
  r.rounding_residual = std::abs(r.terminal - r.count);
  r.max_jump = max_jump(r.series.gp_at_x);
  if (const auto k = plateau_index(r.series.relative)) r.plateau_x = r.series.x_grid[*k];
  r.runtime_seconds = seconds_since(t0);
  return r;
}

EvansRun run_evans(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  EvansRun r;
  r.clearance = preflight(cfg);
  r.trace = evans_trace(cfg.contour, cfg.params, cfg.x0, cfg.x1, cfg.integrator, cfg.jobs);
  r.winding = winding_number(r.trace);
  r.runtime_seconds = seconds_since(t0);
  return r;
}

SpectrumRun run_spectrum(const RunConfig& cfg) {
  cfg.validate();
  SpectrumRun r;
  const auto steps = static_cast<std::size_t>(std::llround(cfg.s_max / cfg.s_step));
  r.rows.reserve(2 * (steps + 1));
  for (const Branch b : {Branch::plus, Branch::minus})
    for (std::size_t k = 0; k <= steps; ++k) {
      const double s = static_cast<double>(k) * cfg.s_step;
      r.rows.push_back({s, b, essential_spectrum(s, b, cfg.params)});
    }
  r.clearance = preflight(cfg);
  return r;
}

int cmd_phase(const RunConfig& cfg, std::ostream& log) {
  const PhaseRun r = run_phase(cfg);
  warn_clearance(r.clearance, log);
  write_phase_artifacts(cfg, r);
  log << "terminal relative phase " << format_number(r.terminal) << " (count " << r.count << ", residual "
      << format_number(r.rounding_residual) << ", initial phase " << format_number(r.series.gp_initial) << ")\n";
  return kExitOk;
}

int cmd_evans(const RunConfig& cfg, std::ostream& log) {
  const EvansRun r = run_evans(cfg);
  warn_clearance(r.clearance, log);
  write_evans_artifacts(cfg, r);
  log << "Evans winding " << r.winding.winding << " (residual " << format_number(r.winding.residual) << ")\n";
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  const SpectrumRun r = run_spectrum(cfg);
  warn_clearance(r.clearance, log);
  write_spectrum_artifacts(cfg, r);
  log << "essential spectrum: " << r.rows.size() << " rows, contour clearance " << format_number(r.clearance.distance)
      << "\n";
  return kExitOk;
}

}  // namespace gphase
