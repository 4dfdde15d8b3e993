#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

namespace gphase {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string phase_csv(const PhaseSeries& s) {
  std::string out = "x,gp_at_x,relative\n";
  for (std::size_t k = 0; k < s.x_grid.size(); ++k)
    out += format_number(s.x_grid[k]) + ',' + format_number(s.gp_at_x[k]) + ',' + format_number(s.relative[k]) + '\n';
  return out;
}

std::string evans_csv(const EvansTrace& t) {
  std::string out = "re_lambda,im_lambda,re_E,im_E,log_mag,unwrapped_arg\n";
  for (std::size_t j = 0; j < t.values.size(); ++j)
    out += format_number(t.lambdas[j].real()) + ',' + format_number(t.lambdas[j].imag()) + ',' +
           format_number(t.values[j].real()) + ',' + format_number(t.values[j].imag()) + ',' +
           format_number(t.log_magnitudes[j]) + ',' + format_number(t.unwrapped_arg[j]) + '\n';
  return out;
}

std::string spectrum_csv(const SpectrumRun& r) {
  std::string out = "s,branch,re,im\n";
  for (const auto& row : r.rows)
    out += format_number(row.s) + ',' + (row.branch == Branch::plus ? "+" : "-") + ',' +
           format_number(row.value.real()) + ',' + format_number(row.value.imag()) + '\n';
  return out;
}

namespace {

json clearance_json(const Clearance& c) { return {{"distance", c.distance}, {"low", c.low}}; }

}  // namespace

json phase_summary(const RunConfig& cfg, const PhaseRun& run) {
  json j;
  j["command"] = "phase";
  j["terminal_relative_phase"] = run.terminal;
  j["count"] = run.count;
  j["rounding_residual"] = run.rounding_residual;
  j["gp_initial"] = run.series.gp_initial;
  j["gp_terminal"] = run.series.gp_at_x.empty() ? 0.0 : run.series.gp_at_x.back();
  j["max_jump"] = run.max_jump;
  j["plateau_x"] = run.plateau_x ? json(*run.plateau_x) : json(nullptr);
  j["clearance"] = clearance_json(run.clearance);
  j["config"] = config_to_json(cfg);
  j["timing"] = {{"runtime_seconds", run.runtime_seconds}};
  return j;
}

json evans_summary(const RunConfig& cfg, const EvansRun& run) {
  json j;
  j["command"] = "evans";
  j["winding"] = run.winding.winding;
  j["residual"] = run.winding.residual;
  j["total_arg_change"] = run.trace.unwrapped_arg.back() - run.trace.unwrapped_arg.front();
  j["clearance"] = clearance_json(run.clearance);
  j["config"] = config_to_json(cfg);
  j["timing"] = {{"runtime_seconds", run.runtime_seconds}};
  return j;
}

json spectrum_summary(const RunConfig& cfg, const SpectrumRun& run) {
  json j;
  j["command"] = "spectrum";
  j["rows"] = run.rows.size();
  j["clearance"] = clearance_json(run.clearance);
  j["config"] = config_to_json(cfg);
  return j;
}

namespace {

// Round step (1, 2 or 5 times a power of ten) giving roughly `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

std::string tick_label(double v, double step) {
  char buf[32];
  const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step))));
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::abs(v) < 0.5 * step * 1e-9 ? 0.0 : v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string line_chart_svg(std::span<const double> x, std::span<const double> y, const SvgSeries& labels) {
  constexpr double W = 720, H = 440, left = 70, right = 20, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!x.empty()) {
    const auto [xa, xb] = std::minmax_element(x.begin(), x.end());
    const auto [ya, yb] = std::minmax_element(y.begin(), y.end());
    xmin = *xa, xmax = *xb, ymin = std::min(0.0, *ya), ymax = std::max(*yb, ymin + 1.0);
    if (xmax == xmin) xmax = xmin + 1.0;
  }
  const double ystep = nice_step(ymax - ymin, 5);
  ymin = std::floor(ymin / ystep) * ystep;
  ymax = std::ceil(ymax / ystep) * ystep;
  const double xstep = nice_step(xmax - xmin, 8);

  auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
    << xml_escape(labels.title) << "</text>\n";
  o << "<g stroke=\"black\" stroke-width=\"1\">\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
  o << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep; t += xstep) {
    o << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\"" << top + ph + 5
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << px(t) << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">" << tick_label(t, xstep)
      << "</text>\n";
  }
  for (double t = ymin; t <= ymax + 1e-9 * ystep; t += ystep) {
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
      << "\" stroke=\"black\"/>";
    o << "<line x1=\"" << left << "\" y1=\"" << py(t) << "\" x2=\"" << left + pw << "\" y2=\"" << py(t)
      << "\" stroke=\"#dddddd\"/>";
    o << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">" << tick_label(t, ystep)
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
    << xml_escape(labels.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + ph / 2
    << ")\">" << xml_escape(labels.y_label) << "</text>\n";
  o << "</g>\n<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < x.size(); ++k) o << (k ? " " : "") << px(x[k]) << ',' << py(y[k]);
  o << "\"/>\n</svg>\n";
  return o.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

void ensure_dir(const std::filesystem::path& d) { std::filesystem::create_directories(d); }

}  // namespace

void write_phase_artifacts(const RunConfig& cfg, const PhaseRun& run) {
  ensure_dir(cfg.out_dir);
  if (cfg.emit_csv) write_file(cfg.out_dir / "phase_series.csv", phase_csv(run.series));
  if (cfg.emit_json) write_file(cfg.out_dir / "summary.json", phase_summary(cfg, run).dump(2) + "\n");
  if (cfg.emit_svg) {
    char title[96];
    std::snprintf(title, sizeof title, "Relative geometric phase, contour |lambda - (%g%+gi)| = %g",
                  cfg.contour.center.real(), cfg.contour.center.imag(), cfg.contour.radius);
    write_file(cfg.out_dir / "phase_transition.svg",
               line_chart_svg(run.series.x_grid, run.series.relative, {title, "x", "relative phase"}));
  }
}

void write_evans_artifacts(const RunConfig& cfg, const EvansRun& run) {
  ensure_dir(cfg.out_dir);
  if (cfg.emit_csv) write_file(cfg.out_dir / "evans_trace.csv", evans_csv(run.trace));
  if (cfg.emit_json) write_file(cfg.out_dir / "summary.json", evans_summary(cfg, run).dump(2) + "\n");
}

void write_spectrum_artifacts(const RunConfig& cfg, const SpectrumRun& run) {
  ensure_dir(cfg.out_dir);
  if (cfg.emit_csv) write_file(cfg.out_dir / "essential_spectrum.csv", spectrum_csv(run));
  if (cfg.emit_json) write_file(cfg.out_dir / "summary.json", spectrum_summary(cfg, run).dump(2) + "\n");
}

}  // namespace gphase
