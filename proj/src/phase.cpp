#include "gphase/phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gphase/errors.hpp"
#include "gphase/parallel.hpp"

namespace gphase {

namespace {

double real_angle(const Vec6& u, const Vec6& v) {
  const double c = hermitian_inner(u, v).real() / (norm(u) * norm(v));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

double max_direction_change(std::span<const Vec6> loop) {
  double worst = 0.0;
  for (std::size_t j = 0; j < loop.size(); ++j)
    worst = std::max(worst, real_angle(loop[j], loop[(j + 1) % loop.size()]));
  return worst;
}

Loop initial_loop(const ContourSpec& spec, const SystemParams& P, const LoopOptions& opt) {
  P.validate();
  const auto lambdas = discretize_contour(spec);
  Loop loop(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const AsymptoticPair a = asymptotic_pair(lambdas[j], P);
    if (std::abs(a.sigma_plus) < kBranchPointTolerance)
      throw BranchPointError("contour sample " + std::to_string(j) + " lies within " +
                             std::to_string(kBranchPointTolerance) + " of a branch point (|sigma+| = " +
                             std::to_string(std::abs(a.sigma_plus)) + ")");
    loop[j] = a.x_plus;
  }
  const double jump = max_direction_change(loop);
  if (!(jump < opt.max_direction_change))
    throw DegeneracyError("initial loop is not continuous: adjacent samples differ by " + std::to_string(jump) +
                          " rad");
  return loop;
}

LoopField transport_loop(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                         const IntegratorConfig& cfg, const TransportOptions& opt) {
  if (!(x1 >= x0)) throw ContractViolation("transport_loop: need x0 <= x1");
  cfg.validate();
  const Loop init = initial_loop(spec, P, opt.loop);

  LoopField f;
  f.contour = spec;
  f.lambdas = discretize_contour(spec);
  f.x_grid = storage_grid(x0, x1, cfg.h_store);
  f.rescaled = cfg.rescale;
  const std::size_t n = f.n_samples();
  const std::size_t m = f.n_grid();
  f.samples.resize(n * m);
  f.log_scale.resize(n * m);

  parallel_for(n, opt.jobs, [&](std::size_t j) {
    const cplx lambda = f.lambdas[j];
    try {
      const auto traj = integrate_linear<6>([&](double x) { return field6(x, lambda, P); }, init[j], x0, x1, cfg);
      for (std::size_t k = 0; k < m; ++k) {
        f.samples[k * n + j] = traj.states[k];
        f.log_scale[k * n + j] = traj.log_scale[k];
      }
    } catch (const NumericalError& e) {
      throw SampleError(j, e.what());
    } catch (const ContractViolation& e) {
      throw SampleError(j, e.what());
    }
  });
  return f;
}

Loop loop_derivative(std::span<const Vec6> loop) {
  const std::size_t n = loop.size();
  if (n < 3) throw ContractViolation("loop_derivative: need at least 3 samples");
  const double half_n = 0.5 * static_cast<double>(n);
  Loop d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = half_n * (loop[(j + 1) % n] - loop[(j + n - 1) % n]);
  return d;
}

double connection_integrand(const Vec6& u_prime, const Vec6& u) {
  const double nn = norm_sq(u);
  if (!(nn > 0.0)) throw ContractViolation("connection_integrand: zero vector");
  return hermitian_inner(u_prime, u).imag() / nn;
}

double geometric_phase(std::span<const Vec6> loop, Quadrature q) {
  const std::size_t n = loop.size();
  if (n < 3) throw ContractViolation("geometric_phase: need at least 3 samples");
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  if (q == Quadrature::euler) {
    const Loop d = loop_derivative(loop);
    for (std::size_t j = 0; j < n; ++j) sum += connection_integrand(d[j], loop[j]);
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const Vec6& a = loop[j];
      const Vec6& b = loop[(j + 1) % n];
      const Vec6 d = dn * (b - a);
      sum += 0.5 * (connection_integrand(d, a) + connection_integrand(d, b));
    }
  }
  return sum / dn / (2.0 * std::numbers::pi);
}

PhaseSeries phase_transition_series(const LoopField& field, Quadrature q, std::size_t jobs) {
  PhaseSeries s;
  s.x_grid = field.x_grid;
  const std::size_t m = field.n_grid();
  s.gp_at_x.resize(m);
  parallel_for(m, jobs, [&](std::size_t k) { s.gp_at_x[k] = geometric_phase(field.loop_at(k), q); });
  s.gp_initial = m > 0 ? s.gp_at_x[0] : 0.0;
  s.relative.resize(m);
  for (std::size_t k = 0; k < m; ++k) s.relative[k] = s.gp_at_x[k] - s.gp_initial;
  return s;
}

std::vector<double> relative_to_reference(const PhaseSeries& series, std::span<const Vec6> reference,
                                          Quadrature q) {
  const double ref = geometric_phase(reference, q);
  std::vector<double> out(series.gp_at_x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = series.gp_at_x[k] - ref;
  return out;
}

std::optional<std::size_t> plateau_index(std::span<const double> relative, std::size_t window, double tol) {
  if (relative.size() <= window) return std::nullopt;
  std::size_t start = window;
  for (std::size_t i = window; i < relative.size(); ++i)
    if (!(std::abs(relative[i] - relative[i - window]) < tol)) start = i + 1;
  if (start >= relative.size()) return std::nullopt;
  return start;
}

double max_jump(std::span<const double> v) {
  double worst = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) worst = std::max(worst, std::abs(v[k] - v[k - 1]));
  return worst;
}

}  // namespace gphase
