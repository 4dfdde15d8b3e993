#include "gphase/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gphase/errors.hpp"
#include "gphase/parallel.hpp"

namespace gphase {

Loop stable_initial_loop(const ContourSpec& spec, const SystemParams& P, const LoopOptions& opt) {
  P.validate();
  const auto lambdas = discretize_contour(spec);
  Loop loop(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const AsymptoticPair a = asymptotic_pair(lambdas[j], P);
    if (std::abs(a.sigma_minus) < kBranchPointTolerance)
      throw BranchPointError("contour sample " + std::to_string(j) + " lies near a branch point");
    loop[j] = a.x_minus;
  }
  const double jump = max_direction_change(loop);
  if (!(jump < opt.max_direction_change))
    throw DegeneracyError("stable loop is not continuous: adjacent samples differ by " + std::to_string(jump) +
                          " rad");
  return loop;
}

namespace {

// Carries y from x_start to 0. Backward runs integrate t = -x with the
// negated field on the reflected interval.
template <std::size_t N, class FieldAt>
GridTrajectory<N> carry_to_origin(FieldAt field_at, const Vec<N>& y, double x_start, const IntegratorConfig& cfg) {
  IntegratorConfig local = cfg;
  local.h_store = std::abs(x_start);
  if (x_start < 0.0) return integrate_linear<N>([&](double x) { return field_at(x); }, y, x_start, 0.0, local);
  return integrate_linear<N>([&](double t) { return cplx(-1.0) * field_at(-t); }, y, -x_start, 0.0, local);
}

void check_span(double x0, double x1) {
  if (!(x0 < 0.0 && 0.0 < x1)) throw ContractViolation("evans_function: need x0 < 0 < x1");
}

EvansValue checked(cplx value, double log_mag) {
  if (value == 0.0) throw EigenvalueOnContourError("Evans function vanishes on the contour");
  return {value, log_mag};
}

}  // namespace

EvansValue evans_function(cplx lambda, const SystemParams& P, double x0, double x1, const IntegratorConfig& cfg) {
  check_span(x0, x1);
  const AsymptoticPair a = asymptotic_pair(lambda, P);
  auto field = [&](double x) { return field6(x, lambda, P); };
  const auto u = carry_to_origin<6>(field, a.x_plus, x0, cfg);
  const auto s = carry_to_origin<6>(field, a.x_minus, x1, cfg);
  return checked(wedge4_pair(u.states.back(), s.states.back()), u.log_scale.back() + s.log_scale.back());
}

EvansValue evans_function_4x4(cplx lambda, const SystemParams& P, double x0, double x1,
                              const IntegratorConfig& cfg) {
  check_span(x0, x1);
  const auto pairs = eig4(field4_infinity(lambda, P));

  // Split by sign of the real part; inside each pair, order the (1, -i) mode
  // before the (1, i) mode so the frame is continuous in lambda.
  std::vector<Vec4> unstable, stable;
  for (const auto& ep : pairs) {
    if (std::abs(ep.vector[0]) == 0.0) throw DegeneracyError("asymptotic eigenvector has zero first component");
    const Vec4 v = (1.0 / ep.vector[0]) * ep.vector;
    (ep.value.real() > 0.0 ? unstable : stable).push_back(v);
  }
  if (unstable.size() != 2 || stable.size() != 2)
    throw DegeneracyError("asymptotic 4x4 field is not split 2/2 at this spectral point");
  auto by_mode = [](const Vec4& a, const Vec4& b) { return a[1].imag() < b[1].imag(); };
  std::sort(unstable.begin(), unstable.end(), by_mode);
  std::sort(stable.begin(), stable.end(), by_mode);

  auto field = [&](double x) { return field4(x, lambda, P); };
  std::array<Vec4, 4> cols;
  double log_mag = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto u = carry_to_origin<4>(field, unstable[i], x0, cfg);
    const auto s = carry_to_origin<4>(field, stable[i], x1, cfg);
    cols[i] = u.states.back();
    cols[2 + i] = s.states.back();
    log_mag += u.log_scale.back() + s.log_scale.back();
  }
  return checked(determinant(from_columns<4>(cols)), log_mag);
}

EvansTrace make_trace(std::vector<cplx> lambdas, std::vector<cplx> values, std::vector<double> log_magnitudes) {
  if (values.size() != lambdas.size() || log_magnitudes.size() != lambdas.size())
    throw ContractViolation("make_trace: length mismatch");
  if (values.empty()) throw ContractViolation("make_trace: empty trace");
  const std::size_t n = values.size();
  EvansTrace t;
  t.unwrapped_arg.resize(n + 1);
  for (std::size_t j = 0; j < n; ++j)
    if (values[j] == 0.0)
      throw EigenvalueOnContourError("Evans value is zero at contour sample " + std::to_string(j));
  t.unwrapped_arg[0] = std::arg(values[0]);
  for (std::size_t j = 1; j <= n; ++j) {
    const double step = std::arg(values[j % n] / values[j - 1]);
    if (!(std::abs(step) < kMaxArgIncrement))
      throw WindingResolutionError("argument increment " + std::to_string(step) + " at sample " +
                                   std::to_string(j - 1) + " is too large; increase the sample count");
    t.unwrapped_arg[j] = t.unwrapped_arg[j - 1] + step;
  }
  t.lambdas = std::move(lambdas);
  t.values = std::move(values);
  t.log_magnitudes = std::move(log_magnitudes);
  return t;
}

Winding winding_number(const EvansTrace& trace) {
  if (trace.unwrapped_arg.size() < 2) throw ContractViolation("winding_number: empty trace");
  const double turns = (trace.unwrapped_arg.back() - trace.unwrapped_arg.front()) / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  const double residual = std::abs(turns - rounded);
  if (!(residual < 0.05))
    throw WindingResolutionError("winding residual " + std::to_string(residual) + " is not below 0.05");
  return {static_cast<int>(rounded), residual};
}

EvansTrace evans_trace(const ContourSpec& spec, const EvansFn& evans, std::size_t jobs) {
  auto lambdas = discretize_contour(spec);
  const std::size_t n = lambdas.size();
  std::vector<cplx> values(n);
  std::vector<double> logs(n);
  parallel_for(n, jobs, [&](std::size_t j) {
    try {
      const EvansValue e = evans(lambdas[j]);
      values[j] = e.value;
      logs[j] = e.log_mag;
    } catch (const NumericalError& e) {
      throw SampleError(j, e.what());
    }
  });
  return make_trace(std::move(lambdas), std::move(values), std::move(logs));
}

EvansTrace evans_trace(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                       const IntegratorConfig& cfg, std::size_t jobs) {
  check_span(x0, x1);
  stable_initial_loop(spec, P);  // branch-point and continuity screening
  return evans_trace(
      spec, [&](cplx lambda) { return evans_function(lambda, P, x0, x1, cfg); }, jobs);
}

int count_eigenvalues(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                      const IntegratorConfig& cfg, std::size_t jobs) {
  return winding_number(evans_trace(spec, P, x0, x1, cfg, jobs)).winding;
}

}  // namespace gphase
