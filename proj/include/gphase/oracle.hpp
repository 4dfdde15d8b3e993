#pragma once

// Classical Evans-function eigenvalue count: carry the unstable 2-vector in
// from -x and the stable 2-vector in from +x, pair them to a 4-form at the
// matching point, and count the winding of that scalar around the contour.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gphase/cglmodel.hpp"
#include "gphase/contour.hpp"
#include "gphase/odeint.hpp"
#include "gphase/phase.hpp"
#include "gphase/xalg.hpp"

namespace gphase {

// X-(lambda_j): Grassmann coordinates of the stable subspace at +inf.
Loop stable_initial_loop(const ContourSpec& spec, const SystemParams& P, const LoopOptions& opt = {});

struct EvansValue {
  cplx value;      // in the rescaled gauge
  double log_mag;  // |E| = |value| * exp(log_mag)
};

// Needs x0 < 0 < x1; the two transports meet at x = 0. Throws
// EigenvalueOnContourError when the pairing vanishes exactly.
EvansValue evans_function(cplx lambda, const SystemParams& P, double x0, double x1, const IntegratorConfig& cfg);

// Same zeros from the C^4 system: det[u1 u2 s1 s2](0) with u, s seeded by
// eig4 eigenvectors of the asymptotic 4x4 field, gauge fixed so the first
// component is 1.
EvansValue evans_function_4x4(cplx lambda, const SystemParams& P, double x0, double x1,
                              const IntegratorConfig& cfg);

struct EvansTrace {
  std::vector<cplx> lambdas;
  std::vector<cplx> values;
  std::vector<double> log_magnitudes;
  // n + 1 entries: the loop is closed by repeating sample 0 at the end.
  std::vector<double> unwrapped_arg;
};

// Per-sample argument increments at or above this are treated as unresolved.
inline constexpr double kMaxArgIncrement = 0.5 * 3.14159265358979323846;

// Builds the trace and unwraps the argument. Throws EigenvalueOnContourError
// on a zero value and WindingResolutionError when an increment reaches
// kMaxArgIncrement.
EvansTrace make_trace(std::vector<cplx> lambdas, std::vector<cplx> values, std::vector<double> log_magnitudes);

struct Winding {
  int winding;
  double residual;  // |total / 2 pi - winding|
};

// Throws WindingResolutionError when the residual is 0.05 or more.
Winding winding_number(const EvansTrace& trace);

using EvansFn = std::function<EvansValue(cplx)>;

EvansTrace evans_trace(const ContourSpec& spec, const EvansFn& evans, std::size_t jobs = 0);
EvansTrace evans_trace(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                       const IntegratorConfig& cfg, std::size_t jobs = 0);

int count_eigenvalues(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                      const IntegratorConfig& cfg, std::size_t jobs = 0);

}  // namespace gphase
