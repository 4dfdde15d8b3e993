#pragma once

// Geometric phase of loops in C^6 under the natural connection of the Hopf
// bundle, and its evolution as a loop of asymptotic eigenvectors is carried
// along the compound-matrix flow.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gphase/cglmodel.hpp"
#include "gphase/contour.hpp"
#include "gphase/odeint.hpp"
#include "gphase/xalg.hpp"

namespace gphase {

// euler:     left-endpoint rule on central differences (the default).
// trapezoid: per-segment trapezoid rule on forward differences; an
//            independent discretization of the same integral.
enum class Quadrature { euler, trapezoid };

using Loop = std::vector<Vec6>;

struct LoopOptions {
  // Largest admissible angle (radians, as real vectors in R^12) between
  // adjacent normalized loop samples.
  double max_direction_change = 1e-2;
};

// X+(lambda_j) on every contour sample. Throws BranchPointError when |sigma+|
// drops below kBranchPointTolerance, and DegeneracyError when the loop is not
// continuous.
Loop initial_loop(const ContourSpec& spec, const SystemParams& P, const LoopOptions& opt = {});

// Largest adjacent-sample angle of a closed loop, wraparound included.
double max_direction_change(std::span<const Vec6> loop);

struct LoopField {
  ContourSpec contour;
  std::vector<cplx> lambdas;
  std::vector<double> x_grid;
  // samples[k * n_samples + j] is the state of contour sample j at x_grid[k].
  std::vector<Vec6> samples;
  std::vector<double> log_scale;  // same layout
  bool rescaled = true;

  std::size_t n_samples() const { return lambdas.size(); }
  std::size_t n_grid() const { return x_grid.size(); }
  std::span<const Vec6> loop_at(std::size_t k) const {
    return std::span<const Vec6>(samples).subspan(k * n_samples(), n_samples());
  }
};

struct TransportOptions {
  std::size_t jobs = 0;  // 0 = hardware concurrency
  LoopOptions loop;
};

// Integrates the compound system from every sample of initial_loop, x0 -> x1,
// onto one shared storage grid. Integrator failures are rethrown as
// SampleError carrying the contour index.
LoopField transport_loop(const ContourSpec& spec, const SystemParams& P, double x0, double x1,
                         const IntegratorConfig& cfg, const TransportOptions& opt = {});

// Periodic central differences in the loop parameter s = j / n.
Loop loop_derivative(std::span<const Vec6> loop);

// Im<u', u> / <u, u>. Throws ContractViolation for u = 0.
double connection_integrand(const Vec6& u_prime, const Vec6& u);

// (1 / 2 pi) * integral over s in [0, 1) of the connection integrand.
double geometric_phase(std::span<const Vec6> loop, Quadrature q = Quadrature::euler);

struct PhaseSeries {
  std::vector<double> x_grid;
  double gp_initial = 0.0;
  std::vector<double> gp_at_x;
  std::vector<double> relative;  // gp_at_x[k] - gp_at_x[0]
};

PhaseSeries phase_transition_series(const LoopField& field, Quadrature q = Quadrature::euler,
                                    std::size_t jobs = 0);

// gp_at_x[k] - GP(reference) for a separately chosen reference loop. With
// identical limits at both ends the reference is the initial loop and this
// reduces to PhaseSeries::relative.
std::vector<double> relative_to_reference(const PhaseSeries& series, std::span<const Vec6> reference,
                                          Quadrature q = Quadrature::euler);

// Start of the terminal plateau: the smallest k >= window such that
// |relative[i] - relative[i - window]| < tol for every i >= k.
std::optional<std::size_t> plateau_index(std::span<const double> relative, std::size_t window = 50,
                                         double tol = 1e-3);

// max_k |v[k+1] - v[k]|
double max_jump(std::span<const double> v);

}  // namespace gphase
