#pragma once

// Adaptive Dormand-Prince 5(4) integration of linear systems y' = A(x) y on
// C^N, sampled on a fixed storage grid through the pair's quartic dense
// output. Optionally keeps the state at unit norm, carrying the discarded
// magnitude as a running natural log.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gphase/errors.hpp"
#include "gphase/xalg.hpp"

namespace gphase {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double h_store = 0.04;
  std::size_t max_steps = 1'000'000;
  bool rescale = true;

  void validate() const;
};

template <std::size_t N>
struct GridTrajectory {
  std::vector<double> x_grid;
  std::vector<Vec<N>> states;
  std::vector<double> log_scale;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  // states[k] * exp(log_scale[k])
  Vec<N> unscaled(std::size_t k) const { return std::exp(log_scale[k]) * states[k]; }
};

// x0, x0 + h, ..., x1. Throws ContractViolation unless x1 - x0 is a
// nonnegative multiple of h (relative slack 1e-9).
std::vector<double> storage_grid(double x0, double x1, double h);

namespace dopri {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// 5th minus embedded 4th order weights.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output.
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

inline constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;

}  // namespace dopri

template <std::size_t N, class Field>
GridTrajectory<N> integrate_linear(Field&& field, const Vec<N>& y0, double x0, double x1,
                                   const IntegratorConfig& cfg) {
  using namespace dopri;
  cfg.validate();
  if (!(x1 >= x0)) throw ContractViolation("integrate_linear: need x0 <= x1");
  if (norm(y0) == 0.0) throw ContractViolation("integrate_linear: zero initial state");

  GridTrajectory<N> out;
  out.x_grid = storage_grid(x0, x1, cfg.h_store);
  const std::size_t n_grid = out.x_grid.size();
  out.states.resize(n_grid);
  out.log_scale.assign(n_grid, 0.0);

  // The internal state is y_true * exp(-log_internal).
  double log_internal = 0.0;
  Vec<N> y = y0;
  if (cfg.rescale) {
    const double n0 = norm(y0);
    log_internal = std::log(n0);
    y = (1.0 / n0) * y0;
  }

  auto store = [&](std::size_t k, const Vec<N>& v) {
    if (!all_finite(v)) throw OverflowError("non-finite state at x = " + std::to_string(out.x_grid[k]));
    if (cfg.rescale) {
      const double nv = norm(v);
      if (!(nv > 0.0)) throw OverflowError("state underflow at x = " + std::to_string(out.x_grid[k]));
      out.states[k] = (1.0 / nv) * v;
      out.log_scale[k] = log_internal + std::log(nv);
    } else {
      out.states[k] = v;
    }
  };
  store(0, y);
  if (n_grid == 1) return out;

  auto rhs = [&](double x, const Vec<N>& v) { return field(x) * v; };

  // Error weights refer to the true (unscaled) solution, so the step
  // sequence does not depend on whether rescaling is on.
  auto error_norm = [&](const Vec<N>& a, const Vec<N>& b, const Vec<N>& err) {
    const double atol = cfg.abs_tol * std::exp(-log_internal);
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double sk = atol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      sk = std::max(sk, std::numeric_limits<double>::min());
      const double r = std::abs(err[i]) / sk;
      s += r * r;
    }
    return std::sqrt(s / static_cast<double>(N));
  };

  Vec<N> k1 = rhs(x0, y);
  const double span = x1 - x0;

  // Initial step size (Hairer, Norsett & Wanner, II.4).
  double h;
  {
    const Vec<N> zero{};
    const double d0 = error_norm(y, zero, y);
    const double d1n = error_norm(y, zero, k1);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, span);
    const Vec<N> k2 = rhs(x0 + h0, y + h0 * k1);
    const double d2 = error_norm(y, zero, k2 - k1) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, span});
  }

  double x = x0;
  std::size_t next = 1;
  bool last_rejected = false;
  while (next < n_grid) {
    if (out.steps + out.rejected >= cfg.max_steps)
      throw IntegrationBudgetError("integration exceeded " + std::to_string(cfg.max_steps) + " steps");
    const bool final_step = x + h >= x1 - 1e-12 * std::max(1.0, std::abs(x1));
    if (final_step) h = x1 - x;
    if (!(h > 1e-14 * std::max(1.0, std::abs(x))))
      throw IntegrationBudgetError("step size underflow at x = " + std::to_string(x));

    const Vec<N> k2 = rhs(x + c2 * h, y + (h * a21) * k1);
    const Vec<N> k3 = rhs(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec<N> k4 = rhs(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec<N> k5 = rhs(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec<N> k6 = rhs(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec<N> y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double x_new = final_step ? x1 : x + h;
    const Vec<N> k7 = rhs(x_new, y1);
    const Vec<N> err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(y, y1, err);

    if (!std::isfinite(en)) {
      if (!all_finite(y1)) throw OverflowError("non-finite state at x = " + std::to_string(x));
      h *= fac_min;
      ++out.rejected;
      last_rejected = true;
      continue;
    }

    double fac = en == 0.0 ? fac_max : safety * std::pow(en, -0.2);
    if (en > 1.0) {
      h *= std::max(fac_min, std::min(1.0, fac));
      ++out.rejected;
      last_rejected = true;
      continue;
    }

    // Accepted: emit every storage point in (x, x_new].
    const Vec<N> ydiff = y1 - y;
    const Vec<N> bspl = h * k1 - ydiff;
    const Vec<N> r4 = ydiff - h * k7 - bspl;
    const Vec<N> r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    while (next < n_grid && out.x_grid[next] <= x_new + 1e-12 * std::max(1.0, std::abs(x_new))) {
      if (next == n_grid - 1 && final_step) {
        store(next, y1);
      } else {
        const double th = (out.x_grid[next] - x) / h;
        const double th1 = 1.0 - th;
        store(next, y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5))));
      }
      ++next;
    }

    ++out.steps;
    x = x_new;
    y = y1;
    k1 = k7;
    if (!all_finite(y)) throw OverflowError("non-finite state at x = " + std::to_string(x));
    if (cfg.rescale) {
      const double ny = norm(y);
      if (!(ny > 0.0)) throw OverflowError("state underflow at x = " + std::to_string(x));
      y = (1.0 / ny) * y;
      k1 = (1.0 / ny) * k1;
      log_internal += std::log(ny);
    }
    if (last_rejected) fac = std::min(fac, 1.0);
    h *= std::max(fac_min, std::min(fac_max, fac));
    last_rejected = false;
  }
  return out;
}

}  // namespace gphase
