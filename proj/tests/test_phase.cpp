#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gphase/errors.hpp"
#include "gphase/phase.hpp"

using namespace gphase;

namespace {

const cplx I{0.0, 1.0};
const double kTwoPi = 2.0 * std::numbers::pi;
const SystemParams P = preset(kDefaultPreset);

// e^{2 pi i k s} times a real loop with no phase of its own.
Loop winding_loop(int k, std::size_t n) {
  Loop loop(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(n);
    const Vec6 w{1.0, std::cos(kTwoPi * s), std::sin(kTwoPi * s), 0.5, 0.0, 0.0};
    loop[j] = std::exp(cplx(0.0, kTwoPi * k * s)) * w;
  }
  return loop;
}

Loop random_smooth_loop(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> d;
  std::array<Vec6, 3> c;
  for (auto& v : c)
    for (auto& z : v) z = {d(g), d(g)};
  Loop loop(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    loop[j] = c[0] + std::cos(s) * c[1] + std::sin(s) * c[2];
  }
  return loop;
}

}  // namespace

TEST_CASE("discretize_contour") {
  const auto pts = discretize_contour({{1.0, 0.0}, 2.0, 16});
  REQUIRE(pts.size() == 16);
  CHECK(std::abs(pts[0] - cplx(3.0, 0.0)) < 1e-15);
  CHECK(std::abs(pts[4] - cplx(1.0, 2.0)) < 1e-15);
  CHECK(std::abs(pts[8] - cplx(-1.0, 0.0)) < 1e-15);
  for (std::size_t j = 1; j < 16; ++j) CHECK(std::abs(pts[16 - j] - std::conj(pts[j])) < 1e-14);
  CHECK_THROWS_AS(discretize_contour({{0.0, 0.0}, 1.0, 4}), ContractViolation);
  CHECK_THROWS_AS(discretize_contour({{0.0, 0.0}, -1.0, 64}), ContractViolation);
}

TEST_CASE("connection_integrand") {
  const Vec6 e1{1.0, 0, 0, 0, 0, 0};
  CHECK(connection_integrand(I * e1, e1) == doctest::Approx(1.0));
  CHECK(connection_integrand(e1, e1) == 0.0);
  CHECK(connection_integrand(I * e1, 2.0 * e1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(connection_integrand(e1, Vec6{}), ContractViolation);
}

TEST_CASE("loop_derivative") {
  const Vec6 v{1.0, I, 0, 0, 2.0, 0};
  Loop loop(4);
  for (std::size_t j = 0; j < 4; ++j) loop[j] = std::pow(I, static_cast<int>(j)) * v;
  // central difference of e^{2 pi i s} at n = 4: (i - (-i)) * 4 / 2 = 4i
  const Loop d = loop_derivative(loop);
  for (std::size_t j = 0; j < 4; ++j) CHECK(norm(d[j] - 4.0 * I * loop[j]) < 1e-14);

  const std::size_t n = 10000;
  Loop fine(n);
  for (std::size_t j = 0; j < n; ++j) fine[j] = std::exp(cplx(0.0, kTwoPi * j / n)) * v;
  CHECK(norm(loop_derivative(fine)[0] - kTwoPi * I * v) < 1e-6 * norm(v));
}

TEST_CASE("geometric phase examples") {
  const std::size_t n = 10000;
  CHECK(geometric_phase(Loop(n, Vec6{1.0, 2.0, 0, 0, 0, I})) == 0.0);
  CHECK(geometric_phase(winding_loop(1, n)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(geometric_phase(winding_loop(-2, n)) == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK_THROWS_AS(geometric_phase(Loop(2, Vec6{1.0})), ContractViolation);
}

TEST_CASE("geometric phase counts windings") {
  for (const Quadrature q : {Quadrature::euler, Quadrature::trapezoid})
    for (int k = -2; k <= 3; ++k) CHECK(std::abs(geometric_phase(winding_loop(k, 10000), q) - k) < 1e-4);
}

TEST_CASE("geometric phase invariants") {
  std::mt19937_64 g(17);
  const std::size_t n = 2000;
  for (int t = 0; t < 10; ++t) {
    const Loop base = random_smooth_loop(g, n);
    const double gp = geometric_phase(base);

    // Constant phase factor: exact.
    Loop rotated = base;
    for (auto& u : rotated) u = std::exp(cplx(0.0, 0.7)) * u;
    CHECK(std::abs(geometric_phase(rotated) - gp) < 1e-12);

    // Smooth positive rescaling: discretization effect only.
    Loop scaled = base;
    for (std::size_t j = 0; j < n; ++j) scaled[j] = (2.0 + std::sin(kTwoPi * j / n)) * base[j];
    CHECK(std::abs(geometric_phase(scaled) - gp) < 1e-4);

    // Reversed orientation.
    Loop reversed(n);
    for (std::size_t j = 0; j < n; ++j) reversed[j] = base[(n - j) % n];
    CHECK(std::abs(geometric_phase(reversed) + gp) < 1e-12);

    // The two quadratures agree.
    CHECK(std::abs(geometric_phase(base, Quadrature::trapezoid) - gp) < 1e-4);
  }
}

TEST_CASE("initial loop") {
  const Loop loop = initial_loop({{15.0, 0.0}, 0.1, 1000}, P);
  REQUIRE(loop.size() == 1000);
  CHECK(max_direction_change(loop) < 1e-2);
  // Smooth, contractible in a region without eigenvalues of the limit: no winding.
  CHECK(std::abs(geometric_phase(loop)) < 1e-3);

  // p vanishes at -15 and eta < 0 there, so sigma+ = 0 on this circle.
  CHECK_THROWS_AS(initial_loop({{-15.1, 0.0}, 0.1, 1000}, P), BranchPointError);
}

TEST_CASE("transport with a single grid point") {
  const ContourSpec K{{15.0, 0.0}, 0.1, 64};
  const LoopField f = transport_loop(K, P, -10.0, -10.0, IntegratorConfig{});
  REQUIRE(f.n_grid() == 1);
  const Loop init = initial_loop(K, P);
  for (std::size_t j = 0; j < 64; ++j)
    CHECK(norm(std::exp(f.log_scale[j]) * f.samples[j] - init[j]) < 1e-12 * norm(init[j]));
}

TEST_CASE("transport errors carry the sample index") {
  IntegratorConfig cfg;
  cfg.max_steps = 3;
  try {
    transport_loop({{15.0, 0.0}, 0.1, 32}, P, -10.0, 10.0, cfg, {1, {}});
    FAIL("expected SampleError");
  } catch (const SampleError& e) {
    CHECK(e.index() == 0);
  }
  CHECK_THROWS_AS(transport_loop({{15.0, 0.0}, 0.1, 32}, P, 1.0, 0.0, IntegratorConfig{}), ContractViolation);
}

TEST_CASE("phase transition on a coarse contour around 15") {
  const LoopField f = transport_loop({{15.0, 0.0}, 0.1, 200}, P, -10.0, 10.0, IntegratorConfig{});
  const PhaseSeries s = phase_transition_series(f);
  CHECK(s.relative.front() == 0.0);
  CHECK(std::abs(s.gp_initial) < 1e-3);
  CHECK(std::abs(s.relative.back() - 1.0) < 0.05);
  CHECK(max_jump(s.relative) < 0.5);

  const auto ref = relative_to_reference(s, f.loop_at(0));
  for (std::size_t k = 0; k < ref.size(); ++k) CHECK(ref[k] == s.relative[k]);

  // Parallel evaluation gives identical numbers.
  const PhaseSeries serial = phase_transition_series(f, Quadrature::euler, 1);
  CHECK(serial.gp_at_x == s.gp_at_x);
}

TEST_CASE("no transition away from eigenvalues") {
  const LoopField f = transport_loop({{5.0, 0.0}, 0.1, 200}, P, -10.0, 10.0, IntegratorConfig{});
  CHECK(std::abs(phase_transition_series(f).relative.back()) < 0.05);
}

TEST_CASE("plateau_index") {
  std::vector<double> step(200, 0.0);
  for (std::size_t k = 100; k < 200; ++k) step[k] = 1.0;
  CHECK(plateau_index(step) == std::optional<std::size_t>(150));
  CHECK(plateau_index(std::vector<double>(200, 0.3)) == std::optional<std::size_t>(50));
  CHECK_FALSE(plateau_index(std::vector<double>(40, 0.0)).has_value());

  std::vector<double> drifting(200);
  for (std::size_t k = 0; k < 200; ++k) drifting[k] = 0.01 * static_cast<double>(k);
  CHECK_FALSE(plateau_index(drifting).has_value());
}

TEST_CASE("max_jump") {
  CHECK(max_jump(std::vector<double>{0.0, 0.1, 0.6, 0.5}) == doctest::Approx(0.5));
  CHECK(max_jump(std::vector<double>{1.0}) == 0.0);
}
