#include <doctest.h>

#include <cmath>

#include "gphase/cglmodel.hpp"
#include "gphase/odeint.hpp"

using namespace gphase;

namespace {

const cplx I{0.0, 1.0};

double rel_err(const Vec6& a, const Vec6& b) { return norm(a - b) / norm(b); }

}  // namespace

TEST_CASE("storage_grid") {
  const auto g = storage_grid(0.0, 1.0, 0.25);
  REQUIRE(g.size() == 5);
  CHECK(g[2] == 0.5);
  CHECK(g.back() == 1.0);
  CHECK(storage_grid(-10.0, 10.0, 0.04).size() == 501);
  CHECK(storage_grid(2.0, 2.0, 0.1).size() == 1);
  CHECK_THROWS_AS(storage_grid(0.0, 1.0, 0.3), ContractViolation);
  CHECK_THROWS_AS(storage_grid(0.0, 1.0, 0.0), ContractViolation);
}

TEST_CASE("integrator contracts") {
  const auto zero = [](double) { return Mat<2>{}; };
  IntegratorConfig cfg;
  CHECK_THROWS_AS(integrate_linear<2>(zero, Vec<2>{}, 0.0, 1.0, cfg), ContractViolation);
  CHECK_THROWS_AS(integrate_linear<2>(zero, Vec<2>{1.0, 0.0}, 1.0, 0.0, cfg), ContractViolation);
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate_linear<2>(zero, Vec<2>{1.0, 0.0}, 0.0, 1.0, cfg), ContractViolation);

  const auto one = integrate_linear<2>(zero, Vec<2>{3.0, 4.0}, 1.0, 1.0, IntegratorConfig{});
  REQUIRE(one.states.size() == 1);
  CHECK(one.log_scale[0] == doctest::Approx(std::log(5.0)));
}

TEST_CASE("zero field keeps the state") {
  const auto zero = [](double) { return Mat<2>{}; };
  const Vec<2> y0{3.0, cplx(0.0, 4.0)};
  IntegratorConfig cfg;
  cfg.h_store = 0.5;
  const auto on = integrate_linear<2>(zero, y0, 0.0, 5.0, cfg);
  for (std::size_t k = 0; k < on.states.size(); ++k) {
    CHECK(norm(on.unscaled(k) - y0) < 1e-14);
    CHECK(on.log_scale[k] == doctest::Approx(std::log(5.0)));
  }
  cfg.rescale = false;
  const auto off = integrate_linear<2>(zero, y0, 0.0, 5.0, cfg);
  for (const auto& s : off.states) CHECK(s == y0);
}

TEST_CASE("constant multiple of the identity") {
  const cplx c{1.0, 2.0};
  const auto field = [&](double) { return c * Mat<3>::identity(); };
  const Vec<3> y0{1.0, I, -2.0};
  IntegratorConfig cfg;
  cfg.h_store = 0.1;
  const auto tr = integrate_linear<3>(field, y0, 0.0, 4.0, cfg);
  for (std::size_t k = 0; k < tr.x_grid.size(); ++k) {
    const double x = tr.x_grid[k];
    CHECK(std::abs(tr.log_scale[k] - x - std::log(norm(y0))) < 1e-7);
    const Vec<3> want = std::exp(cplx(0.0, 2.0 * x)) * ((1.0 / norm(y0)) * y0);
    CHECK(norm(tr.states[k] - want) < 1e-7);
  }
}

TEST_CASE("non-autonomous scalar closed form") {
  // y' = i x y, y = exp(i x^2 / 2)
  const auto field = [](double x) {
    Mat<1> m;
    m(0, 0) = cplx(0.0, x);
    return m;
  };
  auto max_err = [&](double rtol) {
    IntegratorConfig cfg;
    cfg.rel_tol = rtol;
    cfg.abs_tol = rtol * 1e-2;
    const auto tr = integrate_linear<1>(field, Vec<1>{1.0}, 0.0, 8.0, cfg);
    double e = 0.0;
    for (std::size_t k = 0; k < tr.x_grid.size(); ++k) {
      const double x = tr.x_grid[k];
      e = std::max(e, std::abs(tr.unscaled(k)[0] - std::exp(cplx(0.0, 0.5 * x * x))));
    }
    return e;
  };
  const double e6 = max_err(1e-6), e8 = max_err(1e-8), e10 = max_err(1e-10);
  CHECK(e8 < 1e-6);
  CHECK(e10 < e8);
  CHECK(e8 < e6);
}

TEST_CASE("rotation closed form") {
  const auto field = [](double) {
    Mat<2> m;
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    return m;
  };
  IntegratorConfig cfg;
  cfg.h_store = 0.25;
  const auto tr = integrate_linear<2>(field, Vec<2>{1.0, 0.0}, 0.0, 20.0, cfg);
  for (std::size_t k = 0; k < tr.x_grid.size(); ++k) {
    const double x = tr.x_grid[k];
    CHECK(norm(tr.unscaled(k) - Vec<2>{std::cos(x), -std::sin(x)}) < 1e-6);
  }
}

TEST_CASE("dominant eigenvector flows with exponent sigma+") {
  const SystemParams P = preset(kDefaultPreset);
  const AsymptoticPair a = asymptotic_pair(15.0, P);
  const Mat6 m = field6_infinity(15.0, P);
  const auto tr = integrate_linear<6>([&](double) { return m; }, a.x_plus, -10.0, 10.0, IntegratorConfig{});
  const Vec6 unit = (1.0 / norm(a.x_plus)) * a.x_plus;
  for (std::size_t k = 0; k < tr.x_grid.size(); ++k) {
    const double dx = tr.x_grid[k] + 10.0;
    CHECK(tr.log_scale[k] - tr.log_scale[0] == doctest::Approx(4.0 * dx).epsilon(1e-8));
    CHECK(std::abs(std::abs(hermitian_inner(tr.states[k], unit)) - 1.0) < 1e-9);
  }
}

TEST_CASE("rescaling does not change the solution") {
  const SystemParams P = preset(kDefaultPreset);
  const cplx lambda{15.0, 0.1};
  const auto field = [&](double x) { return field6(x, lambda, P); };
  const Vec6 y0 = asymptotic_pair(lambda, P).x_plus;
  IntegratorConfig cfg;
  const auto on = integrate_linear<6>(field, y0, -10.0, 10.0, cfg);
  cfg.rescale = false;
  const auto off = integrate_linear<6>(field, y0, -10.0, 10.0, cfg);
  CHECK(on.steps == off.steps);
  CHECK(on.rejected == off.rejected);
  for (std::size_t k = 0; k < on.x_grid.size(); ++k) CHECK(rel_err(on.unscaled(k), off.states[k]) < 1e-8);
}

TEST_CASE("solution map is linear") {
  const SystemParams P = preset(kDefaultPreset);
  const auto field = [&](double x) { return field6(x, {0.5, -0.3}, P); };
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-13;
  cfg.rescale = false;
  const Vec6 u{1.0, 0.0, I, 0.0, -1.0, 2.0}, v{0.0, 1.0, 1.0, I, 0.5, 0.0};
  const cplx a{0.7, 0.2}, b{-1.1, 0.4};
  const auto tu = integrate_linear<6>(field, u, -2.0, 2.0, cfg);
  const auto tv = integrate_linear<6>(field, v, -2.0, 2.0, cfg);
  const auto tw = integrate_linear<6>(field, a * u + b * v, -2.0, 2.0, cfg);
  for (std::size_t k = 0; k < tw.x_grid.size(); ++k)
    CHECK(rel_err(a * tu.states[k] + b * tv.states[k], tw.states[k]) < 1e-8);
}

TEST_CASE("budget and overflow errors") {
  const SystemParams P = preset(kDefaultPreset);
  const auto field = [&](double x) { return field6(x, 15.0, P); };
  IntegratorConfig cfg;
  cfg.max_steps = 5;
  CHECK_THROWS_AS(integrate_linear<6>(field, asymptotic_pair(15.0, P).x_plus, -10.0, 10.0, cfg),
                  IntegrationBudgetError);

  const auto grow = [](double) { return 800.0 * Mat<2>::identity(); };
  IntegratorConfig big;
  big.rescale = false;
  CHECK_THROWS_AS(integrate_linear<2>(grow, Vec<2>{1.0, 0.0}, 0.0, 1.0, big), OverflowError);
  big.rescale = true;
  const auto tr = integrate_linear<2>(grow, Vec<2>{1.0, 0.0}, 0.0, 1.0, big);
  CHECK(std::abs(tr.log_scale.back() - 800.0) < 1e-4);
}
