#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "gphase/errors.hpp"
#include "gphase/run.hpp"

namespace gphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rng {
  std::mt19937_64 gen{20240611};
  std::uniform_real_distribution<double> unit{-1.0, 1.0};
  double operator()() { return unit(gen); }
  cplx c() { return {unit(gen), unit(gen)}; }
  template <std::size_t N>
  Vec<N> vec() {
    Vec<N> v;
    for (auto& x : v) x = c();
    return v;
  }
  template <std::size_t N>
  Mat<N> mat() {
    Mat<N> m;
    for (auto& x : m.a) x = c();
    return m;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult bound_check(std::string name, double worst, double bound) {
  return {std::move(name), worst <= bound, "max error " + sci(worst) + " (bound " + sci(bound) + ")"};
}

CheckResult wedge_antisymmetry(Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vec4 u = rng.vec<4>(), v = rng.vec<4>();
    worst = std::max(worst, norm(wedge2(u, v) + wedge2(v, u)));
    worst = std::max(worst, norm(wedge2(u, u)));
  }
  return bound_check("wedge antisymmetry", worst, 0.0);
}

CheckResult leibniz(Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Mat4 a = rng.mat<4>();
    const Vec4 u = rng.vec<4>(), v = rng.vec<4>();
    const double err = norm(induced_compound(a) * wedge2(u, v) - wedge2(a * u, v) - wedge2(u, a * v));
    worst = std::max(worst, err / ((1.0 + norm(a)) * norm(u) * norm(v)));
  }
  return bound_check("compound Leibniz rule", worst, 1e-12);
}

CheckResult determinant_identity(Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::array<Vec4, 4> c{rng.vec<4>(), rng.vec<4>(), rng.vec<4>(), rng.vec<4>()};
    const cplx d = determinant(from_columns<4>(c));
    const cplx w = wedge4_pair(wedge2(c[0], c[1]), wedge2(c[2], c[3]));
    worst = std::max(worst, std::abs(w - d) / std::abs(d));
  }
  return bound_check("wedge pairing = 4x4 determinant", worst, 1e-10);
}

// Greedy nearest matching of two multisets; returns the largest gap.
template <std::size_t N>
double multiset_gap(std::array<cplx, N> a, std::array<cplx, N> b) {
  double worst = 0.0;
  std::array<bool, N> used{};
  for (const cplx& x : a) {
    std::size_t best = N;
    for (std::size_t j = 0; j < N; ++j)
      if (!used[j] && (best == N || std::abs(b[j] - x) < std::abs(b[best] - x))) best = j;
    used[best] = true;
    worst = std::max(worst, std::abs(b[best] - x));
  }
  return worst;
}

template <std::size_t N>
std::array<cplx, N * (N - 1) / 2> pair_sums(const std::array<cplx, N>& mu) {
  std::array<cplx, N * (N - 1) / 2> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) out[k++] = mu[i] + mu[j];
  return out;
}

CheckResult spectrum_sum(Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Mat4 v = Mat4::identity() + cplx(0.3) * rng.mat<4>();
    Vec4 d;
    for (std::size_t i = 0; i < 4; ++i) d[i] = cplx(static_cast<double>(i) + 0.5 * rng(), 0.7 * rng());
    std::array<Vec4, 4> inv_cols;
    for (std::size_t i = 0; i < 4; ++i) {
      Vec4 e{};
      e[i] = 1.0;
      inv_cols[i] = solve(v, e);
    }
    const Mat4 a = v * Mat4::diagonal(d) * from_columns<4>(inv_cols);
    worst = std::max(worst, multiset_gap<6>(pair_sums<4>(d), eigenvalues(induced_compound(a))));
  }
  return bound_check("compound spectrum = pairwise sums", worst, 1e-8);
}

CheckResult compound_reconstruction(Rng& rng, const ValidateOptions& opt) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double x = 12.0 * rng();
    const cplx lambda = 20.0 * rng.c();
    worst = std::max(worst, max_abs_diff(induced_compound(opt.field4(x, lambda, opt.params)),
                                         field6(x, lambda, opt.params)));
  }
  return bound_check("compound of C^4 field = printed C^6 field", worst, 1e-12);
}

CheckResult asymptotic_residuals(Rng& rng, const ValidateOptions& opt) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const cplx lambda(10.0 * (rng() + 1.0) + 1e-3, 20.0 * rng());
    const AsymptoticPair a = asymptotic_pair(lambda, opt.params);
    const Mat6 m = field6_infinity(lambda, opt.params);
    worst = std::max(worst, norm(m * a.x_plus - a.sigma_plus * a.x_plus) / norm(a.x_plus));
    worst = std::max(worst, norm(m * a.x_minus - a.sigma_minus * a.x_minus) / norm(a.x_minus));
  }
  return bound_check("asymptotic eigenvector residuals", worst, 1e-10);
}

CheckResult sigma_values(const ValidateOptions& opt) {
  const double e0 = std::abs(asymptotic_pair(0.0, opt.params).sigma_plus - 2.0);
  const double e15 = std::abs(asymptotic_pair(15.0, opt.params).sigma_plus - 4.0);
  return bound_check("sigma+(0) = 2, sigma+(15) = 4", std::max(e0, e15), 1e-12);
}

CheckResult dominance(Rng& rng, const ValidateOptions& opt) {
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 50; ++t) {
    const cplx lambda(10.0 * (rng() + 1.0) + 1e-2, 20.0 * rng());
    const auto mu = eigenvalues(field6_infinity(lambda, opt.params));
    const cplx sp = asymptotic_pair(lambda, opt.params).sigma_plus;
    std::size_t self = 0;
    for (std::size_t i = 1; i < 6; ++i)
      if (std::abs(mu[i] - sp) < std::abs(mu[self] - sp)) self = i;
    for (std::size_t i = 0; i < 6; ++i)
      if (i != self) worst_margin = std::min(worst_margin, sp.real() - mu[i].real());
  }
  return {"sigma+ strictly dominant", worst_margin > 0.0, "min real-part margin " + sci(worst_margin)};
}

Loop synthetic_loop(std::size_t n, int k) {
  Loop loop(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(n);
    const Vec6 v{1.5 + std::cos(kTwoPi * s), 0.3 * std::sin(kTwoPi * s), 1.0, 0.2, -0.4 * std::cos(2 * kTwoPi * s), 0.1};
    loop[j] = std::polar(1.0, kTwoPi * k * s) * v;
  }
  return loop;
}

CheckResult synthetic_windings(const ValidateOptions& opt) {
  double worst = 0.0;
  for (int k = -2; k <= 3; ++k)
    worst = std::max(worst, std::abs(geometric_phase(synthetic_loop(opt.loop_samples, k)) - k));
  return bound_check("synthetic loop windings k = -2..3", worst, opt.winding_tolerance);
}

CheckResult gauge_and_orientation(const ValidateOptions& opt) {
  Loop loop = synthetic_loop(opt.loop_samples, 2);
  for (std::size_t j = 0; j < loop.size(); ++j) loop[j][1] += std::polar(0.5, kTwoPi * static_cast<double>(j) / loop.size());
  const double gp = geometric_phase(loop);
  Loop rotated = loop;
  for (auto& v : rotated) v = std::polar(1.0, 0.7) * v;
  Loop reversed(loop.rbegin(), loop.rend());
  const double worst = std::max(std::abs(geometric_phase(rotated) - gp), std::abs(geometric_phase(reversed) + gp));
  return bound_check("phase gauge and orientation invariance", worst, 1e-10);
}

CheckResult integrator_closed_form(const ValidateOptions& opt) {
  const AsymptoticPair a = asymptotic_pair(15.0, opt.params);
  const Vec6 y0 = (1.0 / norm(a.x_plus)) * a.x_plus;
  const Mat6 m = field6_infinity(15.0, opt.params);
  const auto traj = integrate_linear<6>([&](double) { return m; }, y0, 0.0, 1.0, IntegratorConfig{});
  const double e_log = std::abs(traj.log_scale.back() - a.sigma_plus.real());
  const double e_dir = norm(traj.states.back() - y0);
  return bound_check("eigenvector flow: log growth = Re sigma+", std::max(e_log, e_dir), 1e-6);
}

CheckResult argument_principle() {
  const ContourSpec around15{{15.0, 0.0}, 0.1, 1000};
  const ContourSpec around0{{0.0, 0.0}, 0.1, 1000};
  auto wind = [](const ContourSpec& k, auto f) {
    return winding_number(evans_trace(k, [&](cplx l) { return EvansValue{f(l), 0.0}; }, 1)).winding;
  };
  const int a = wind(around15, [](cplx l) { return l - 15.0; });
  const int b = wind(around0, [](cplx l) { return l * l; });
  const int c = wind(around0, [](cplx) { return cplx(1.0); });
  return {"argument principle on synthetic functions", a == 1 && b == 2 && c == 0,
          "windings " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + " (expected 1, 2, 0)"};
}

}  // namespace

ValidateOptions fast_validate_options() {
  ValidateOptions o;
  o.loop_samples = 1000;
  o.winding_tolerance = 1e-3;
  return o;
}

std::vector<CheckResult> run_validation(const ValidateOptions& opt) {
  Rng rng;
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, auto&& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  guarded("wedge antisymmetry", [&] { return wedge_antisymmetry(rng); });
  guarded("compound Leibniz rule", [&] { return leibniz(rng); });
  guarded("wedge pairing = 4x4 determinant", [&] { return determinant_identity(rng); });
  guarded("compound spectrum = pairwise sums", [&] { return spectrum_sum(rng); });
  guarded("compound of C^4 field = printed C^6 field", [&] { return compound_reconstruction(rng, opt); });
  guarded("asymptotic eigenvector residuals", [&] { return asymptotic_residuals(rng, opt); });
  guarded("sigma+(0) = 2, sigma+(15) = 4", [&] { return sigma_values(opt); });
  guarded("sigma+ strictly dominant", [&] { return dominance(rng, opt); });
  guarded("synthetic loop windings k = -2..3", [&] { return synthetic_windings(opt); });
  guarded("phase gauge and orientation invariance", [&] { return gauge_and_orientation(opt); });
  guarded("eigenvector flow: log growth = Re sigma+", [&] { return integrator_closed_form(opt); });
  guarded("argument principle on synthetic functions", [&] { return argument_principle(); });
  return out;
}

int cmd_validate(const ValidateOptions& opt, std::ostream& out) {
  const auto results = run_validation(opt);
  bool all = true;
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s  %-44s  %s", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    out << line << '\n';
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "validation FAILED") << '\n';
  return all ? kExitOk : kExitValidation;
}

}  // namespace gphase
