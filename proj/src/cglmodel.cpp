#include "gphase/cglmodel.hpp"

#include <cmath>
#include <numbers>

#include "gphase/errors.hpp"

namespace gphase {

void SystemParams::validate() const {
  if (!std::isfinite(rho) || !std::isfinite(psi) || !std::isfinite(omega))
    throw ContractViolation("system parameters must be finite");
  if (!(rho > 0.0)) throw ContractViolation("rho must be positive");
}

SystemParams preset(std::string_view name) {
  if (name == kDefaultPreset) return {1.0 / std::sqrt(5.0), std::atan(2.0), 3.0, CoefficientForm::linearized};
  if (name == "hocking-stewartson-printed")
    return {1.0 / std::sqrt(5.0), std::atan(2.0), 3.0, CoefficientForm::printed};
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {std::string(kDefaultPreset), "hocking-stewartson-printed"};
}

PulseComponents pulse_components(double x, double omega) {
  const double ax = std::abs(x);
  const double e2 = std::exp(-2.0 * ax);
  const double log_cosh = ax + std::log1p(e2) - std::numbers::ln2;
  const double sech = 2.0 * std::exp(-ax) / (1.0 + e2);
  const double phase = omega * log_cosh;
  return {std::cos(phase) * sech, -std::sin(phase) * sech};
}

cplx p_of(cplx lambda, const SystemParams& P) { return 2.0 * P.omega + lambda * P.rho * std::sin(P.psi); }

cplx eta_of(cplx lambda, const SystemParams& P) {
  return 1.0 - P.omega * P.omega + lambda * P.rho * std::cos(P.psi);
}

CoeffQuad coefficients(double x, cplx lambda, const SystemParams& P) {
  const auto [q1, q2] = pulse_components(x, P.omega);
  const double w = P.omega;
  const double alpha = 2.0 - w * w;
  const cplx p = p_of(lambda, P);
  const cplx eta = eta_of(lambda, P);
  const double q11 = q1 * q1, q22 = q2 * q2, q12 = q1 * q2;

  CoeffQuad c;
  c.a31 = eta - alpha * (q22 + 3.0 * q11) + 6.0 * w * q12;
  c.a42 = eta - alpha * (q11 + 3.0 * q22) - 6.0 * w * q12;
  if (P.form == CoefficientForm::linearized) {
    c.a32 = -p - 2.0 * alpha * q12 + 3.0 * w * (q11 + 3.0 * q22);
    c.a41 = p - 2.0 * alpha * q12 - 3.0 * w * (3.0 * q11 + q22);
  } else {
    c.a32 = -p - 2.0 * (2.0 - w) * q12 + 3.0 * w * (q11 + 3.0 * q22);
    c.a41 = p - 2.0 * (2.0 - w) * q12 - 3.0 * w * (3.0 * q11 - q22);
  }
  return c;
}

namespace {

Mat4 companion4(const CoeffQuad& c) {
  Mat4 m;
  m(0, 2) = 1.0;
  m(1, 3) = 1.0;
  m(2, 0) = c.a31;
  m(2, 1) = c.a32;
  m(3, 0) = c.a41;
  m(3, 1) = c.a42;
  return m;
}

Mat6 compound6(const CoeffQuad& c) {
  Mat6 m;
  m(0, 2) = 1.0;
  m(0, 3) = -1.0;
  m(1, 0) = c.a32;
  m(2, 0) = c.a42;
  m(2, 5) = 1.0;
  m(3, 0) = -c.a31;
  m(3, 5) = -1.0;
  m(4, 0) = -c.a41;
  m(5, 1) = -c.a41;
  m(5, 2) = c.a31;
  m(5, 3) = -c.a42;
  m(5, 4) = c.a32;
  return m;
}

CoeffQuad limit_coefficients(cplx lambda, const SystemParams& P) {
  const cplx p = p_of(lambda, P);
  const cplx eta = eta_of(lambda, P);
  return {eta, -p, p, eta};
}

}  // namespace

Mat4 field4(double x, cplx lambda, const SystemParams& P) { return companion4(coefficients(x, lambda, P)); }

Mat4 field4_infinity(cplx lambda, const SystemParams& P) { return companion4(limit_coefficients(lambda, P)); }

Mat6 field6(double x, cplx lambda, const SystemParams& P) { return compound6(coefficients(x, lambda, P)); }

Mat6 field6_infinity(cplx lambda, const SystemParams& P) { return compound6(limit_coefficients(lambda, P)); }

AsymptoticPair asymptotic_pair(cplx lambda, const SystemParams& P) {
  AsymptoticPair a;
  a.p = p_of(lambda, P);
  a.eta = eta_of(lambda, P);
  a.sigma_plus = std::sqrt(2.0) * std::sqrt(a.eta + std::sqrt(a.eta * a.eta + a.p * a.p));
  a.sigma_minus = -a.sigma_plus;
  if (a.sigma_plus == 0.0) throw BranchPointError("sigma+ vanishes at this spectral point");
  auto column = [&](cplx s) {
    return Vec6{2.0 * s, -2.0 * a.p, s * s, -s * s, -2.0 * a.p, s * (s * s - 2.0 * a.eta)};
  };
  a.x_plus = column(a.sigma_plus);
  a.x_minus = column(a.sigma_minus);
  return a;
}

cplx essential_spectrum(double s, Branch branch, const SystemParams& P) {
  const double sgn = branch == Branch::plus ? 1.0 : -1.0;
  const cplx rot = std::polar(1.0 / P.rho, -sgn * P.psi);
  const cplx i(0.0, 1.0);
  return rot * (P.omega - s * s - 1.0) - sgn * 2.0 * i * P.omega * rot;
}

Clearance contour_clearance(const ContourSpec& K, const SystemParams& P, const ClearanceOptions& opt) {
  K.validate();
  const auto steps = static_cast<std::size_t>(std::llround(opt.s_max / opt.s_step));
  double best = std::numeric_limits<double>::infinity();
  for (const Branch b : {Branch::plus, Branch::minus})
    for (std::size_t k = 0; k <= steps; ++k) {
      const cplx z = essential_spectrum(static_cast<double>(k) * opt.s_step, b, P);
      best = std::min(best, std::abs(std::abs(z - K.center) - K.radius));
    }
  return {best, best < opt.warn_below};
}

}  // namespace gphase
