#pragma once

// Linearization of the scaled complex Ginzburg-Landau equation
//
//   rho e^{i psi} Y_t = Y_xx - (1 + i omega)^2 Y + (1 + i omega)(2 + i omega) |Y|^2 Y
//
// about the Hocking-Stewartson pulse Y = (cosh x)^{-1 - i omega}. The
// eigenvalue problem is a first order system on C^4 in the real-form state
// (q1, q2, q1', q2'); its second exterior power is a system on C^6.

#include <string>
#include <string_view>
#include <vector>

#include "gphase/contour.hpp"
#include "gphase/xalg.hpp"

namespace gphase {

// Which closed form to use for the x-dependent parts of a32 and a41.
//   linearized: obtained by linearizing the equation above (default).
//   printed:    the published display, which carries (2 - omega) where the
//               linearization gives (2 - omega^2) and a sign flip on the
//               q2^2 term of a41. Kept for comparison; with it the known
//               eigenvalues at 0, -6.6357 and 15 are not detected.
enum class CoefficientForm { linearized, printed };

struct SystemParams {
  double rho = 1.0;
  double psi = 0.0;
  double omega = 0.0;
  CoefficientForm form = CoefficientForm::linearized;

  // Throws ContractViolation unless rho > 0 and all values are finite.
  void validate() const;
};

inline constexpr std::string_view kDefaultPreset = "hocking-stewartson-afendikov-bridges";

// omega = 3, rho = 1/sqrt(5), psi = arctan 2.
SystemParams preset(std::string_view name);
std::vector<std::string> preset_names();

struct PulseComponents {
  double q1;
  double q2;
};

// Real and imaginary parts of the pulse: cos(omega log cosh x) / cosh x and
// -sin(omega log cosh x) / cosh x.
PulseComponents pulse_components(double x, double omega);

struct CoeffQuad {
  cplx a31, a32, a41, a42;
};

// p(lambda) = 2 omega + lambda rho sin psi
cplx p_of(cplx lambda, const SystemParams& P);
// eta(lambda) = 1 - omega^2 + lambda rho cos psi
cplx eta_of(cplx lambda, const SystemParams& P);

CoeffQuad coefficients(double x, cplx lambda, const SystemParams& P);

// Block-companion field on C^4: rows (0,0,1,0), (0,0,0,1), (a31,a32,0,0),
// (a41,a42,0,0).
Mat4 field4(double x, cplx lambda, const SystemParams& P);
Mat4 field4_infinity(cplx lambda, const SystemParams& P);

// Compound-matrix field on Lambda^2(C^4), written out entry by entry.
Mat6 field6(double x, cplx lambda, const SystemParams& P);
// Common limit of field6 as x -> +inf and x -> -inf.
Mat6 field6_infinity(cplx lambda, const SystemParams& P);

struct AsymptoticPair {
  cplx p;
  cplx eta;
  cplx sigma_plus;
  cplx sigma_minus;
  Vec6 x_plus;
  Vec6 x_minus;
};

// |sigma+| below this on a contour triggers the branch-point diagnostic.
inline constexpr double kBranchPointTolerance = 1e-3;

// Dominant unstable/stable eigenvalues of field6_infinity with their
// closed-form eigenvectors (2 s, -2p, s^2, -s^2, -2p, s(s^2 - 2 eta)).
// Throws BranchPointError when sigma+ vanishes.
AsymptoticPair asymptotic_pair(cplx lambda, const SystemParams& P);

enum class Branch { plus, minus };

// rho^-1 e^{-+ i psi} (omega - s^2 - 1) -+ 2 i rho^-1 omega e^{-+ i psi}, as
// published. The linearization gives omega^2 in place of the first omega;
// see README.
cplx essential_spectrum(double s, Branch branch, const SystemParams& P);

struct ClearanceOptions {
  double s_max = 100.0;
  double s_step = 0.01;
  double warn_below = 1e-2;
};

struct Clearance {
  double distance;  // min over sampled S_ess of the distance to the circle
  bool low;         // distance < warn_below
};

Clearance contour_clearance(const ContourSpec& K, const SystemParams& P, const ClearanceOptions& opt = {});

}  // namespace gphase
