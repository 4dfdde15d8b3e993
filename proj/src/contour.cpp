#include "gphase/contour.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gphase {

void ContourSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ContractViolation("contour radius must be positive, got " + std::to_string(radius));
  if (n_samples < kMinSamples)
    throw ContractViolation("contour needs at least 16 samples, got " + std::to_string(n_samples));
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
    throw ContractViolation("contour center must be finite");
}

std::vector<cplx> discretize_contour(const ContourSpec& spec) {
  spec.validate();
  std::vector<cplx> pts(spec.n_samples);
  const double n = static_cast<double>(spec.n_samples);
  for (std::size_t j = 0; j < spec.n_samples; ++j)
    pts[j] = spec.center + std::polar(spec.radius, 2.0 * std::numbers::pi * static_cast<double>(j) / n);
  return pts;
}

}  // namespace gphase
