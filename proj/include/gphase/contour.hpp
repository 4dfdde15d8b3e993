#pragma once

#include <cstddef>
#include <vector>

#include "gphase/xalg.hpp"

namespace gphase {

// A circle in the spectral plane, sampled counterclockwise starting at angle 0.
struct ContourSpec {
  cplx center{0.0, 0.0};
  double radius = 0.1;
  std::size_t n_samples = 10000;

  static constexpr std::size_t kMinSamples = 16;

  // Throws ContractViolation unless radius > 0 and n_samples >= kMinSamples.
  void validate() const;
};

// lambda_j = center + radius * exp(2 pi i j / n), j = 0 .. n-1.
std::vector<cplx> discretize_contour(const ContourSpec& spec);

}  // namespace gphase
