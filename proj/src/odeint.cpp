#include "gphase/odeint.hpp"

namespace gphase {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ContractViolation("integrator tolerances must be positive");
  if (!(h_store > 0.0)) throw ContractViolation("storage step must be positive");
  if (max_steps == 0) throw ContractViolation("max_steps must be positive");
}

std::vector<double> storage_grid(double x0, double x1, double h) {
  if (!(h > 0.0)) throw ContractViolation("storage step must be positive");
  if (!(x1 >= x0)) throw ContractViolation("storage grid needs x0 <= x1");
  const double span = x1 - x0;
  const auto m = static_cast<long long>(std::llround(span / h));
  if (std::abs(static_cast<double>(m) * h - span) > 1e-9 * std::max(1.0, span))
    throw ContractViolation("x1 - x0 = " + std::to_string(span) + " is not a multiple of the storage step " +
                            std::to_string(h));
  std::vector<double> grid(static_cast<std::size_t>(m) + 1);
  for (long long k = 0; k <= m; ++k) grid[static_cast<std::size_t>(k)] = x0 + static_cast<double>(k) * h;
  grid.back() = x1;
  return grid;
}

}  // namespace gphase
