#include "gphase/xalg.hpp"

namespace gphase {

Vec6 wedge2(const Vec4& u, const Vec4& v) {
  Vec6 w;
  for (std::size_t k = 0; k < kWedgeBasis.size(); ++k) {
    const auto [i, j] = kWedgeBasis[k];
    w[k] = u[i] * v[j] - u[j] * v[i];
  }
  return w;
}

cplx wedge4_pair(const Vec6& u, const Vec6& s) {
  return u[0] * s[5] - u[1] * s[4] + u[2] * s[3] + u[3] * s[2] - u[4] * s[1] + u[5] * s[0];
}

Mat6 induced_compound(const Mat4& a) {
  Mat6 out;
  for (std::size_t k = 0; k < kWedgeBasis.size(); ++k) {
    const auto [i, j] = kWedgeBasis[k];
    Vec4 ei{}, ej{};
    ei[i] = 1.0;
    ej[j] = 1.0;
    const Vec6 col = wedge2(a.column(i), ej) + wedge2(ei, a.column(j));
    for (std::size_t r = 0; r < 6; ++r) out(r, k) = col[r];
  }
  return out;
}

}  // namespace gphase
