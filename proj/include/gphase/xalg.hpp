#pragma once

// Small dense complex linear algebra plus the second exterior power
// Lambda^2(C^4) ~ C^6 used by the compound-matrix formulation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>

#include "gphase/errors.hpp"

namespace gphase {

using cplx = std::complex<double>;

template <std::size_t N>
using Vec = std::array<cplx, N>;

using Vec4 = Vec<4>;
using Vec6 = Vec<6>;

template <std::size_t N>
struct Mat {
  std::array<cplx, N * N> a{};

  constexpr cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  constexpr const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static constexpr Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat diagonal(const Vec<N>& d) {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }
  Vec<N> column(std::size_t j) const {
    Vec<N> c;
    for (std::size_t i = 0; i < N; ++i) c[i] = (*this)(i, j);
    return c;
  }
};

using Mat4 = Mat<4>;
using Mat6 = Mat<6>;

// Ordered index pairs spanning Lambda^2(C^4): e12, e13, e14, e23, e24, e34.
inline constexpr std::array<std::pair<int, int>, 6> kWedgeBasis{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// ---------------------------------------------------------------- vectors

template <std::size_t N>
Vec<N> operator+(const Vec<N>& u, const Vec<N>& v) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = u[i] + v[i];
  return r;
}

template <std::size_t N>
Vec<N> operator-(const Vec<N>& u, const Vec<N>& v) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = u[i] - v[i];
  return r;
}

template <std::size_t N>
Vec<N> operator*(cplx s, const Vec<N>& v) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * v[i];
  return r;
}

template <std::size_t N>
Vec<N> operator*(double s, const Vec<N>& v) {
  return cplx(s) * v;
}

// sum_i u_i conj(v_i); conjugation sits on the second argument.
inline cplx hermitian_inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw ContractViolation("hermitian_inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

template <std::size_t N>
cplx hermitian_inner(const Vec<N>& u, const Vec<N>& v) {
  return hermitian_inner(std::span<const cplx>(u), std::span<const cplx>(v));
}

template <std::size_t N>
double norm_sq(const Vec<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& v) {
  return std::sqrt(norm_sq(v));
}

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// ---------------------------------------------------------------- matrices

template <std::size_t N>
Vec<N> operator*(const Mat<N>& m, const Vec<N>& v) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <std::size_t N>
Mat<N> operator*(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <std::size_t N>
Mat<N> operator+(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = a.a[i] + b.a[i];
  return r;
}

template <std::size_t N>
Mat<N> operator-(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = a.a[i] - b.a[i];
  return r;
}

template <std::size_t N>
Mat<N> operator*(cplx s, const Mat<N>& m) {
  Mat<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.a[i] = s * m.a[i];
  return r;
}

// Frobenius norm.
template <std::size_t N>
double norm(const Mat<N>& m) {
  double s = 0.0;
  for (const auto& x : m.a) s += std::norm(x);
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
  return d;
}

// Matrix with the given columns.
template <std::size_t N>
Mat<N> from_columns(const std::array<Vec<N>, N>& cols) {
  Mat<N> m;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) m(i, j) = cols[j][i];
  return m;
}

namespace detail {

// In-place LU with partial pivoting. Returns the permutation sign, or 0 when
// an exactly zero pivot is met.
template <std::size_t N>
int lu_decompose(Mat<N>& m, std::array<std::size_t, N>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < N; ++i) perm[i] = i;
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < N; ++i)
      if (std::abs(m(i, k)) > best) best = std::abs(m(i, k)), p = i;
    if (best == 0.0) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < N; ++j) std::swap(m(k, j), m(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      const cplx f = m(i, k) / m(k, k);
      m(i, k) = f;
      for (std::size_t j = k + 1; j < N; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return sign;
}

template <std::size_t N>
Vec<N> lu_solve(const Mat<N>& lu, const std::array<std::size_t, N>& perm, const Vec<N>& b) {
  Vec<N> y;
  for (std::size_t i = 0; i < N; ++i) {
    cplx s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t ii = N; ii-- > 0;) {
    cplx s = y[ii];
    for (std::size_t j = ii + 1; j < N; ++j) s -= lu(ii, j) * y[j];
    y[ii] = s / lu(ii, ii);
  }
  return y;
}

}  // namespace detail

template <std::size_t N>
cplx determinant(Mat<N> m) {
  std::array<std::size_t, N> perm;
  const int sign = detail::lu_decompose(m, perm);
  if (sign == 0) return 0.0;
  cplx d = static_cast<double>(sign);
  for (std::size_t i = 0; i < N; ++i) d *= m(i, i);
  return d;
}

// Solves m x = b; throws DegeneracyError on an exactly singular matrix.
template <std::size_t N>
Vec<N> solve(Mat<N> m, const Vec<N>& b) {
  std::array<std::size_t, N> perm;
  if (detail::lu_decompose(m, perm) == 0) throw DegeneracyError("solve: singular matrix");
  return detail::lu_solve(m, perm, b);
}

// Monic characteristic polynomial det(tI - A), coefficients c[0..N] with
// c[N] = 1 and c[k] multiplying t^k (Faddeev-LeVerrier recursion).
template <std::size_t N>
std::array<cplx, N + 1> characteristic_polynomial(const Mat<N>& a) {
  std::array<cplx, N + 1> c{};
  c[N] = 1.0;
  Mat<N> m;  // M_0 = 0
  for (std::size_t k = 1; k <= N; ++k) {
    Mat<N> next = a * m;
    for (std::size_t i = 0; i < N; ++i) next(i, i) += c[N - k + 1];
    m = next;
    const Mat<N> am = a * m;
    cplx tr = 0.0;
    for (std::size_t i = 0; i < N; ++i) tr += am(i, i);
    c[N - k] = -tr / static_cast<double>(k);
  }
  return c;
}

// All roots of the monic polynomial sum_k c[k] t^k (c[D] = 1) by simultaneous
// Aberth-Ehrlich iteration.
template <std::size_t D>
std::array<cplx, D> polynomial_roots(const std::array<cplx, D + 1>& c) {
  auto eval = [&](cplx t) {
    cplx p = c[D], dp = 0.0;
    for (std::size_t k = D; k-- > 0;) {
      dp = dp * t + p;
      p = p * t + c[k];
    }
    return std::pair{p, dp};
  };
  double bound = 0.0;
  for (std::size_t k = 0; k < D; ++k) bound = std::max(bound, std::abs(c[k]));
  bound = 1.0 + bound;  // Cauchy bound
  const double r0 = 0.5 * bound;

  std::array<cplx, D> z;
  for (std::size_t k = 0; k < D; ++k)
    z[k] = std::polar(r0, 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(D));

  for (int iter = 0; iter < 500; ++iter) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < D; ++k) {
      const auto [p, dp] = eval(z[k]);
      if (p == 0.0) continue;
      const cplx ratio = p / dp;
      cplx s = 0.0;
      for (std::size_t j = 0; j < D; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * s);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[k] -= step;
        max_step = std::max(max_step, std::abs(step));
      }
    }
    if (max_step <= 4.0 * std::numeric_limits<double>::epsilon() * bound) break;
  }
  return z;
}

template <std::size_t N>
struct Eigenpair {
  cplx value;
  Vec<N> vector;  // unit Euclidean norm
};

// Eigenpairs of a small dense matrix: roots of the characteristic polynomial,
// each refined by inverse iteration with a Rayleigh-quotient update. Inside a
// cluster of repeated roots, later vectors are kept orthogonal to earlier
// ones, so a defective cluster fails the residual test. Throws
// DegeneracyError when |Aw - mu w| exceeds 1e-10.
template <std::size_t N>
std::array<Eigenpair<N>, N> eigenpairs(const Mat<N>& a) {
  const auto roots = polynomial_roots<N>(characteristic_polynomial(a));
  const double scale = std::max(1.0, norm(a));
  const double eps = std::numeric_limits<double>::epsilon();

  std::array<Eigenpair<N>, N> out;
  for (std::size_t k = 0; k < N; ++k) {
    std::array<std::size_t, N> cluster;
    std::size_t n_cluster = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (std::abs(roots[i] - roots[k]) < 1e-6 * scale) cluster[n_cluster++] = i;
    auto deflate = [&](Vec<N>& v) {
      for (std::size_t c = 0; c < n_cluster; ++c) {
        const Vec<N>& q = out[cluster[c]].vector;
        v = v - hermitian_inner(v, q) * q;
      }
      const double nv = norm(v);
      if (nv > 0.0 && std::isfinite(nv)) v = (1.0 / nv) * v;
      return nv;
    };

    cplx mu = roots[k];
    Vec<N> w;
    for (std::size_t i = 0; i < N; ++i)
      w[i] = cplx(1.0 + 0.1 * static_cast<double>(i + k), 0.05 * static_cast<double>(i * i) - 0.2 * static_cast<double>(k));
    deflate(w);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 4; ++it) {
      Mat<N> shifted = a;
      const cplx shift = mu + cplx(8.0 * eps * scale, 0.0);
      for (std::size_t i = 0; i < N; ++i) shifted(i, i) -= shift;
      std::array<std::size_t, N> perm;
      if (detail::lu_decompose(shifted, perm) != 0) {
        Vec<N> next = detail::lu_solve(shifted, perm, w);
        const double nn = norm(next);
        if (nn > 0.0 && std::isfinite(nn)) {
          next = (1.0 / nn) * next;
          if (deflate(next) > 1e-8) w = next;
        }
      }
      const Vec<N> aw = a * w;
      const cplx rq = hermitian_inner(aw, w);
      const double r_rq = norm(aw - rq * w);
      const double r_mu = norm(aw - mu * w);
      if (r_rq < r_mu) mu = rq;
      residual = std::min(r_rq, r_mu);
      if (residual <= 1e-3 * 1e-10) break;
    }
    if (!(residual <= 1e-10))
      throw DegeneracyError("eigenpairs: residual " + std::to_string(residual) + " exceeds 1e-10 (near-defective matrix?)");
    out[k] = {mu, w};
  }
  return out;
}

inline std::array<Eigenpair<4>, 4> eig4(const Mat4& a) { return eigenpairs(a); }

template <std::size_t N>
std::array<cplx, N> eigenvalues(const Mat<N>& a) {
  std::array<cplx, N> v;
  const auto pairs = eigenpairs(a);
  for (std::size_t i = 0; i < N; ++i) v[i] = pairs[i].value;
  return v;
}

// ------------------------------------------------------- exterior algebra

// Coordinates of u ^ v in the basis kWedgeBasis.
Vec6 wedge2(const Vec4& u, const Vec4& v);

// Coefficient of U ^ S on e1^e2^e3^e4 for two 2-vectors.
cplx wedge4_pair(const Vec6& u, const Vec6& s);

// The matrix acting on Lambda^2 induced by the derivation
// z1 ^ z2 -> A z1 ^ z2 + z1 ^ A z2.
Mat6 induced_compound(const Mat4& a);

}  // namespace gphase
