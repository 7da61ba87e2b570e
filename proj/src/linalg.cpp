#include "revolt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace revolt {
namespace {

using cplx = std::complex<double>;

// Monic cubic x^3 + c2 x^2 + c1 x + c0.
struct Cubic {
  double c2, c1, c0;

  template <typename T>
  T operator()(T x) const {
    return ((x + c2) * x + c1) * x + c0;
  }
  template <typename T>
  T derivative(T x) const {
    return (3.0 * x + 2.0 * c2) * x + c1;
  }
};

template <typename T>
T newton_polish(const Cubic& p, T x, int iterations) {
  for (int i = 0; i < iterations; ++i) {
    const T d = p.derivative(x);
    if (std::abs(d) == 0.0) break;
    const T next = x - p(x) / d;
    if (!(std::abs(p(next)) < std::abs(p(x)))) break;
    x = next;
  }
  return x;
}

// A real root of the cubic. Chooses the largest-magnitude real root in the
// three-real-root case, which deflates most stably.
double real_root(const Cubic& p) {
  const double shift = p.c2 / 3.0;
  const double q1 = p.c1 - p.c2 * p.c2 / 3.0;
  const double q0 = 2.0 * p.c2 * p.c2 * p.c2 / 27.0 - p.c2 * p.c1 / 3.0 + p.c0;
  const double disc = q0 * q0 / 4.0 + q1 * q1 * q1 / 27.0;
  double t;
  if (disc > 0.0) {
    const double a = -q0 / 2.0 - std::copysign(std::sqrt(disc), q0);
    const double u = std::cbrt(a);
    t = (u == 0.0) ? 0.0 : u - q1 / (3.0 * u);
  } else if (q1 == 0.0) {
    t = 0.0;
  } else {
    const double m = 2.0 * std::sqrt(-q1 / 3.0);
    const double arg = std::clamp(3.0 * q0 / (q1 * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    double best = m * std::cos(theta);
    for (int k = 1; k < 3; ++k) {
      const double cand = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      if (std::abs(cand - shift) > std::abs(best - shift)) best = cand;
    }
    t = best;
  }
  return newton_polish(p, t - shift, 8);
}

std::array<cplx, 2> quadratic_roots(double b, double c) {
  // x^2 + b x + c
  const double disc = b * b / 4.0 - c;
  if (disc >= 0.0) {
    const double q = -b / 2.0 - std::copysign(std::sqrt(disc), b);
    if (q == 0.0) return {cplx(0.0), cplx(0.0)};
    return {cplx(q), cplx(c / q)};
  }
  const double im = std::sqrt(-disc);
  return {cplx(-b / 2.0, im), cplx(-b / 2.0, -im)};
}

}  // namespace

double trace(const Matrix2& m) noexcept { return m[0][0] + m[1][1]; }
double trace(const Matrix3& m) noexcept { return m[0][0] + m[1][1] + m[2][2]; }

double determinant(const Matrix2& m) noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double determinant(const Matrix3& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Spectrum<2> eigenvalues(const Matrix2& m) noexcept {
  const double half_tr = trace(m) / 2.0;
  const double half_gap = (m[0][0] - m[1][1]) / 2.0;
  const double disc = half_gap * half_gap + m[0][1] * m[1][0];
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double big = half_tr + std::copysign(root, half_tr);
    if (big == 0.0) return {cplx(0.0), cplx(0.0)};
    return {cplx(big), cplx(determinant(m) / big)};
  }
  const double im = std::sqrt(-disc);
  return {cplx(half_tr, im), cplx(half_tr, -im)};
}

Spectrum<3> eigenvalues(const Matrix3& m) noexcept {
  const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                        (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                        (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  const Cubic p{-trace(m), minors, -determinant(m)};
  const double r = real_root(p);
  const double b1 = p.c2 + r;
  const double b0 = p.c1 + r * b1;
  const auto rest = quadratic_roots(b1, b0);
  Spectrum<3> out{cplx(r), rest[0], rest[1]};
  for (std::size_t i = 1; i < 3; ++i) {
    if (out[i].imag() == 0.0) {
      out[i] = cplx(newton_polish(p, out[i].real(), 4));
    } else {
      out[i] = newton_polish(p, out[i], 4);
    }
  }
  // Keep conjugate pairs exact after polishing.
  if (out[1].imag() != 0.0) out[2] = std::conj(out[1]);
  return out;
}

std::array<double, 3> eigenvector(const Matrix3& m, double value) noexcept {
  Matrix3 a = m;
  for (int i = 0; i < 3; ++i) a[i][i] -= value;
  auto cross = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return std::array<double, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                 u[0] * v[1] - u[1] * v[0]};
  };
  auto norm = [](const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  // The null vector is orthogonal to every row; the best-conditioned cross
  // product of two rows gives it.
  std::array<double, 3> best{};
  double best_norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const auto c = cross(a[i], a[j]);
      const double n = norm(c);
      if (n > best_norm) {
        best = c;
        best_norm = n;
      }
    }
  }
  if (best_norm == 0.0) return {1.0, 0.0, 0.0};
  for (double& v : best) v /= best_norm;
  return best;
}

}  // namespace revolt
