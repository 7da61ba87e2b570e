#pragma once

// Generic explicit Runge-Kutta machinery: an embedded Dormand-Prince 5(4)
// pair with PI step-size control, and fixed-step classical RK4 kept as an
// independent verification route.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>

#include "revolt/errors.hpp"

namespace revolt::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_end = 1e4;
  double initial_step = 1e-2;
  std::size_t max_steps = 20'000'000;
};

inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <std::size_t N>
double max_norm(const Vec<N>& v) noexcept {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

/// Integrates y' = f(y) from t = 0.
///
/// `project(y)` runs after every accepted step and may adjust the state in
/// place (e.g. clip roundoff overshoot); it throws to abort.
/// `observe(t, y, dydt)` sees the initial point and every accepted step and
/// returns true to stop. Returns the time reached.
template <std::size_t N, class Rhs, class Project, class Observe>
double dormand_prince(Rhs&& f, Vec<N>& y, const AdaptiveOptions& opt, Project&& project,
                      Observe&& observe) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Fifth-order weights minus the embedded fourth-order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = 0.0;
  Vec<N> k1 = f(y);
  if (observe(t, y, k1)) return t;

  double h = std::min(opt.initial_step, opt.t_end);
  double err_prev = 1e-4;
  Vec<N> k2, k3, k4, k5, k6, k7, tmp, y_new;
  std::size_t steps = 0;

  while (t < opt.t_end) {
    if (++steps > opt.max_steps) {
      throw IntegrationFailure("step budget of " + std::to_string(opt.max_steps) +
                               " exhausted at t=" + short_num(t));
    }
    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t);
    if (h < h_floor) {
      throw IntegrationFailure("step size underflow (h=" + short_num(h) + ") at t=" + short_num(t));
    }
    h = std::min(h, opt.t_end - t);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(tmp);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / scale) * (e / scale);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) {
      h *= 0.2;
      continue;
    }

    if (err <= 1.0) {
      t = (opt.t_end - t - h <= 1e-12 * opt.t_end) ? opt.t_end : t + h;
      y = y_new;
      project(y);
      k1 = (y == y_new) ? k7 : f(y);
      const double e = std::max(err, 1e-10);
      const double factor = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      h *= std::clamp(factor, 0.2, 5.0);
      err_prev = e;
      if (observe(t, y, k1)) return t;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
    }
  }
  return t;
}

/// Classical fourth-order Runge-Kutta with a fixed step, from t = 0 to t_end.
template <std::size_t N, class Rhs>
Vec<N> rk4(Rhs&& f, Vec<N> y, double step, double t_end) {
  if (!(step > 0.0) || !(t_end >= 0.0)) throw PreconditionError("rk4 needs step > 0, t_end >= 0");
  const auto n = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  const double h = n == 0 ? 0.0 : t_end / static_cast<double>(n);
  Vec<N> tmp;
  for (std::size_t s = 0; s < n; ++s) {
    const Vec<N> k1 = f(y);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const Vec<N> k2 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const Vec<N> k3 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const Vec<N> k4 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

}  // namespace revolt::ode
