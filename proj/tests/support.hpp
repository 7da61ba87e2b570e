#pragma once

// Shared helpers for the test binaries: seeded draws of dominant rates and
// independent numerical oracles (finite differences, bisection, direct
// linear solves).

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "revolt/model.hpp"

namespace revolt::testing {

class Draws {
 public:
  explicit Draws(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  /// Rates drawn log-uniformly from [0.1, 10] until dominant.
  RateParams dominant_rates() {
    for (;;) {
      const double fs = log_uniform(0.1, 10), fc = log_uniform(0.1, 10);
      const double hs = log_uniform(0.1, 10), hc = log_uniform(0.1, 10);
      if (fs > hc && fc > hs) return RateParams(fs, fc, hs, hc);
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Central-difference Jacobian of f: R^N -> R^N.
template <std::size_t N>
std::array<std::array<double, N>, N> numeric_jacobian(
    const std::function<std::array<double, N>(const std::array<double, N>&)>& f,
    const std::array<double, N>& x) {
  std::array<std::array<double, N>, N> jac{};
  for (std::size_t j = 0; j < N; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    auto plus = x, minus = x;
    plus[j] += h;
    minus[j] -= h;
    const auto fp = f(plus), fm = f(minus);
    for (std::size_t i = 0; i < N; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

/// Root of a continuous g on [lo, hi] with a sign change, by plain bisection.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int k = 0; k < 200 && hi - lo > 1e-16; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Interior stalemate of the basic model, solved as the linear system
///   f_S (S - SB) = h_S CR,   f_C (1 - S - CR) = h_C SB
/// by Cramer's rule.
inline std::array<double, 2> basic_stalemate_oracle(double s, const RateParams& r) {
  const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
  const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
  // [fs  hs] [SB]   [fs S     ]
  // [hc  fc] [CR] = [fc (1-S) ]
  const double det = fs * fc - hs * hc;
  const double b1 = fs * s, b2 = fc * (1.0 - s);
  return {(b1 * fc - hs * b2) / det, (fs * b2 - hc * b1) / det};
}

/// Stalemate of the direct-intervention model with SB in (0, S): on dCR = 0
/// with CR > 0, CR = 1 - S - h_C (SB + A_C) / f_C; the SB equation is then
/// solved by bisection.
inline std::array<double, 2> direct_stalemate_oracle(double s, const RateParams& r, double ls,
                                                     double lc) {
  const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
  const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
  const double as = ls / fs, ac = lc / hc;
  auto cr_of = [&](double sb) { return 1.0 - s - hc * (sb + ac) / fc; };
  auto g = [&](double sb) { return fs * (sb + as) * (s - sb) - hs * cr_of(sb) * sb; };
  const double sb = bisect(g, 0.0, s);
  return {sb, cr_of(sb)};
}

/// 2x2 stability by the Routh-Hurwitz test: trace < 0 and det > 0.
inline bool hurwitz_stable(const std::array<std::array<double, 2>, 2>& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return tr < 0.0 && det > 0.0;
}

}  // namespace revolt::testing
