#pragma once

// Closed-form equilibria, Jacobians, eigenvalue stability and analytic
// outcome classification for the three model variants.

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "revolt/linalg.hpp"
#include "revolt/model.hpp"

namespace revolt {

struct Tolerances {
  /// Half-width of the band around a classification threshold reported as MarginalBoundary.
  double marginal = 1e-12;
  /// Residual allowed when checking that a closed-form point is a fixed point.
  double fixed_point = 1e-10;
  /// Relative (to the largest Jacobian entry) band around zero for the leading real part.
  double eigen_marginal = 1e-10;
};

struct BlueVictory {
  friend bool operator==(const BlueVictory&, const BlueVictory&) = default;
};
struct RedVictory {
  friend bool operator==(const RedVictory&, const RedVictory&) = default;
};
/// Both sides keep control of part of the population.
struct Stalemate {
  BasicState point;
  friend bool operator==(const Stalemate&, const Stalemate&) = default;
};
/// Parameters sit on a threshold (within tolerance); no side is picked.
struct MarginalBoundary {
  std::string detail;
  friend bool operator==(const MarginalBoundary&, const MarginalBoundary&) = default;
};

using Outcome = std::variant<BlueVictory, RedVictory, Stalemate, MarginalBoundary>;

/// "blue_victory", "red_victory", "stalemate" or "marginal".
std::string_view outcome_tag(const Outcome& outcome) noexcept;

struct StabilityReport {
  std::string label;
  /// Equilibrium coordinates: (SB, CR) or (SB, CR, S).
  std::vector<double> equilibrium;
  std::vector<std::vector<double>> jacobian;
  std::vector<std::complex<double>> eigenvalues;
  bool stable = false;
  bool marginal = false;
  /// False when the closed-form point lies outside the state box.
  bool physical = true;

  double leading_real_part() const;
};

template <std::size_t N>
StabilityReport make_report(std::string label, const std::array<double, N>& point,
                            const Matrix<N>& jacobian, const Tolerances& tol = {});

/// Population-split thresholds of the fixed-population model.
struct VictoryThresholds {
  /// Blue wins iff r_C is below S / (1 - S).
  double blue_wins_below_r_C;
  /// Red wins iff r_S is below (1 - S) / S; r_S at or above it avoids defeat.
  double red_wins_below_r_S;
};

VictoryThresholds victory_thresholds(const PopulationSplit& split);

Outcome classify_basic(const PopulationSplit& split, const RateParams& rates,
                       const Tolerances& tol = {});

/// Interior stalemate of the basic model; throws RegionError outside the stalemate region.
BasicState stalemate_basic(const PopulationSplit& split, const RateParams& rates);
/// Same closed form without the region check (components may be negative).
ReducedState stalemate_basic_point(const PopulationSplit& split, const RateParams& rates);

Matrix2 jacobian_basic(const ReducedState& state, const PopulationSplit& split,
                       const RateParams& rates);

/// Reports for origin, blue_victory, red_victory and stalemate, in that order.
std::vector<StabilityReport> stability_basic(const PopulationSplit& split, const RateParams& rates,
                                             const Tolerances& tol = {});

/// lambda_C above which Blue wins under direct intervention: f_C (1 - S) - h_C S.
double direct_victory_threshold(const PopulationSplit& split, const RateParams& rates);

Outcome classify_direct(const PopulationSplit& split, const RateParams& rates,
                        const DirectIntervention& iv, const Tolerances& tol = {});

BasicState stalemate_direct(const PopulationSplit& split, const RateParams& rates,
                            const DirectIntervention& iv);
/// Positive root of the stalemate quadratic, unchecked. Outside the
/// stalemate regime this is the non-physical continuation of the branch.
ReducedState stalemate_direct_point(const PopulationSplit& split, const RateParams& rates,
                                    const DirectIntervention& iv);

Matrix2 jacobian_direct(const ReducedState& state, const PopulationSplit& split,
                        const RateParams& rates, const DirectIntervention& iv);

/// Numerical test of the (unproven) claim that the intervention stalemate is
/// stable iff (r_C - A_C) / (1 + r_C) > S.
struct ConjectureCheck {
  bool condition_holds = false;
  bool numerically_stable = false;
  bool marginal = false;
  /// The closed-form point lies inside the state box.
  bool interior = false;
  ReducedState point;
  Spectrum<2> eigenvalues{};

  bool agrees() const noexcept { return marginal || condition_holds == numerically_stable; }
};

/// Evaluates the stalemate branch wherever the closed form is defined, so
/// both directions of the equivalence are exercised.
ConjectureCheck check_conjecture(const PopulationSplit& split, const RateParams& rates,
                                 const DirectIntervention& iv, const Tolerances& tol = {});

struct IndirectThresholds {
  /// Smallest mu_S that avoids defeat, clamped below at 1.
  double mu_S_min;
  /// Multiplier mu_C must exceed to win, clamped below at 1.
  double mu_C_min;
  /// Whether Blue needs a multiplier to win at all (S < r_C / (1 + r_C)).
  bool needed;
};

IndirectThresholds indirect_thresholds(const PopulationSplit& split, const RateParams& rates);

Outcome classify_indirect(const PopulationSplit& split, const RateParams& rates,
                          const IndirectIntervention& iv, const Tolerances& tol = {});

Matrix3 jacobian_opportunistic(const OpportunisticState& state, const RateParams& rates,
                               const OpportunisticParams& op);

/// det J_op at the balanced stalemate:
/// alpha r_S r_C (h_S f_C + f_S h_C + 2 h_S h_C) / (2 + r_S + r_C)^2.
double balanced_determinant(const RateParams& rates, const OpportunisticParams& op);

struct OpportunisticEquilibria {
  OpportunisticState balanced;
  /// disarmed, blue_victory, red_victory, balanced.
  std::vector<StabilityReport> reports;
};

OpportunisticEquilibria opportunistic_equilibria(const RateParams& rates,
                                                 const OpportunisticParams& op,
                                                 const Tolerances& tol = {});

OpportunisticState balanced_stalemate(const RateParams& rates);

namespace kernel {

inline Matrix2 jacobian_basic(double sb, double cr, double s, const RateParams& r) noexcept {
  const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
  const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
  return {{{fs * (s - 2.0 * sb) - hs * cr, -hs * sb},
           {-hc * cr, fc * (1.0 - s - 2.0 * cr) - hc * sb}}};
}

inline Matrix2 jacobian_direct(double sb, double cr, double s, const RateParams& r,
                               double offset_s, double offset_c) noexcept {
  const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
  const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
  return {{{fs * (s - 2.0 * sb - offset_s) - hs * cr, -hs * sb},
           {-hc * cr, fc * (1.0 - s - 2.0 * cr) - hc * (sb + offset_c)}}};
}

inline Matrix3 jacobian_opportunistic(double sb, double cr, double s, const RateParams& r,
                                      double alpha) noexcept {
  const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
  const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
  return {{{fs * (s - 2.0 * sb) - hs * cr, -hs * sb, fs * sb},
           {-hc * cr, fc * (1.0 - s - 2.0 * cr) - hc * sb, -fc * cr},
           {alpha, -alpha, -2.0 * alpha}}};
}

}  // namespace kernel

}  // namespace revolt
