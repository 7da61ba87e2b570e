#pragma once

// State and parameter types of the armed-revolt model and the right-hand
// sides of its three variants (basic, direct intervention, opportunistic
// population).
//
// Notation: S is the fraction of the population supporting Blue and C = 1 - S
// the fraction supporting Red ("contrarians"). SB, SR, CR, CB are the
// fractions of the total population that are supporters under Blue,
// supporters under Red, contrarians under Red and contrarians under Blue.

#include <array>

namespace revolt {

/// Tolerance on SB + SR + CR + CB = 1 when a BasicState is constructed.
inline constexpr double kStateSumTolerance = 1e-12;

/// Attrition rates of the four kinds of engagements. All strictly positive.
class RateParams {
 public:
  /// @param f_S liberation of supporter regions (by Blue)
  /// @param f_C liberation of contrarian regions (by Red)
  /// @param h_S subjugation of supporter regions (by Red)
  /// @param h_C subjugation of contrarian regions (by Blue)
  RateParams(double f_S, double f_C, double h_S, double h_C);

  /// A dominant realization of the given LSER pair with h_C = scale:
  /// h_S = scale * sqrt(r_C / r_S) lies strictly between h_C / r_S and
  /// r_C * h_C whenever r_S * r_C > 1, so the result is dominant exactly
  /// when the ratios admit any dominant realization.
  static RateParams from_lsers(double r_S, double r_C, double scale = 1.0);

  double supporter_liberation() const noexcept { return f_S_; }
  double contrarian_liberation() const noexcept { return f_C_; }
  double supporter_subjugation() const noexcept { return h_S_; }
  double contrarian_subjugation() const noexcept { return h_C_; }

  /// Liberation-subjugation effectiveness ratio in supporter regions, f_S / h_S.
  double supporter_lser() const noexcept { return f_S_ / h_S_; }
  /// Liberation-subjugation effectiveness ratio in contrarian regions, f_C / h_C.
  double contrarian_lser() const noexcept { return f_C_ / h_C_; }

  /// Each side fights better in friendly territory: f_S > h_C and f_C > h_S.
  bool dominant() const noexcept { return f_S_ > h_C_ && f_C_ > h_S_; }

  RateParams scaled(double factor) const;

  friend bool operator==(const RateParams&, const RateParams&) = default;

 private:
  double f_S_, f_C_, h_S_, h_C_;
};

class PopulationSplit {
 public:
  explicit PopulationSplit(double supporters);

  double supporters() const noexcept { return s_; }
  double contrarians() const noexcept { return 1.0 - s_; }

  friend bool operator==(const PopulationSplit&, const PopulationSplit&) = default;

 private:
  double s_;
};

/// The two independent coordinates of the fixed-population models.
/// SR = S - SB and CB = 1 - S - CR are implied.
struct ReducedState {
  double sb = 0.0;
  double cr = 0.0;

  friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

/// Opportunistic-population state: S is a dynamic variable.
struct OpportunisticState {
  double sb = 0.0;
  double cr = 0.0;
  double s = 0.0;

  friend bool operator==(const OpportunisticState&, const OpportunisticState&) = default;
};

/// Full four-variable state. Components lie in [0, 1] and sum to one.
class BasicState {
 public:
  BasicState(double sb, double sr, double cr, double cb);

  static BasicState from_reduced(const ReducedState& state, const PopulationSplit& split);
  static BasicState from_opportunistic(const OpportunisticState& state);
  /// Scales non-negative components so they sum to one. Never applied implicitly.
  static BasicState renormalized(double sb, double sr, double cr, double cb);

  double sb() const noexcept { return v_[0]; }
  double sr() const noexcept { return v_[1]; }
  double cr() const noexcept { return v_[2]; }
  double cb() const noexcept { return v_[3]; }

  double supporters() const noexcept { return v_[0] + v_[1]; }
  double blue_controlled() const noexcept { return v_[0] + v_[3]; }
  double red_controlled() const noexcept { return v_[1] + v_[2]; }

  /// Whether SB + SR and CR + CB match the split within kStateSumTolerance.
  bool consistent_with(const PopulationSplit& split) const noexcept;

  ReducedState reduced() const noexcept { return {v_[0], v_[2]}; }

  friend bool operator==(const BasicState&, const BasicState&) = default;

 private:
  std::array<double, 4> v_;
};

/// Foreign combat power added on Blue's side, per region type. Zero means none.
class DirectIntervention {
 public:
  DirectIntervention(double lambda_S, double lambda_C);

  double supporter_power() const noexcept { return lambda_S_; }
  double contrarian_power() const noexcept { return lambda_C_; }

  /// lambda_S / f_S: intervention expressed as an equivalent Blue force in supporter regions.
  double supporter_offset(const RateParams& rates) const noexcept {
    return lambda_S_ / rates.supporter_liberation();
  }
  /// lambda_C / h_C: intervention expressed as an equivalent Blue force in contrarian regions.
  double contrarian_offset(const RateParams& rates) const noexcept {
    return lambda_C_ / rates.contrarian_subjugation();
  }

  bool active() const noexcept { return lambda_S_ > 0.0 || lambda_C_ > 0.0; }

  friend bool operator==(const DirectIntervention&, const DirectIntervention&) = default;

 private:
  double lambda_S_, lambda_C_;
};

/// Force multipliers on Blue's own rates: mu_S scales f_S, mu_C scales h_C.
class IndirectIntervention {
 public:
  IndirectIntervention(double mu_S, double mu_C);

  double liberation_multiplier() const noexcept { return mu_S_; }
  double subjugation_multiplier() const noexcept { return mu_C_; }

  friend bool operator==(const IndirectIntervention&, const IndirectIntervention&) = default;

 private:
  double mu_S_, mu_C_;
};

class OpportunisticParams {
 public:
  /// @param alpha allegiance-switching rate, shared by both directions
  explicit OpportunisticParams(double alpha);

  double switching_rate() const noexcept { return alpha_; }

  friend bool operator==(const OpportunisticParams&, const OpportunisticParams&) = default;

 private:
  double alpha_;
};

struct ReducedRate {
  double sb = 0.0;
  double cr = 0.0;
};

struct BasicRate {
  double sb = 0.0;
  double sr = 0.0;
  double cr = 0.0;
  double cb = 0.0;
};

struct OpportunisticRate {
  double sb = 0.0;
  double cr = 0.0;
  double s = 0.0;
};

// Invariant checks. Each throws PreconditionError naming the violated bound.
void check_state(const ReducedState& state, const PopulationSplit& split);
void check_state(const OpportunisticState& state);

ReducedRate rhs_basic(const ReducedState& state, const PopulationSplit& split,
                      const RateParams& rates);

BasicRate rhs_full_basic(const BasicState& state, const RateParams& rates);

ReducedRate rhs_direct(const ReducedState& state, const PopulationSplit& split,
                       const RateParams& rates, const DirectIntervention& iv);

OpportunisticRate rhs_opportunistic(const OpportunisticState& state, const RateParams& rates,
                                    const OpportunisticParams& op);

/// Rates after indirect intervention: f_S scaled by mu_S and h_C by mu_C.
RateParams apply_indirect(const RateParams& rates, const IndirectIntervention& iv);

/// Unchecked right-hand sides, valid for any real arguments. The integrator
/// evaluates Runge-Kutta stages that may sit a rounding error outside the
/// state box, so it cannot go through the checked entry points.
namespace kernel {

inline ReducedRate basic(double sb, double cr, double s, const RateParams& r) noexcept {
  return {r.supporter_liberation() * sb * (s - sb) - r.supporter_subjugation() * cr * sb,
          r.contrarian_liberation() * cr * (1.0 - s - cr) - r.contrarian_subjugation() * sb * cr};
}

inline ReducedRate direct(double sb, double cr, double s, const RateParams& r,
                          double offset_s, double offset_c) noexcept {
  return {r.supporter_liberation() * (sb + offset_s) * (s - sb) -
              r.supporter_subjugation() * cr * sb,
          r.contrarian_liberation() * cr * (1.0 - s - cr) -
              r.contrarian_subjugation() * (sb + offset_c) * cr};
}

inline OpportunisticRate opportunistic(double sb, double cr, double s, const RateParams& r,
                                       double alpha) noexcept {
  const ReducedRate fixed = basic(sb, cr, s, r);
  return {fixed.sb, fixed.cr,
          alpha * (sb + 1.0 - s - cr) * (1.0 - s) - alpha * (cr + s - sb) * s};
}

}  // namespace kernel

}  // namespace revolt
