#include "revolt/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "revolt/errors.hpp"

namespace revolt {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw PreconditionError(std::string(name) + " must be finite and > 0, got " + num(v));
  }
}

void require_at_least(double v, double lo, const char* name) {
  if (!std::isfinite(v) || !(v >= lo)) {
    throw PreconditionError(std::string(name) + " must be finite and >= " + num(lo) + ", got " +
                            num(v));
  }
}

void require_unit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw PreconditionError(std::string(name) + " must lie in [0, 1], got " + num(v));
  }
}

void require_between(double v, double lo, double hi, const char* name) {
  if (!std::isfinite(v) || v < lo || v > hi) {
    throw PreconditionError(std::string(name) + " must lie in [" + num(lo) + ", " + num(hi) +
                            "], got " + num(v));
  }
}

}  // namespace

RateParams::RateParams(double f_S, double f_C, double h_S, double h_C)
    : f_S_(f_S), f_C_(f_C), h_S_(h_S), h_C_(h_C) {
  require_positive(f_S, "f_S");
  require_positive(f_C, "f_C");
  require_positive(h_S, "h_S");
  require_positive(h_C, "h_C");
  // Ratios can still overflow for extreme inputs.
  if (!std::isfinite(supporter_lser()) || !std::isfinite(contrarian_lser())) {
    throw PreconditionError("LSERs f_S/h_S and f_C/h_C must be finite");
  }
}

RateParams RateParams::from_lsers(double r_S, double r_C, double scale) {
  require_positive(r_S, "r_S");
  require_positive(r_C, "r_C");
  require_positive(scale, "scale");
  const double h_C = scale;
  const double h_S = scale * std::sqrt(r_C / r_S);
  return RateParams(r_S * h_S, r_C * h_C, h_S, h_C);
}

RateParams RateParams::scaled(double factor) const {
  require_positive(factor, "scale factor");
  return RateParams(f_S_ * factor, f_C_ * factor, h_S_ * factor, h_C_ * factor);
}

PopulationSplit::PopulationSplit(double supporters) : s_(supporters) {
  require_unit(supporters, "S");
}

BasicState::BasicState(double sb, double sr, double cr, double cb) : v_{sb, sr, cr, cb} {
  require_unit(sb, "SB");
  require_unit(sr, "SR");
  require_unit(cr, "CR");
  require_unit(cb, "CB");
  const double total = sb + sr + cr + cb;
  if (std::abs(total - 1.0) > kStateSumTolerance) {
    throw PreconditionError("SB + SR + CR + CB must equal 1, got " + num(total));
  }
}

BasicState BasicState::from_reduced(const ReducedState& state, const PopulationSplit& split) {
  check_state(state, split);
  const double s = split.supporters();
  return BasicState(state.sb, s - state.sb, state.cr, (1.0 - s) - state.cr);
}

BasicState BasicState::from_opportunistic(const OpportunisticState& state) {
  check_state(state);
  return BasicState(state.sb, state.s - state.sb, state.cr, (1.0 - state.s) - state.cr);
}

BasicState BasicState::renormalized(double sb, double sr, double cr, double cb) {
  for (double v : {sb, sr, cr, cb}) require_at_least(v, 0.0, "state component");
  const double total = sb + sr + cr + cb;
  require_positive(total, "state total");
  return BasicState(sb / total, sr / total, cr / total, cb / total);
}

bool BasicState::consistent_with(const PopulationSplit& split) const noexcept {
  return std::abs(supporters() - split.supporters()) <= kStateSumTolerance &&
         std::abs(v_[2] + v_[3] - split.contrarians()) <= kStateSumTolerance;
}

DirectIntervention::DirectIntervention(double lambda_S, double lambda_C)
    : lambda_S_(lambda_S), lambda_C_(lambda_C) {
  require_at_least(lambda_S, 0.0, "lambda_S");
  require_at_least(lambda_C, 0.0, "lambda_C");
}

IndirectIntervention::IndirectIntervention(double mu_S, double mu_C) : mu_S_(mu_S), mu_C_(mu_C) {
  require_at_least(mu_S, 1.0, "mu_S");
  require_at_least(mu_C, 1.0, "mu_C");
}

OpportunisticParams::OpportunisticParams(double alpha) : alpha_(alpha) {
  require_positive(alpha, "alpha");
}

void check_state(const ReducedState& state, const PopulationSplit& split) {
  require_between(state.sb, 0.0, split.supporters(), "SB");
  require_between(state.cr, 0.0, split.contrarians(), "CR");
}

void check_state(const OpportunisticState& state) {
  require_unit(state.s, "S");
  require_between(state.sb, 0.0, state.s, "SB");
  require_between(state.cr, 0.0, 1.0 - state.s, "CR");
}

ReducedRate rhs_basic(const ReducedState& state, const PopulationSplit& split,
                      const RateParams& rates) {
  check_state(state, split);
  return kernel::basic(state.sb, state.cr, split.supporters(), rates);
}

BasicRate rhs_full_basic(const BasicState& state, const RateParams& rates) {
  const double sb_gain = rates.supporter_liberation() * state.sb() * state.sr() -
                         rates.supporter_subjugation() * state.cr() * state.sb();
  const double cr_gain = rates.contrarian_liberation() * state.cr() * state.cb() -
                         rates.contrarian_subjugation() * state.sb() * state.cr();
  return {sb_gain, -sb_gain, cr_gain, -cr_gain};
}

ReducedRate rhs_direct(const ReducedState& state, const PopulationSplit& split,
                       const RateParams& rates, const DirectIntervention& iv) {
  check_state(state, split);
  return kernel::direct(state.sb, state.cr, split.supporters(), rates,
                        iv.supporter_offset(rates), iv.contrarian_offset(rates));
}

OpportunisticRate rhs_opportunistic(const OpportunisticState& state, const RateParams& rates,
                                    const OpportunisticParams& op) {
  check_state(state);
  return kernel::opportunistic(state.sb, state.cr, state.s, rates, op.switching_rate());
}

RateParams apply_indirect(const RateParams& rates, const IndirectIntervention& iv) {
  return RateParams(rates.supporter_liberation() * iv.liberation_multiplier(),
                    rates.contrarian_liberation(), rates.supporter_subjugation(),
                    rates.contrarian_subjugation() * iv.subjugation_multiplier());
}

}  // namespace revolt
