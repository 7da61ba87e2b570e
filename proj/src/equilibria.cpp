#include "revolt/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "revolt/errors.hpp"

namespace revolt {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_interior(const PopulationSplit& split) {
  const double s = split.supporters();
  if (!(s > 0.0 && s < 1.0)) {
    throw DegenerateSplit("S must lie strictly between 0 and 1, got " + num(s));
  }
}

void require_dominant(const RateParams& rates) {
  if (!rates.dominant()) {
    throw DominanceViolation(
        "rates violate the dominance assumption f_S > h_C and f_C > h_S (f_S=" +
        num(rates.supporter_liberation()) + ", h_C=" + num(rates.contrarian_subjugation()) +
        ", f_C=" + num(rates.contrarian_liberation()) +
        ", h_S=" + num(rates.supporter_subjugation()) + ")");
  }
}

bool near(double margin, double scale, double tol) {
  return std::abs(margin) <= tol * std::max(1.0, std::abs(scale));
}

template <std::size_t N>
std::vector<std::vector<double>> to_rows(const Matrix<N>& m) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
  return rows;
}

}  // namespace

std::string_view outcome_tag(const Outcome& outcome) noexcept {
  switch (outcome.index()) {
    case 0:
      return "blue_victory";
    case 1:
      return "red_victory";
    case 2:
      return "stalemate";
    default:
      return "marginal";
  }
}

double StabilityReport::leading_real_part() const {
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& e : eigenvalues) out = std::max(out, e.real());
  return out;
}

template <std::size_t N>
StabilityReport make_report(std::string label, const std::array<double, N>& point,
                            const Matrix<N>& jacobian, const Tolerances& tol) {
  StabilityReport rep;
  rep.label = std::move(label);
  rep.equilibrium.assign(point.begin(), point.end());
  rep.jacobian = to_rows(jacobian);
  const auto spectrum = eigenvalues(jacobian);
  rep.eigenvalues.assign(spectrum.begin(), spectrum.end());
  const double lead = rep.leading_real_part();
  const double scale = std::max(max_abs(jacobian), std::numeric_limits<double>::min());
  rep.marginal = std::abs(lead) <= tol.eigen_marginal * scale;
  rep.stable = !rep.marginal && lead < 0.0;
  return rep;
}

template StabilityReport make_report<2>(std::string, const std::array<double, 2>&,
                                        const Matrix<2>&, const Tolerances&);
template StabilityReport make_report<3>(std::string, const std::array<double, 3>&,
                                        const Matrix<3>&, const Tolerances&);

VictoryThresholds victory_thresholds(const PopulationSplit& split) {
  require_interior(split);
  const double s = split.supporters();
  return {s / (1.0 - s), (1.0 - s) / s};
}

Outcome classify_basic(const PopulationSplit& split, const RateParams& rates,
                       const Tolerances& tol) {
  require_interior(split);
  require_dominant(rates);
  const auto th = victory_thresholds(split);
  const double blue_margin = th.blue_wins_below_r_C - rates.contrarian_lser();
  const double red_margin = th.red_wins_below_r_S - rates.supporter_lser();
  if (near(blue_margin, th.blue_wins_below_r_C, tol.marginal)) {
    return MarginalBoundary{"r_C = S/(1-S) = " + num(th.blue_wins_below_r_C)};
  }
  if (near(red_margin, th.red_wins_below_r_S, tol.marginal)) {
    return MarginalBoundary{"r_S = (1-S)/S = " + num(th.red_wins_below_r_S)};
  }
  if (blue_margin > 0.0) return BlueVictory{};
  if (red_margin > 0.0) return RedVictory{};
  return Stalemate{stalemate_basic(split, rates)};
}

ReducedState stalemate_basic_point(const PopulationSplit& split, const RateParams& rates) {
  const double s = split.supporters();
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  const double denom = rs * rc - 1.0;
  if (!(denom > 0.0)) {
    throw DominanceViolation("stalemate requires r_S * r_C > 1, got " + num(rs * rc));
  }
  const double cb = (s * (1.0 + rs) - 1.0) / denom;
  const double sr = (rc - s * (1.0 + rc)) / denom;
  return {rc * cb, rs * sr};
}

BasicState stalemate_basic(const PopulationSplit& split, const RateParams& rates) {
  require_interior(split);
  require_dominant(rates);
  const double s = split.supporters();
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  const double denom = rs * rc - 1.0;
  const double cb = (s * (1.0 + rs) - 1.0) / denom;
  const double sr = (rc - s * (1.0 + rc)) / denom;
  const double sb = rc * cb;
  const double cr = rs * sr;
  if (!(sb > 0.0 && sr > 0.0 && cr > 0.0 && cb > 0.0)) {
    throw RegionError("parameters lie outside the stalemate region (SB=" + num(sb) +
                      ", SR=" + num(sr) + ", CR=" + num(cr) + ", CB=" + num(cb) + ")");
  }
  return BasicState(sb, sr, cr, cb);
}

Matrix2 jacobian_basic(const ReducedState& state, const PopulationSplit& split,
                       const RateParams& rates) {
  check_state(state, split);
  return kernel::jacobian_basic(state.sb, state.cr, split.supporters(), rates);
}

std::vector<StabilityReport> stability_basic(const PopulationSplit& split, const RateParams& rates,
                                             const Tolerances& tol) {
  require_interior(split);
  require_dominant(rates);
  const double s = split.supporters();
  auto report = [&](std::string label, double sb, double cr) {
    auto rep = make_report<2>(std::move(label), {sb, cr},
                              kernel::jacobian_basic(sb, cr, s, rates), tol);
    rep.physical = sb >= 0.0 && sb <= s && cr >= 0.0 && cr <= 1.0 - s;
    return rep;
  };
  const ReducedState stale = stalemate_basic_point(split, rates);
  return {report("origin", 0.0, 0.0), report("blue_victory", s, 0.0),
          report("red_victory", 0.0, 1.0 - s), report("stalemate", stale.sb, stale.cr)};
}

double direct_victory_threshold(const PopulationSplit& split, const RateParams& rates) {
  const double s = split.supporters();
  return rates.contrarian_liberation() * (1.0 - s) - rates.contrarian_subjugation() * s;
}

Outcome classify_direct(const PopulationSplit& split, const RateParams& rates,
                        const DirectIntervention& iv, const Tolerances& tol) {
  require_interior(split);
  require_dominant(rates);
  if (!iv.active()) return classify_basic(split, rates, tol);
  const double threshold = direct_victory_threshold(split, rates);
  const double margin = iv.contrarian_power() - threshold;
  if (near(margin, threshold, tol.marginal)) {
    return MarginalBoundary{"lambda_C = f_C(1-S) - h_C S = " + num(threshold)};
  }
  if (margin > 0.0) return BlueVictory{};
  return Stalemate{stalemate_direct(split, rates, iv)};
}

ReducedState stalemate_direct_point(const PopulationSplit& split, const RateParams& rates,
                                    const DirectIntervention& iv) {
  const double s = split.supporters();
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  const double k = rs * rc - 1.0;
  if (!(k > 0.0)) {
    throw DominanceViolation("stalemate requires r_S * r_C > 1, got " + num(rs * rc));
  }
  const double a_s = iv.supporter_offset(rates);
  const double a_c = iv.contrarian_offset(rates);
  const double sb_basic = rc * (s * (1.0 + rs) - 1.0) / k;
  // Positive root of SB^2 - 2 x SB - c = 0.
  const double x = sb_basic / 2.0 - a_s / 2.0 + (a_c - a_s) / (2.0 * k);
  const double c = rs * rc * a_s * s / k;
  const double root = std::sqrt(x * x + c);
  const double sb = x >= 0.0 ? x + root : c / (root - x);
  const double cb = (sb + a_c) / rc;
  return {sb, 1.0 - s - cb};
}

BasicState stalemate_direct(const PopulationSplit& split, const RateParams& rates,
                            const DirectIntervention& iv) {
  require_interior(split);
  const ReducedState p = stalemate_direct_point(split, rates, iv);
  const double s = split.supporters();
  const double sr = s - p.sb;
  const double cb = (1.0 - s) - p.cr;
  if (!(p.cr > 0.0 && sr > 0.0 && p.sb >= 0.0 && cb >= 0.0)) {
    throw RegionError("no intervention stalemate for these parameters (SB=" + num(p.sb) +
                      ", SR=" + num(sr) + ", CR=" + num(p.cr) + ", CB=" + num(cb) +
                      "); the victory regime applies");
  }
  return BasicState(p.sb, sr, p.cr, cb);
}

Matrix2 jacobian_direct(const ReducedState& state, const PopulationSplit& split,
                        const RateParams& rates, const DirectIntervention& iv) {
  check_state(state, split);
  return kernel::jacobian_direct(state.sb, state.cr, split.supporters(), rates,
                                 iv.supporter_offset(rates), iv.contrarian_offset(rates));
}

ConjectureCheck check_conjecture(const PopulationSplit& split, const RateParams& rates,
                                 const DirectIntervention& iv, const Tolerances& tol) {
  require_interior(split);
  require_dominant(rates);
  const double s = split.supporters();
  const double rc = rates.contrarian_lser();
  const double a_c = iv.contrarian_offset(rates);

  ConjectureCheck out;
  const double boundary = (rc - a_c) / (1.0 + rc);
  out.condition_holds = boundary > s;
  out.point = stalemate_direct_point(split, rates, iv);
  out.interior = out.point.sb > 0.0 && out.point.sb < s && out.point.cr > 0.0 &&
                 out.point.cr < 1.0 - s;
  const Matrix2 jac = kernel::jacobian_direct(out.point.sb, out.point.cr, s, rates,
                                              iv.supporter_offset(rates), a_c);
  out.eigenvalues = eigenvalues(jac);
  const double lead = std::max(out.eigenvalues[0].real(), out.eigenvalues[1].real());
  const double scale = std::max(max_abs(jac), std::numeric_limits<double>::min());
  const bool eigen_marginal = std::abs(lead) <= tol.eigen_marginal * scale;
  out.numerically_stable = !eigen_marginal && lead < 0.0;
  out.marginal = eigen_marginal || near(boundary - s, s, tol.marginal);
  return out;
}

IndirectThresholds indirect_thresholds(const PopulationSplit& split, const RateParams& rates) {
  require_interior(split);
  require_dominant(rates);
  const double s = split.supporters();
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  return {std::max(1.0, (1.0 - s) / (rs * s)), std::max(1.0, rc * (1.0 - s) / s),
          s < rc / (1.0 + rc)};
}

Outcome classify_indirect(const PopulationSplit& split, const RateParams& rates,
                          const IndirectIntervention& iv, const Tolerances& tol) {
  return classify_basic(split, apply_indirect(rates, iv), tol);
}

Matrix3 jacobian_opportunistic(const OpportunisticState& state, const RateParams& rates,
                               const OpportunisticParams& op) {
  check_state(state);
  return kernel::jacobian_opportunistic(state.sb, state.cr, state.s, rates, op.switching_rate());
}

OpportunisticState balanced_stalemate(const RateParams& rates) {
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  const double d = 2.0 + rs + rc;
  return {rc / d, rs / d, (1.0 + rc) / d};
}

double balanced_determinant(const RateParams& rates, const OpportunisticParams& op) {
  const double fs = rates.supporter_liberation(), fc = rates.contrarian_liberation();
  const double hs = rates.supporter_subjugation(), hc = rates.contrarian_subjugation();
  const double rs = rates.supporter_lser(), rc = rates.contrarian_lser();
  const double d = 2.0 + rs + rc;
  return op.switching_rate() * rs * rc * (hs * fc + fs * hc + 2.0 * hs * hc) / (d * d);
}

OpportunisticEquilibria opportunistic_equilibria(const RateParams& rates,
                                                 const OpportunisticParams& op,
                                                 const Tolerances& tol) {
  const double alpha = op.switching_rate();
  auto report = [&](std::string label, const OpportunisticState& p) {
    return make_report<3>(std::move(label), {p.sb, p.cr, p.s},
                          kernel::jacobian_opportunistic(p.sb, p.cr, p.s, rates, alpha), tol);
  };
  OpportunisticEquilibria out{balanced_stalemate(rates), {}};
  out.reports.push_back(report("disarmed", {0.0, 0.0, 0.5}));
  out.reports.push_back(report("blue_victory", {1.0, 0.0, 1.0}));
  out.reports.push_back(report("red_victory", {0.0, 1.0, 0.0}));
  out.reports.push_back(report("balanced", out.balanced));
  return out;
}

}  // namespace revolt
