#include "revolt/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "revolt/ode.hpp"

namespace revolt {
namespace {

template <std::size_t N>
std::array<double, 3> widen(const ode::Vec<N>& y) {
  std::array<double, 3> out{};
  std::copy(y.begin(), y.end(), out.begin());
  return out;
}

// Clamps `v` into [lo, hi] and returns how far outside it was.
double clamp_into(double& v, double lo, double hi) {
  const double over = std::max({lo - v, v - hi, 0.0});
  v = std::clamp(v, lo, hi);
  return over;
}

void fail_overshoot(double over) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "state left the valid box by %.3g (limit %.0e)", over, kBoxSlack);
  throw IntegrationFailure(buf);
}

template <std::size_t N, class Rhs, class Clip, class ToState>
Trajectory run(Rhs&& f, ode::Vec<N> y, const IntegratorConfig& cfg,
               const std::vector<KnownEquilibrium>& known, Clip&& clip, ToState&& to_state) {
  cfg.validate();
  Trajectory traj;
  traj.dimension = N;
  std::size_t accepted = 0;
  bool last_recorded = false;

  auto record = [&](double t, const ode::Vec<N>& state, double norm) {
    traj.times.push_back(t);
    traj.coords.push_back(widen(state));
    traj.states.push_back(to_state(state));
    traj.rhs_norms.push_back(norm);
  };

  auto observe = [&](double t, const ode::Vec<N>& state, const ode::Vec<N>& dydt) {
    const double norm = ode::max_norm(dydt);
    last_recorded = (accepted++ % cfg.record_stride) == 0;
    if (last_recorded) record(t, state, norm);

    const KnownEquilibrium* nearest = nullptr;
    double nearest_dist = 0.0;
    for (const auto& eq : known) {
      double dist = 0.0;
      for (std::size_t i = 0; i < N; ++i) dist = std::max(dist, std::abs(state[i] - eq.coords[i]));
      if (nearest == nullptr || dist < nearest_dist) {
        nearest = &eq;
        nearest_dist = dist;
      }
    }
    const bool close = nearest != nullptr && nearest_dist < cfg.proximity_eps;
    if (!close && norm >= cfg.convergence_eps) return false;

    if (!last_recorded) record(t, state, norm);
    last_recorded = true;
    traj.terminal.kind = TerminalKind::ConvergedToEquilibrium;
    traj.terminal.equilibrium =
        (nearest != nullptr && (close || nearest_dist < 1e-4)) ? nearest->label : "unlisted";
    return true;
  };

  ode::AdaptiveOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.t_end = cfg.t_max;
  const double t_end = ode::dormand_prince<N>(f, y, opt, clip, observe);

  if (!traj.converged()) {
    traj.terminal = {TerminalKind::HorizonReached, ""};
    if (!last_recorded) record(t_end, y, ode::max_norm(f(y)));
  }
  return traj;
}

std::vector<KnownEquilibrium> fixed_population_equilibria(const PopulationSplit& split,
                                                          const RateParams& rates) {
  const double s = split.supporters();
  std::vector<KnownEquilibrium> out{{"origin", {0.0, 0.0, 0.0}},
                                    {"blue_victory", {s, 0.0, 0.0}},
                                    {"red_victory", {0.0, 1.0 - s, 0.0}}};
  if (rates.supporter_lser() * rates.contrarian_lser() > 1.0) {
    const ReducedState p = stalemate_basic_point(split, rates);
    if (p.sb > 0.0 && p.sb < s && p.cr > 0.0 && p.cr < 1.0 - s) {
      out.push_back({"stalemate", {p.sb, p.cr, 0.0}});
    }
  }
  return out;
}

}  // namespace

void IntegratorConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(rel_tol) || !positive(abs_tol) || !positive(t_max) ||
      !positive(convergence_eps) || !positive(proximity_eps)) {
    throw PreconditionError("integrator tolerances and t_max must be finite and > 0");
  }
  if (record_stride == 0) throw PreconditionError("record_stride must be >= 1");
}

std::vector<KnownEquilibrium> known_equilibria(const Model& model) {
  if (const auto* m = std::get_if<BasicModel>(&model)) {
    return fixed_population_equilibria(m->split, m->rates);
  }
  if (const auto* m = std::get_if<DirectModel>(&model)) {
    if (!m->intervention.active()) return fixed_population_equilibria(m->split, m->rates);
    const double s = m->split.supporters();
    std::vector<KnownEquilibrium> out{{"blue_victory", {s, 0.0, 0.0}}};
    if (m->rates.supporter_lser() * m->rates.contrarian_lser() > 1.0) {
      const ReducedState p = stalemate_direct_point(m->split, m->rates, m->intervention);
      if (p.sb >= 0.0 && p.sb < s && p.cr > 0.0 && p.cr < 1.0 - s) {
        out.push_back({"stalemate", {p.sb, p.cr, 0.0}});
      }
    }
    if (m->intervention.supporter_power() == 0.0) {
      // Without support in friendly regions Blue's own force can be wiped out
      // while the foreign power still holds part of Red's territory.
      out.push_back({"origin", {0.0, 0.0, 0.0}});
      const double cr = (1.0 - s) - m->intervention.contrarian_offset(m->rates) /
                                        m->rates.contrarian_lser();
      if (cr > 0.0) out.push_back({"blue_eliminated", {0.0, cr, 0.0}});
    }
    return out;
  }
  const auto& m = std::get<OpportunisticModel>(model);
  const OpportunisticState b = balanced_stalemate(m.rates);
  return {{"disarmed", {0.0, 0.0, 0.5}},
          {"blue_victory", {1.0, 0.0, 1.0}},
          {"red_victory", {0.0, 1.0, 0.0}},
          {"balanced", {b.sb, b.cr, b.s}}};
}

ReducedState default_initial_state(const PopulationSplit& split) {
  return {0.9 * split.supporters(), 0.9 * split.contrarians()};
}

OpportunisticState default_initial_state(double s0) {
  const OpportunisticState out{0.9 * s0, 0.9 * (1.0 - s0), s0};
  check_state(out);
  return out;
}

Trajectory integrate(const BasicModel& model, const ReducedState& init,
                     const IntegratorConfig& cfg) {
  check_state(init, model.split);
  const double s = model.split.supporters();
  const RateParams rates = model.rates;
  auto f = [s, rates](const ode::Vec<2>& y) -> ode::Vec<2> {
    const auto d = kernel::basic(y[0], y[1], s, rates);
    return {d.sb, d.cr};
  };
  auto clip = [s](ode::Vec<2>& y) {
    const double over = std::max(clamp_into(y[0], 0.0, s), clamp_into(y[1], 0.0, 1.0 - s));
    if (over > kBoxSlack) fail_overshoot(over);
  };
  auto to_state = [s](const ode::Vec<2>& y) {
    return BasicState(y[0], s - y[0], y[1], (1.0 - s) - y[1]);
  };
  return run<2>(f, ode::Vec<2>{init.sb, init.cr}, cfg, known_equilibria(Model{model}), clip,
                to_state);
}

Trajectory integrate(const DirectModel& model, const ReducedState& init,
                     const IntegratorConfig& cfg) {
  check_state(init, model.split);
  const double s = model.split.supporters();
  const RateParams rates = model.rates;
  const double a_s = model.intervention.supporter_offset(rates);
  const double a_c = model.intervention.contrarian_offset(rates);
  auto f = [=](const ode::Vec<2>& y) -> ode::Vec<2> {
    const auto d = kernel::direct(y[0], y[1], s, rates, a_s, a_c);
    return {d.sb, d.cr};
  };
  auto clip = [s](ode::Vec<2>& y) {
    const double over = std::max(clamp_into(y[0], 0.0, s), clamp_into(y[1], 0.0, 1.0 - s));
    if (over > kBoxSlack) fail_overshoot(over);
  };
  auto to_state = [s](const ode::Vec<2>& y) {
    return BasicState(y[0], s - y[0], y[1], (1.0 - s) - y[1]);
  };
  return run<2>(f, ode::Vec<2>{init.sb, init.cr}, cfg, known_equilibria(Model{model}), clip,
                to_state);
}

Trajectory integrate(const OpportunisticModel& model, const OpportunisticState& init,
                     const IntegratorConfig& cfg) {
  check_state(init);
  const RateParams rates = model.rates;
  const double alpha = model.params.switching_rate();
  auto f = [=](const ode::Vec<3>& y) -> ode::Vec<3> {
    const auto d = kernel::opportunistic(y[0], y[1], y[2], rates, alpha);
    return {d.sb, d.cr, d.s};
  };
  auto clip = [](ode::Vec<3>& y) {
    double over = clamp_into(y[2], 0.0, 1.0);
    over = std::max(over, clamp_into(y[0], 0.0, y[2]));
    over = std::max(over, clamp_into(y[1], 0.0, 1.0 - y[2]));
    if (over > kBoxSlack) fail_overshoot(over);
  };
  auto to_state = [](const ode::Vec<3>& y) {
    return BasicState(y[0], y[2] - y[0], y[1], (1.0 - y[2]) - y[1]);
  };
  return run<3>(f, ode::Vec<3>{init.sb, init.cr, init.s}, cfg, known_equilibria(Model{model}),
                clip, to_state);
}

Trajectory integrate(const Model& model, const InitialState& init, const IntegratorConfig& cfg) {
  return std::visit(
      [&](const auto& m) -> Trajectory {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, OpportunisticModel>) {
          const auto* s = std::get_if<OpportunisticState>(&init);
          if (s == nullptr) throw PreconditionError("opportunistic model needs (SB, CR, S) state");
          return integrate(m, *s, cfg);
        } else {
          const auto* s = std::get_if<ReducedState>(&init);
          if (s == nullptr) throw PreconditionError("fixed-population model needs (SB, CR) state");
          return integrate(m, *s, cfg);
        }
      },
      model);
}

std::array<double, 3> integrate_rk4(const Model& model, const InitialState& init, double step,
                                    double t_end) {
  if (const auto* m = std::get_if<OpportunisticModel>(&model)) {
    const auto& s0 = std::get<OpportunisticState>(init);
    check_state(s0);
    const double alpha = m->params.switching_rate();
    const RateParams rates = m->rates;
    auto f = [=](const ode::Vec<3>& y) -> ode::Vec<3> {
      const auto d = kernel::opportunistic(y[0], y[1], y[2], rates, alpha);
      return {d.sb, d.cr, d.s};
    };
    return ode::rk4<3>(f, {s0.sb, s0.cr, s0.s}, step, t_end);
  }
  const auto& r0 = std::get<ReducedState>(init);
  const bool direct = std::holds_alternative<DirectModel>(model);
  const PopulationSplit split =
      direct ? std::get<DirectModel>(model).split : std::get<BasicModel>(model).split;
  const RateParams rates =
      direct ? std::get<DirectModel>(model).rates : std::get<BasicModel>(model).rates;
  check_state(r0, split);
  double a_s = 0.0, a_c = 0.0;
  if (direct) {
    const auto& iv = std::get<DirectModel>(model).intervention;
    a_s = iv.supporter_offset(rates);
    a_c = iv.contrarian_offset(rates);
  }
  const double s = split.supporters();
  auto f = [=](const ode::Vec<2>& y) -> ode::Vec<2> {
    const auto d = kernel::direct(y[0], y[1], s, rates, a_s, a_c);
    return {d.sb, d.cr};
  };
  return widen(ode::rk4<2>(f, {r0.sb, r0.cr}, step, t_end));
}

Outcome outcome_from_trajectory(const Trajectory& traj, double tol) {
  if (traj.states.empty()) throw PreconditionError("empty trajectory");
  const BasicState& end = traj.final_state();
  if (!traj.converged()) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "trajectory reached the horizon at t=%.6g without settling "
                  "(SB=%.6g, SR=%.6g, CR=%.6g, CB=%.6g)",
                  traj.times.back(), end.sb(), end.sr(), end.cr(), end.cb());
    throw InconclusiveError(buf, end);
  }
  if (end.red_controlled() < tol) return BlueVictory{};
  if (end.blue_controlled() < tol) return RedVictory{};
  return Stalemate{end};
}

}  // namespace revolt
