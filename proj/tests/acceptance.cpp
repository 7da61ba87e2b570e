// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "revolt/equilibria.hpp"
#include "revolt/explore.hpp"
#include "revolt/integrate.hpp"
#include "revolt/linalg.hpp"
#include "revolt/scenario.hpp"
#include "scenario_gen.hpp"
#include "support.hpp"

using namespace revolt;
using revolt::testing::Draws;

namespace {

struct Verdict {
  bool pass = true;
  std::string why;

  void fail(const std::string& msg) {
    if (pass) why = msg;
    pass = false;
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double dist2(const BasicState& a, double sb, double cr) {
  return std::max(std::abs(a.sb() - sb), std::abs(a.cr() - cr));
}

// Expected tag for the S = 0.4 outcome map, from the threshold inequalities alone.
CellTag expected_fig2_tag(double r_s, double r_c) {
  const double s = 0.4;
  if (r_s * r_c <= 1.0 + 1e-12) return CellTag::Excluded;
  const double blue_edge = s / (1.0 - s), red_edge = (1.0 - s) / s;
  if (std::abs(r_c - blue_edge) <= 1e-12 || std::abs(r_s - red_edge) <= 1e-12) {
    return CellTag::Marginal;
  }
  if (r_c < blue_edge) return CellTag::BlueVictory;
  if (r_s < red_edge) return CellTag::RedVictory;
  return CellTag::Stalemate;
}

Verdict criterion_fig2() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const SweepGrid grid = outcome_map(fig2_grid(50, 50));
  const double elapsed = seconds_since(start);

  std::size_t blue = 0, red = 0, excluded = 0;
  for (std::size_t j = 0; j < 50; ++j) {
    for (std::size_t i = 0; i < 50; ++i) {
      const double r_s = 0.1 + 4.9 * static_cast<double>(i) / 49.0;
      const double r_c = 0.1 + 4.9 * static_cast<double>(j) / 49.0;
      const CellTag want = expected_fig2_tag(r_s, r_c);
      const CellTag got = grid.at(i, j).tag;
      if (got != want) {
        v.fail("cell r_S=" + num(r_s) + " r_C=" + num(r_c) + " is " +
               std::string(cell_tag_name(got)) + ", expected " + std::string(cell_tag_name(want)));
      }
      if (want == CellTag::Excluded && !std::isnan(grid.at(i, j).blue_fraction)) {
        v.fail("excluded cell carries a value");
      }
      blue += got == CellTag::BlueVictory;
      red += got == CellTag::RedVictory;
      excluded += got == CellTag::Excluded;
    }
  }
  if (elapsed >= 1.0) v.fail("took " + num(elapsed) + " s");
  if (v.pass) {
    v.why = std::to_string(blue) + " blue, " + std::to_string(red) + " red, " +
            std::to_string(excluded) + " excluded cells in " + num(elapsed) + " s";
  }
  return v;
}

Verdict criterion_oracle_equivalence() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const SweepGrid grid = outcome_map(fig2_grid(50, 50));
  const std::vector<double> xs = grid.x.values(), ys = grid.y.values();
  const PopulationSplit split(0.4);
  std::size_t reached = 0, tried = 0;

  for (std::size_t i = 2; i < 50; i += 5) {
    std::vector<std::size_t> usable;
    for (std::size_t j = 0; j < 50; ++j) {
      const CellTag tag = grid.at(i, j).tag;
      if (tag != CellTag::Excluded && tag != CellTag::Marginal) usable.push_back(j);
    }
    if (usable.size() < 10) {
      v.fail("row r_S=" + num(xs[i]) + " has fewer than 10 classified cells");
      continue;
    }
    for (std::size_t k = 0; k < 10; ++k) {
      const std::size_t j = usable[k * (usable.size() - 1) / 9];
      ++tried;
      const RateParams rates = RateParams::from_lsers(xs[i], ys[j]);
      const Trajectory traj = integrate(BasicModel{split, rates}, default_initial_state(split));
      double sb = 0.0, cr = 0.0;
      std::string label;
      switch (grid.at(i, j).tag) {
        case CellTag::BlueVictory:
          sb = 0.4;
          label = "blue_victory";
          break;
        case CellTag::RedVictory:
          cr = 0.6;
          label = "red_victory";
          break;
        default: {
          const auto p = testing::basic_stalemate_oracle(0.4, rates);
          sb = p[0];
          cr = p[1];
          label = "stalemate";
        }
      }
      const double miss = dist2(traj.final_state(), sb, cr);
      if (!traj.converged() || traj.terminal.equilibrium != label || miss > 1e-6) {
        v.fail("r_S=" + num(xs[i]) + " r_C=" + num(ys[j]) + " ended at '" +
               traj.terminal.equilibrium + "' (expected " + label + ", miss " + num(miss) + ")");
        continue;
      }
      ++reached;
    }
  }
  const double elapsed = seconds_since(start);
  if (tried != 100) v.fail("sub-grid has " + std::to_string(tried) + " cells");
  if (elapsed >= 30.0) v.fail("took " + num(elapsed) + " s");
  if (v.pass) v.why = std::to_string(reached) + "/100 cells in " + num(elapsed) + " s";
  return v;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

Verdict criterion_afghanistan() {
  Verdict v;
  const auto t = victory_thresholds(PopulationSplit(0.46));
  if (round2(t.red_wins_below_r_S) != 1.17) v.fail("r_S threshold " + num(t.red_wins_below_r_S));
  if (round2(t.blue_wins_below_r_C) != 0.85) v.fail("r_C threshold " + num(t.blue_wins_below_r_C));
  // Just either side of each threshold the stalemate must give way.
  const RateParams strong = RateParams::from_lsers(2.0, 2.0);
  if (!std::holds_alternative<Stalemate>(classify_basic(PopulationSplit(0.46), strong)))
    v.fail("r_S = r_C = 2 is not a stalemate");
  if (!std::holds_alternative<RedVictory>(
          classify_basic(PopulationSplit(0.46), RateParams::from_lsers(1.16, 2.0))))
    v.fail("r_S = 1.16 is not a Red victory");
  if (!std::holds_alternative<BlueVictory>(
          classify_basic(PopulationSplit(0.46), RateParams::from_lsers(2.0, 0.84))))
    v.fail("r_C = 0.84 is not a Blue victory");
  if (v.pass)
    v.why = "r_S < " + num(t.red_wins_below_r_S) + ", r_C < " + num(t.blue_wins_below_r_C);
  return v;
}

Verdict criterion_syria() {
  Verdict v;
  const double t = victory_thresholds(PopulationSplit(0.10)).red_wins_below_r_S;
  if (std::abs(t - 9.0) > 1e-9) v.fail("threshold " + num(t));
  const PopulationSplit split(0.10);
  if (!std::holds_alternative<RedVictory>(classify_basic(split, RateParams::from_lsers(8.99, 3))))
    v.fail("r_S = 8.99 avoids defeat");
  if (std::holds_alternative<RedVictory>(classify_basic(split, RateParams::from_lsers(9.01, 3))))
    v.fail("r_S = 9.01 is still defeated");
  if (v.pass) v.why = "avoid-defeat threshold r_S >= " + num(t);
  return v;
}

std::string_view tag_of(const Outcome& o) { return outcome_tag(o); }

Verdict criterion_stability() {
  Verdict v;
  Draws draws(501);
  for (int k = 0; k < 200; ++k) {
    const double s = draws.uniform(0.05, 0.95);
    const PopulationSplit split(s);
    const RateParams rates = draws.dominant_rates();
    const Outcome outcome = classify_basic(split, rates);
    if (std::holds_alternative<MarginalBoundary>(outcome)) continue;

    const auto reports = stability_basic(split, rates);
    std::vector<std::string> stable;
    for (const auto& r : reports) {
      if (!r.physical) continue;
      // Independent recheck: finite-difference Jacobian and the Hurwitz test.
      const std::array<double, 2> at{r.equilibrium[0], r.equilibrium[1]};
      const auto jac = testing::numeric_jacobian<2>(
          [&](const std::array<double, 2>& x) {
            const ReducedRate d = kernel::basic(x[0], x[1], s, rates);
            return std::array<double, 2>{d.sb, d.cr};
          },
          at);
      if (testing::hurwitz_stable(jac) != r.stable) {
        v.fail("draw " + std::to_string(k) + ": " + r.label + " stability disagrees with Hurwitz");
      }
      if (r.stable) stable.push_back(r.label);
      if (r.label == "origin" && r.stable) v.fail("draw " + std::to_string(k) + ": stable origin");
    }
    if (stable.size() != 1) {
      v.fail("draw " + std::to_string(k) + ": " + std::to_string(stable.size()) +
             " stable equilibria");
    } else if (stable.front() != tag_of(outcome)) {
      v.fail("draw " + std::to_string(k) + ": stable " + stable.front() + " but classified " +
             std::string(tag_of(outcome)));
    }
  }
  if (v.pass) v.why = "200 draws, one stable equilibrium each, origin always unstable";
  return v;
}

Verdict criterion_direct_threshold() {
  Verdict v;
  Draws draws(601);
  IntegratorConfig tight;
  tight.rel_tol = 1e-11;
  tight.abs_tol = 1e-13;
  tight.convergence_eps = 1e-13;
  tight.proximity_eps = 1e-10;
  tight.t_max = 1e6;
  int done = 0, skipped = 0;
  double worst = 0.0;
  while (done < 50) {
    const double s = draws.uniform(0.05, 0.95);
    const PopulationSplit split(s);
    const RateParams rates = draws.dominant_rates();
    const double threshold = rates.contrarian_liberation() * (1.0 - s) -
                             rates.contrarian_subjugation() * s;
    const double lambda_s = draws.uniform(0.0, 1.0);
    if (threshold <= 0.0) {
      ++skipped;
      continue;
    }
    ++done;
    const std::string id = "draw " + std::to_string(done);

    const DirectIntervention above(lambda_s, 1.05 * threshold);
    const Trajectory up = integrate(DirectModel{split, rates, above},
                                    default_initial_state(split), tight);
    if (!std::holds_alternative<BlueVictory>(outcome_from_trajectory(up))) {
      v.fail(id + ": 1.05x threshold ended at '" + up.terminal.equilibrium + "'");
    }

    const DirectIntervention below(lambda_s, 0.95 * threshold);
    const Trajectory down = integrate(DirectModel{split, rates, below},
                                      default_initial_state(split), tight);
    const ReducedState closed = stalemate_direct_point(split, rates, below);
    const auto oracle = testing::direct_stalemate_oracle(s, rates, lambda_s, 0.95 * threshold);
    const double miss = dist2(down.final_state(), closed.sb, closed.cr);
    const double oracle_gap = std::max(std::abs(closed.sb - oracle[0]), std::abs(closed.cr - oracle[1]));
    worst = std::max(worst, miss);
    if (!std::holds_alternative<Stalemate>(outcome_from_trajectory(down))) {
      v.fail(id + ": 0.95x threshold ended at '" + down.terminal.equilibrium + "'");
    } else if (miss > 1e-8) {
      v.fail(id + ": stalemate terminal off by " + num(miss));
    }
    if (oracle_gap > 1e-9) v.fail(id + ": closed form differs from bisection by " + num(oracle_gap));
  }
  if (v.pass) {
    v.why = "50 draws (" + std::to_string(skipped) + " skipped), worst stalemate miss " + num(worst);
  }
  return v;
}

Verdict criterion_conjecture() {
  Verdict v;
  const ConjectureReport report = conjecture_sweep(1000, ConjectureRanges{}, 42);
  for (const auto& d : report.disagreements) {
    v.fail("disagreement at draw " + std::to_string(d.index) + ": S=" + num(d.s) +
           " f_S=" + num(d.f_S) + " f_C=" + num(d.f_C) + " h_S=" + num(d.h_S) + " h_C=" +
           num(d.h_C) + " lambda_S=" + num(d.lambda_S) + " lambda_C=" + num(d.lambda_C));
  }
  if (report.samples != 1000) v.fail("only " + std::to_string(report.samples) + " samples");

  // Independent recheck on interior stalemates: bisection for the point,
  // finite differences for the Jacobian, Hurwitz for stability.
  Draws draws(42);
  std::size_t interior = 0;
  for (int k = 0; k < 1000; ++k) {
    const double s = draws.uniform(0.05, 0.95);
    const RateParams rates = draws.dominant_rates();
    const double ls = draws.uniform(0.0, 2.0), lc = draws.uniform(0.0, 2.0);
    const double fc = rates.contrarian_liberation(), hc = rates.contrarian_subjugation();
    // Interior stalemate needs Blue short of victory and Red short of victory.
    if (lc >= fc * (1.0 - s) - hc * s) continue;
    const auto p = testing::direct_stalemate_oracle(s, rates, ls, lc);
    if (!(p[0] > 0.0 && p[0] < s && p[1] > 0.0 && p[1] < 1.0 - s)) continue;
    const double as = ls / rates.supporter_liberation(), ac = lc / hc;
    const auto jac = testing::numeric_jacobian<2>(
        [&](const std::array<double, 2>& x) {
          const ReducedRate d = kernel::direct(x[0], x[1], s, rates, as, ac);
          return std::array<double, 2>{d.sb, d.cr};
        },
        p);
    const double tr = jac[0][0] + jac[1][1];
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    const double margin = (rates.contrarian_lser() - ac) / (1.0 + rates.contrarian_lser()) - s;
    if (std::abs(margin) < 1e-6 || std::abs(tr) < 1e-6 || std::abs(det) < 1e-9) continue;
    ++interior;
    if ((margin > 0.0) != testing::hurwitz_stable(jac)) {
      v.fail("independent recheck disagrees at S=" + num(s) + " lambda_S=" + num(ls) +
             " lambda_C=" + num(lc));
    }
  }
  if (v.pass) {
    v.why = "1000 draws, " + std::to_string(report.agreements) + " agree, " +
            std::to_string(report.marginal) + " marginal, 0 disagreements; recheck " +
            std::to_string(interior) + " interior stalemates";
  }
  return v;
}

Verdict criterion_opportunistic() {
  Verdict v;
  Draws draws(801);
  double worst_rel = 0.0;
  for (int k = 0; k < 100; ++k) {
    const RateParams rates = draws.dominant_rates();
    const OpportunisticParams op(draws.log_uniform(0.1, 10.0));
    const std::string id = "draw " + std::to_string(k);
    const double fs = rates.supporter_liberation(), fc = rates.contrarian_liberation();
    const double hs = rates.supporter_subjugation(), hc = rates.contrarian_subjugation();
    const double rs = fs / hs, rc = fc / hc, a = op.switching_rate();
    const double closed = a * rs * rc * (hs * fc + fs * hc + 2.0 * hs * hc) /
                          ((2.0 + rs + rc) * (2.0 + rs + rc));

    const OpportunisticState b = balanced_stalemate(rates);
    const Matrix3 jac = jacobian_opportunistic(b, rates, op);
    const double det = determinant(jac);
    const double rel = std::abs(det - closed) / std::abs(closed);
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-10) v.fail(id + ": det " + num(det) + " vs " + num(closed));
    if (!(det > 0.0)) v.fail(id + ": det not positive");

    // Independent determinant from a finite-difference Jacobian.
    const auto fd = testing::numeric_jacobian<3>(
        [&](const std::array<double, 3>& x) {
          const OpportunisticRate d = kernel::opportunistic(x[0], x[1], x[2], rates, a);
          return std::array<double, 3>{d.sb, d.cr, d.s};
        },
        {b.sb, b.cr, b.s});
    if (std::abs(determinant(fd) - closed) > 1e-5 * std::abs(closed) + 1e-9)
      v.fail(id + ": finite-difference det " + num(determinant(fd)));

    double grow = -1.0;
    for (const auto& z : eigenvalues(jac))
      if (std::abs(z.imag()) < 1e-12 && z.real() > grow) grow = z.real();
    if (!(grow > 0.0)) {
      v.fail(id + ": no positive real eigenvalue");
      continue;
    }
    const auto dir = eigenvector(jac, grow);
    std::vector<std::string> ends;
    for (double sign : {1.0, -1.0}) {
      const OpportunisticState init{b.sb + sign * 1e-6 * dir[0], b.cr + sign * 1e-6 * dir[1],
                                    b.s + sign * 1e-6 * dir[2]};
      ends.push_back(basin_attractor(OpportunisticModel{rates, op}, init) == BasinTag::BlueVictory
                         ? "blue"
                     : basin_attractor(OpportunisticModel{rates, op}, init) == BasinTag::RedVictory
                         ? "red"
                         : "other");
    }
    if (!((ends[0] == "blue" && ends[1] == "red") || (ends[0] == "red" && ends[1] == "blue"))) {
      v.fail(id + ": perturbations reached " + ends[0] + " and " + ends[1]);
    }
  }
  if (v.pass) v.why = "100 draws, worst det relative error " + num(worst_rel);
  return v;
}

double rel_gap(const std::vector<double>& got, const std::vector<double>& want) {
  double scale = 0.0, gap = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    scale = std::max(scale, std::abs(want[i]));
    gap = std::max(gap, std::abs(got[i] - want[i]));
  }
  return gap / std::max(scale, 1.0);
}

template <std::size_t N>
std::vector<double> flat(const std::array<std::array<double, N>, N>& m) {
  std::vector<double> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

Verdict criterion_properties() {
  Verdict v;
  Draws draws(901);

  // Jacobians against central differences.
  double worst_jac = 0.0;
  for (int k = 0; k < 500; ++k) {
    const RateParams rates = draws.dominant_rates();
    const double s = draws.uniform(0.05, 0.95);
    const double sb = draws.uniform(0.0, s), cr = draws.uniform(0.0, 1.0 - s);
    double gap = 0.0;
    switch (k % 3) {
      case 0: {
        const auto fd = testing::numeric_jacobian<2>(
            [&](const std::array<double, 2>& x) {
              const ReducedRate d = rhs_basic({x[0], x[1]}, PopulationSplit(s), rates);
              return std::array<double, 2>{d.sb, d.cr};
            },
            {sb, cr});
        gap = rel_gap(flat(jacobian_basic({sb, cr}, PopulationSplit(s), rates)), flat(fd));
        break;
      }
      case 1: {
        const DirectIntervention iv(draws.uniform(0, 2), draws.uniform(0, 2));
        const auto fd = testing::numeric_jacobian<2>(
            [&](const std::array<double, 2>& x) {
              const ReducedRate d = rhs_direct({x[0], x[1]}, PopulationSplit(s), rates, iv);
              return std::array<double, 2>{d.sb, d.cr};
            },
            {sb, cr});
        gap = rel_gap(flat(jacobian_direct({sb, cr}, PopulationSplit(s), rates, iv)), flat(fd));
        break;
      }
      default: {
        const OpportunisticParams op(draws.log_uniform(0.1, 10));
        const auto fd = testing::numeric_jacobian<3>(
            [&](const std::array<double, 3>& x) {
              const OpportunisticRate d = rhs_opportunistic({x[0], x[1], x[2]}, rates, op);
              return std::array<double, 3>{d.sb, d.cr, d.s};
            },
            {sb, cr, s});
        gap = rel_gap(flat(jacobian_opportunistic({sb, cr, s}, rates, op)), flat(fd));
      }
    }
    worst_jac = std::max(worst_jac, gap);
    if (gap > 1e-6) v.fail("Jacobian point " + std::to_string(k) + " off by " + num(gap));
  }

  // Mass conservation: the four-compartment system stepped with RK4 over the
  // default horizon, plus the library trajectories.
  double worst_drift = 0.0;
  for (int k = 0; k < 20; ++k) {
    const RateParams rates = draws.dominant_rates();
    const double s = draws.uniform(0.05, 0.95);
    const double sb = draws.uniform(0.0, s), cr = draws.uniform(0.0, 1.0 - s);
    std::array<double, 4> y{sb, s - sb, cr, 1.0 - s - cr};
    auto f = [&](const std::array<double, 4>& x) {
      const BasicRate d = rhs_full_basic(BasicState::renormalized(x[0], x[1], x[2], x[3]), rates);
      return std::array<double, 4>{d.sb, d.sr, d.cr, d.cb};
    };
    const double h = 0.05;
    const double t_max = IntegratorConfig{}.t_max;
    for (double t = 0.0; t < t_max; t += h) {
      auto add = [](std::array<double, 4> a, const std::array<double, 4>& b, double c) {
        for (int i = 0; i < 4; ++i) a[i] += c * b[i];
        return a;
      };
      const auto k1 = f(y), k2 = f(add(y, k1, h / 2)), k3 = f(add(y, k2, h / 2)),
                 k4 = f(add(y, k3, h));
      for (int i = 0; i < 4; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    worst_drift = std::max({worst_drift, std::abs(y[0] + y[1] + y[2] + y[3] - 1.0),
                            std::abs(y[0] + y[1] - s)});

    const Trajectory traj =
        integrate(BasicModel{PopulationSplit(s), rates}, ReducedState{sb, cr});
    for (const auto& st : traj.states) {
      worst_drift = std::max({worst_drift, std::abs(st.sb() + st.sr() + st.cr() + st.cb() - 1.0),
                              std::abs(st.supporters() - s)});
    }
  }
  if (worst_drift >= 1e-7) v.fail("mass drift " + num(worst_drift));

  // Forward invariance of the state box for every variant.
  for (int k = 0; k < 60; ++k) {
    const RateParams rates = draws.dominant_rates();
    const double s = draws.uniform(0.05, 0.95);
    const double sb = draws.uniform(0.0, s), cr = draws.uniform(0.0, 1.0 - s);
    Trajectory traj;
    if (k % 3 == 0) {
      traj = integrate(BasicModel{PopulationSplit(s), rates}, ReducedState{sb, cr});
    } else if (k % 3 == 1) {
      const DirectIntervention iv(draws.uniform(0, 2), draws.uniform(0, 2));
      traj = integrate(DirectModel{PopulationSplit(s), rates, iv}, ReducedState{sb, cr});
    } else {
      traj = integrate(OpportunisticModel{rates, OpportunisticParams(draws.log_uniform(0.1, 10))},
                       OpportunisticState{sb, cr, s});
    }
    for (const auto& st : traj.states) {
      const double lo = std::min({st.sb(), st.sr(), st.cr(), st.cb()});
      const double hi = std::max({st.sb(), st.sr(), st.cr(), st.cb()});
      if (lo < -kBoxSlack || hi > 1.0 + kBoxSlack) {
        v.fail("trajectory " + std::to_string(k) + " left the state box");
        break;
      }
    }
  }

  // Classification depends on the LSERs only.
  for (int k = 0; k < 200; ++k) {
    const RateParams rates = draws.dominant_rates();
    const PopulationSplit split(draws.uniform(0.05, 0.95));
    const double factor = draws.log_uniform(1e-3, 1e3);
    if (outcome_tag(classify_basic(split, rates)) !=
        outcome_tag(classify_basic(split, rates.scaled(factor)))) {
      v.fail("scaling by " + num(factor) + " changed the outcome");
    }
  }

  // Scenario parse/render round-trip.
  for (int k = 0; k < 100; ++k) {
    const Scenario sc = testing::random_scenario(draws, k);
    const std::string text = render_scenario(sc);
    if (!(parse_scenario(text) == sc)) v.fail("scenario " + std::to_string(k) + " did not round-trip");
  }

  if (v.pass) {
    v.why = "worst Jacobian gap " + num(worst_jac) + ", worst mass drift " + num(worst_drift) +
            ", box, scaling and 100 round-trips hold";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"outcome map at S=0.4", criterion_fig2},
      {"integration agrees with classification", criterion_oracle_equivalence},
      {"S=0.46 thresholds", criterion_afghanistan},
      {"S=0.10 threshold", criterion_syria},
      {"basic-model stability", criterion_stability},
      {"direct-intervention threshold", criterion_direct_threshold},
      {"intervention stalemate stability condition", criterion_conjecture},
      {"opportunistic saddle", criterion_opportunistic},
      {"property suites", criterion_properties},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("threw: ") + e.what());
    }
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.why.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
