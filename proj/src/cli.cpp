#include "revolt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "revolt/equilibria.hpp"
#include "revolt/errors.hpp"
#include "revolt/explore.hpp"
#include "revolt/integrate.hpp"
#include "revolt/output.hpp"
#include "revolt/scenario.hpp"

namespace revolt {
namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Writes through `fn` to `path`, or to `fallback` when path is empty or "-".
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open " + path + " for writing");
  fn(file);
  if (!file) throw ConfigError("failed writing " + path);
}

json state_json(const BasicState& st) {
  return {{"SB", st.sb()}, {"SR", st.sr()}, {"CR", st.cr()}, {"CB", st.cb()}};
}

json report_json(const StabilityReport& r) {
  json eig = json::array();
  for (const auto& z : r.eigenvalues) eig.push_back({z.real(), z.imag()});
  return {{"label", r.label},   {"equilibrium", r.equilibrium}, {"eigenvalues", eig},
          {"stable", r.stable}, {"marginal", r.marginal},       {"physical", r.physical}};
}

std::string report_line(const StabilityReport& r) {
  std::string coords;
  for (double v : r.equilibrium) coords += (coords.empty() ? "" : ", ") + fmt(v);
  std::string eig;
  for (const auto& z : r.eigenvalues) {
    eig += (eig.empty() ? "" : ", ") + fmt(z.real());
    if (z.imag() != 0.0) eig += (z.imag() > 0 ? "+" : "") + fmt(z.imag()) + "i";
  }
  std::string verdict = r.marginal ? "marginal" : (r.stable ? "stable" : "unstable");
  if (!r.physical) verdict += ", outside the state box";
  return "  " + r.label + " (" + coords + "): eigenvalues " + eig + " -> " + verdict;
}

struct Verdict {
  Outcome outcome;
  json thresholds = json::object();
  std::vector<std::string> notes;
  std::vector<StabilityReport> stability;
};

Verdict classify_scenario(const Scenario& sc, const IntegratorConfig& cfg, bool with_stability) {
  Verdict v;
  switch (sc.variant) {
    case Variant::Basic: {
      const PopulationSplit split = sc.split();
      v.outcome = classify_basic(split, sc.rates);
      const auto t = victory_thresholds(split);
      v.thresholds = {{"blue_wins_below_r_C", t.blue_wins_below_r_C},
                      {"red_wins_below_r_S", t.red_wins_below_r_S}};
      v.notes.push_back("Blue wins iff r_C < " + fmt(t.blue_wins_below_r_C) +
                        "; Red wins iff r_S < " + fmt(t.red_wins_below_r_S) +
                        " (Blue avoids defeat with r_S >= " + fmt(t.red_wins_below_r_S) + ")");
      if (with_stability) v.stability = stability_basic(split, sc.rates);
      break;
    }
    case Variant::Direct: {
      const PopulationSplit split = sc.split();
      const DirectIntervention iv = sc.direct.value_or(DirectIntervention(0.0, 0.0));
      v.outcome = classify_direct(split, sc.rates, iv);
      const double lc = direct_victory_threshold(split, sc.rates);
      v.thresholds = {{"blue_wins_above_lambda_C", lc},
                      {"A_S", iv.supporter_offset(sc.rates)},
                      {"A_C", iv.contrarian_offset(sc.rates)}};
      v.notes.push_back("Blue wins iff lambda_C > " + fmt(lc) + " (lambda_C = " +
                        fmt(iv.contrarian_power()) + ")");
      if (std::holds_alternative<Stalemate>(v.outcome)) {
        const auto check = check_conjecture(split, sc.rates, iv);
        v.thresholds["stalemate_stable_condition"] = check.condition_holds;
        v.notes.push_back(std::string("stability condition (r_C - A_C)/(1 + r_C) > S ") +
                          (check.condition_holds ? "holds" : "fails"));
        if (with_stability) {
          const ReducedState p = std::get<Stalemate>(v.outcome).point.reduced();
          v.stability.push_back(make_report<2>("stalemate", {p.sb, p.cr},
                                               jacobian_direct(p, split, sc.rates, iv)));
        }
      }
      break;
    }
    case Variant::Indirect: {
      const PopulationSplit split = sc.split();
      const IndirectIntervention iv = sc.indirect.value_or(IndirectIntervention(1.0, 1.0));
      v.outcome = classify_indirect(split, sc.rates, iv);
      const auto t = indirect_thresholds(split, sc.rates);
      v.thresholds = {{"mu_S_min", t.mu_S_min}, {"mu_C_min", t.mu_C_min}, {"needed", t.needed}};
      v.notes.push_back("Blue avoids defeat with mu_S >= " + fmt(t.mu_S_min) +
                        "; Blue wins with mu_C > " + fmt(t.mu_C_min));
      if (with_stability) v.stability = stability_basic(split, apply_indirect(sc.rates, iv));
      break;
    }
    case Variant::Opportunistic: {
      const OpportunisticParams op = sc.opportunistic.value_or(OpportunisticParams(1.0));
      const auto eq = opportunistic_equilibria(sc.rates, op);
      const Trajectory traj = integrate(sc.model(), sc.initial_state(), cfg);
      v.outcome = outcome_from_trajectory(traj);
      const auto& b = eq.balanced;
      v.thresholds = {{"balanced_stalemate", {b.sb, b.cr, b.s}},
                      {"balanced_determinant", balanced_determinant(sc.rates, op)}};
      v.notes.push_back("outcome depends on the initial state; balanced stalemate (" +
                        fmt(b.sb) + ", " + fmt(b.cr) + ", " + fmt(b.s) + ") is a saddle");
      if (with_stability) v.stability = eq.reports;
      break;
    }
  }
  return v;
}

int cmd_classify(const std::string& path, bool as_json, bool with_stability, std::ostream& out) {
  const Scenario sc = load_scenario(path);
  const IntegratorConfig cfg = sc.integrator.apply();
  const Verdict v = classify_scenario(sc, cfg, with_stability);
  const auto* st = std::get_if<Stalemate>(&v.outcome);
  const auto* marginal = std::get_if<MarginalBoundary>(&v.outcome);

  if (as_json) {
    json j;
    j["scenario"] = sc.name;
    j["variant"] = variant_name(sc.variant);
    j["outcome"] = outcome_tag(v.outcome);
    j["detail"] = marginal ? json(marginal->detail) : json(nullptr);
    json params = {{"f_S", sc.rates.supporter_liberation()},
                   {"f_C", sc.rates.contrarian_liberation()},
                   {"h_S", sc.rates.supporter_subjugation()},
                   {"h_C", sc.rates.contrarian_subjugation()},
                   {"r_S", sc.rates.supporter_lser()},
                   {"r_C", sc.rates.contrarian_lser()}};
    if (sc.s) params["S"] = *sc.s;
    if (sc.direct) {
      params["lambda_S"] = sc.direct->supporter_power();
      params["lambda_C"] = sc.direct->contrarian_power();
    }
    if (sc.indirect) {
      params["mu_S"] = sc.indirect->liberation_multiplier();
      params["mu_C"] = sc.indirect->subjugation_multiplier();
    }
    if (sc.opportunistic) params["alpha"] = sc.opportunistic->switching_rate();
    j["parameters"] = params;
    j["thresholds"] = v.thresholds;
    j["stalemate"] = st ? state_json(st->point) : json(nullptr);
    if (with_stability) {
      json reports = json::array();
      for (const auto& r : v.stability) reports.push_back(report_json(r));
      j["stability"] = reports;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "scenario: " << sc.name << " (" << variant_name(sc.variant) << ")\n";
  out << "LSERs: r_S = " << fmt(sc.rates.supporter_lser())
      << ", r_C = " << fmt(sc.rates.contrarian_lser());
  if (sc.s) out << ", S = " << fmt(*sc.s);
  out << '\n';
  out << "outcome: " << outcome_tag(v.outcome);
  if (marginal) out << " (" << marginal->detail << ")";
  out << '\n';
  for (const auto& n : v.notes) out << n << '\n';
  if (st) {
    const BasicState& p = st->point;
    out << "stalemate: SB = " << fmt(p.sb()) << ", SR = " << fmt(p.sr()) << ", CR = " << fmt(p.cr())
        << ", CB = " << fmt(p.cb()) << "; Blue controls " << fmt(p.blue_controlled()) << '\n';
  }
  if (with_stability) {
    out << "stability:\n";
    for (const auto& r : v.stability) out << report_line(r) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  const Scenario sc = load_scenario(path);
  const Trajectory traj = integrate(sc.model(), sc.initial_state(), sc.integrator.apply());
  emit(out_path, out, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  if (!out_path.empty() && out_path != "-") {
    err << traj.times.size() << " points written to " << out_path << "; "
        << (traj.converged() ? "converged to " + traj.terminal.equilibrium
                             : std::string("horizon reached"))
        << '\n';
  }
  return kExitOk;
}

SweepAxis parse_axis(const std::string& spec) {
  // name:min:max[:count][:log]
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 5) {
    throw ConfigError("axis spec '" + spec + "' must be name:min:max[:count][:log]");
  }
  SweepAxis axis;
  const auto p = parse_parameter(parts[0]);
  if (!p) throw ConfigError("unknown sweep parameter '" + parts[0] + "'");
  axis.parameter = *p;
  try {
    std::size_t used = 0;
    axis.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    axis.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    axis.count = 50;
    for (std::size_t k = 3; k < parts.size(); ++k) {
      if (parts[k] == "log") {
        axis.scale = AxisScale::Log;
      } else if (parts[k] == "linear") {
        axis.scale = AxisScale::Linear;
      } else {
        const long n = std::stol(parts[k], &used);
        if (used != parts[k].size() || n < 0) throw std::invalid_argument(parts[k]);
        axis.count = static_cast<std::size_t>(n);
      }
    }
  } catch (const std::logic_error&) {
    throw ConfigError("malformed axis spec '" + spec + "'");
  }
  return axis;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& spec) {
  const auto x = spec.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(spec);
    std::size_t used = 0;
    const std::string a = spec.substr(0, x), b = spec.substr(x + 1);
    const long nx = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const long ny = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (nx < 2 || ny < 2) throw ConfigError("grid needs at least 2x2 cells, got " + spec);
    return {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
  } catch (const std::logic_error&) {
    throw ConfigError("grid must look like NxM, got '" + spec + "'");
  }
}

struct SweepArgs {
  std::string scenario, preset, x, y, grid, out, svg, surface_svg;
  bool cross_check = false;
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepGrid grid;
  if (!a.preset.empty()) {
    if (a.preset != "fig2") throw ConfigError("unknown sweep preset '" + a.preset + "'");
    grid = fig2_grid();
  }
  if (!a.scenario.empty()) {
    const Scenario sc = load_scenario(a.scenario);
    grid.base.variant = sc.variant;
    if (sc.s) grid.base.s = *sc.s;
    grid.base.rates = sc.rates;
    if (sc.direct) grid.base.direct = *sc.direct;
    if (sc.indirect) grid.base.indirect = *sc.indirect;
  }
  if (!a.x.empty()) grid.x = parse_axis(a.x);
  if (!a.y.empty()) grid.y = parse_axis(a.y);
  if (a.preset.empty() && (a.x.empty() || a.y.empty())) {
    throw ConfigError("sweep needs --preset or both --x and --y");
  }
  if (!a.grid.empty()) std::tie(grid.x.count, grid.y.count) = parse_grid(a.grid);

  SweepOptions opt;
  opt.cross_check = a.cross_check;
  opt.threads = a.threads;
  const SweepGrid mapped = outcome_map(grid, opt);

  emit(a.out, out, [&](std::ostream& os) { write_grid_csv(os, mapped); });
  if (!a.svg.empty()) emit(a.svg, out, [&](std::ostream& os) { write_outcome_svg(os, mapped); });
  if (!a.surface_svg.empty()) {
    emit(a.surface_svg, out, [&](std::ostream& os) { write_surface_svg(os, mapped); });
  }

  if (a.cross_check) {
    std::size_t checked = 0, disagreements = 0;
    for (const auto& c : mapped.cells) {
      if (!c.cross_checked) continue;
      ++checked;
      if (!c.cross_check_agrees) ++disagreements;
    }
    err << "cross-check: " << checked - disagreements << "/" << checked
        << " cells agree with integration\n";
    if (disagreements > 0) return kExitNumerical;
  }
  return kExitOk;
}

struct BasinArgs {
  std::string scenario, preset, fix, grid, out, svg, separatrix;
  double bracket = 1e-6;
  unsigned threads = 0;
};

int cmd_basin(const BasinArgs& a, std::ostream& out, std::ostream& err) {
  RateParams rates(1.0, 1.0, 1.0, 1.0);
  OpportunisticParams op(1.0);
  BasinSlice slice;
  IntegratorConfig cfg;
  if (!a.preset.empty() && a.preset != "symmetric") {
    throw ConfigError("unknown basin preset '" + a.preset + "'");
  }
  if (!a.scenario.empty()) {
    const Scenario sc = load_scenario(a.scenario);
    if (sc.variant != Variant::Opportunistic) {
      throw ConfigError("basin maps need an opportunistic scenario");
    }
    rates = sc.rates;
    op = sc.opportunistic.value_or(op);
    slice.fixed_value = sc.s0.value_or(0.5);
    cfg = sc.integrator.apply();
  } else if (a.preset.empty()) {
    throw ConfigError("basin needs a scenario or --preset symmetric");
  }
  if (!a.fix.empty()) {
    const auto eq = a.fix.find('=');
    const std::string name = a.fix.substr(0, eq);
    if (eq == std::string::npos) throw ConfigError("--fix must look like S0=0.5");
    if (name == "SB0") {
      slice.fixed = BasinCoordinate::SB0;
    } else if (name == "CR0") {
      slice.fixed = BasinCoordinate::CR0;
    } else if (name == "S0") {
      slice.fixed = BasinCoordinate::S0;
    } else {
      throw ConfigError("--fix coordinate must be SB0, CR0 or S0");
    }
    try {
      slice.fixed_value = std::stod(a.fix.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ConfigError("malformed --fix value in '" + a.fix + "'");
    }
  }
  if (!a.grid.empty()) std::tie(slice.cols, slice.rows) = parse_grid(a.grid);
  slice.bracket_width = a.bracket;

  const BasinMap map = basin_map(rates, op, slice, BasinOptions{cfg, a.threads});
  emit(a.out, out, [&](std::ostream& os) { write_basin_csv(os, map); });
  if (!a.svg.empty()) emit(a.svg, out, [&](std::ostream& os) { write_basin_svg(os, map); });
  if (!a.separatrix.empty()) {
    emit(a.separatrix, out, [&](std::ostream& os) { write_separatrix_csv(os, map); });
  }
  err << "blue basin fraction " << fmt(map.blue_basin_fraction()) << ", "
      << map.separatrix.size() << " separatrix samples\n";
  return kExitOk;
}

json draw_json(const ConjectureDraw& d) {
  return {{"index", d.index},       {"S", d.s},
          {"f_S", d.f_S},           {"f_C", d.f_C},
          {"h_S", d.h_S},           {"h_C", d.h_C},
          {"lambda_S", d.lambda_S}, {"lambda_C", d.lambda_C},
          {"condition_holds", d.check.condition_holds},
          {"numerically_stable", d.check.numerically_stable},
          {"point", {d.check.point.sb, d.check.point.cr}}};
}

int cmd_conjecture(std::size_t n, std::uint64_t seed, const std::string& out_path,
                   std::ostream& out, std::ostream& err) {
  const ConjectureReport r = conjecture_sweep(n, ConjectureRanges{}, seed);
  json j = {{"seed", r.seed},
            {"samples", r.samples},
            {"agreements", r.agreements},
            {"marginal", r.marginal},
            {"interior", r.interior},
            {"zero_intervention", r.zero_intervention}};
  json dis = json::array();
  for (const auto& d : r.disagreements) dis.push_back(draw_json(d));
  j["disagreements"] = dis;
  emit(out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });

  err << "conjecture: " << r.agreements << "/" << r.samples << " agree, " << r.marginal
      << " marginal, " << r.disagreements.size() << " disagreements (seed " << seed << ")\n";
  for (const auto& d : r.disagreements) err << "  counterexample: " << draw_json(d).dump() << '\n';
  return r.disagreements.empty() ? kExitOk : kExitDisagreement;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Armed-revolt outcome model: classification, simulation and sweeps", "revolt"};
  app.require_subcommand(1);

  std::string scenario;
  bool as_json = false, with_stability = false;
  auto* classify = app.add_subcommand("classify", "Classify the outcome of a scenario");
  classify->add_option("scenario", scenario, "Scenario file")->required();
  classify->add_flag("--json", as_json, "Machine-readable output");
  classify->add_flag("--stability", with_stability, "Report eigenvalue stability of equilibria");

  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its trajectory");
  simulate->add_option("scenario", scenario, "Scenario file")->required();
  simulate->add_option("--out", sim_out, "Trajectory CSV path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Outcome map over two parameters");
  sweep->add_option("scenario", sweep_args.scenario, "Scenario supplying fixed parameters");
  sweep->add_option("--preset", sweep_args.preset, "Named preset (fig2)");
  sweep->add_option("--x", sweep_args.x, "First axis: name:min:max[:count][:log]");
  sweep->add_option("--y", sweep_args.y, "Second axis: name:min:max[:count][:log]");
  sweep->add_option("--grid", sweep_args.grid, "Cell counts NxM");
  sweep->add_option("--out", sweep_args.out, "Grid CSV path (default stdout)");
  sweep->add_option("--svg", sweep_args.svg, "Outcome heatmap SVG path");
  sweep->add_option("--surface-svg", sweep_args.surface_svg, "Blue-control heatmap SVG path");
  sweep->add_flag("--cross-check", sweep_args.cross_check, "Re-derive every cell by integration");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");

  BasinArgs basin_args;
  auto* basin = app.add_subcommand("basin", "Basins of attraction of the opportunistic model");
  basin->add_option("scenario", basin_args.scenario, "Opportunistic scenario file");
  basin->add_option("--preset", basin_args.preset, "Named preset (symmetric)");
  basin->add_option("--fix", basin_args.fix, "Fixed initial coordinate, e.g. S0=0.5");
  basin->add_option("--grid", basin_args.grid, "Cell counts NxM");
  basin->add_option("--bracket", basin_args.bracket, "Separatrix bracket width");
  basin->add_option("--out", basin_args.out, "Basin CSV path (default stdout)");
  basin->add_option("--svg", basin_args.svg, "Basin heatmap SVG path");
  basin->add_option("--separatrix", basin_args.separatrix, "Separatrix samples CSV path");
  basin->add_option("--threads", basin_args.threads, "Worker threads (0 = all cores)");

  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::string conj_out;
  auto* conjecture =
      app.add_subcommand("conjecture", "Check the intervention-stalemate stability condition");
  conjecture->add_option("--n", samples, "Number of random draws");
  conjecture->add_option("--seed", seed, "Random seed");
  conjecture->add_option("--out", conj_out, "JSON report path (default stdout)");

  std::vector<const char*> argv{"revolt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(scenario, as_json, with_stability, out);
    if (simulate->parsed()) return cmd_simulate(scenario, sim_out, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_args, out, err);
    if (basin->parsed()) return cmd_basin(basin_args, out, err);
    return cmd_conjecture(samples, seed, conj_out, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DominanceViolation& e) {
    err << "error: " << e.what()
        << "\n  outcome classification assumes each side fights better in friendly territory "
           "(f_S > h_C and f_C > h_S)\n";
    return kExitModelDomain;
  } catch (const IntegrationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InconclusiveError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitModelDomain;
  }
}

}  // namespace revolt
