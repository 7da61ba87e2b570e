#include "revolt/explore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "revolt/errors.hpp"

namespace revolt {
namespace {

// Runs body(i) for i in [0, n) on a small thread pool. Callers write results
// into per-index slots, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

bool is_lser(Parameter p) { return p == Parameter::r_S || p == Parameter::r_C; }
bool is_raw_rate(Parameter p) {
  return p == Parameter::f_S || p == Parameter::f_C || p == Parameter::h_S || p == Parameter::h_C;
}

bool variant_has(Variant v, Parameter p) {
  switch (p) {
    case Parameter::lambda_S:
    case Parameter::lambda_C:
      return v == Variant::Direct;
    case Parameter::mu_S:
    case Parameter::mu_C:
      return v == Variant::Indirect;
    default:
      return v != Variant::Opportunistic;
  }
}

struct CellParams {
  double s;
  RateParams rates;
  DirectIntervention direct;
  IndirectIntervention indirect;
};

CellParams cell_params(const SweepBase& base, Parameter px, double vx, Parameter py, double vy) {
  auto pick = [&](Parameter p, double fallback) {
    if (px == p) return vx;
    if (py == p) return vy;
    return fallback;
  };
  const RateParams& r = base.rates;
  const double s = pick(Parameter::S, base.s);
  RateParams rates = r;
  if (is_lser(px) || is_lser(py)) {
    rates = RateParams::from_lsers(pick(Parameter::r_S, r.supporter_lser()),
                                   pick(Parameter::r_C, r.contrarian_lser()),
                                   r.contrarian_subjugation());
  } else if (is_raw_rate(px) || is_raw_rate(py)) {
    rates = RateParams(pick(Parameter::f_S, r.supporter_liberation()),
                       pick(Parameter::f_C, r.contrarian_liberation()),
                       pick(Parameter::h_S, r.supporter_subjugation()),
                       pick(Parameter::h_C, r.contrarian_subjugation()));
  }
  return {s, rates,
          DirectIntervention(pick(Parameter::lambda_S, base.direct.supporter_power()),
                             pick(Parameter::lambda_C, base.direct.contrarian_power())),
          IndirectIntervention(pick(Parameter::mu_S, base.indirect.liberation_multiplier()),
                               pick(Parameter::mu_C, base.indirect.subjugation_multiplier()))};
}

CellTag tag_of(const Outcome& o) {
  switch (o.index()) {
    case 0:
      return CellTag::BlueVictory;
    case 1:
      return CellTag::RedVictory;
    case 2:
      return CellTag::Stalemate;
    default:
      return CellTag::Marginal;
  }
}

// Blue-controlled fraction of the closed-form stalemate branch, clamped to
// [0, 1]. On a threshold the branch meets the victory point, which keeps the
// surface continuous there.
double branch_blue_fraction(const ReducedState& p, double s) {
  return std::clamp(p.sb + (1.0 - s) - p.cr, 0.0, 1.0);
}

SweepCell evaluate_cell(const SweepBase& base, const CellParams& c, const SweepOptions& opt) {
  SweepCell cell;
  const PopulationSplit split(c.s);
  RateParams rates = c.rates;
  Outcome outcome;
  try {
    // A cell on the dominance boundary (r_S r_C = 1 up to rounding) is excluded
    // too, so the blank region does not depend on how the grid values round.
    const RateParams& r = c.rates;
    const double slack = 1.0 + opt.tol.marginal;
    if (!(r.supporter_liberation() > r.contrarian_subjugation() * slack &&
          r.contrarian_liberation() > r.supporter_subjugation() * slack)) {
      throw DominanceViolation("excluded");
    }
    switch (base.variant) {
      case Variant::Direct:
        outcome = classify_direct(split, rates, c.direct, opt.tol);
        break;
      case Variant::Indirect:
        rates = apply_indirect(c.rates, c.indirect);
        outcome = classify_basic(split, rates, opt.tol);
        break;
      default:
        outcome = classify_basic(split, rates, opt.tol);
        break;
    }
  } catch (const DominanceViolation&) {
    cell.tag = CellTag::Excluded;
    cell.blue_fraction = std::numeric_limits<double>::quiet_NaN();
    return cell;
  }

  cell.tag = tag_of(outcome);
  switch (cell.tag) {
    case CellTag::BlueVictory:
      cell.blue_fraction = 1.0;
      break;
    case CellTag::RedVictory:
      cell.blue_fraction = 0.0;
      break;
    case CellTag::Stalemate:
      cell.blue_fraction = std::get<Stalemate>(outcome).point.blue_controlled();
      break;
    default: {
      const bool direct = base.variant == Variant::Direct && c.direct.active();
      const ReducedState p = direct ? stalemate_direct_point(split, rates, c.direct)
                                    : stalemate_basic_point(split, rates);
      cell.blue_fraction = branch_blue_fraction(p, c.s);
      break;
    }
  }

  if (opt.cross_check && cell.tag != CellTag::Marginal) {
    cell.cross_checked = true;
    try {
      const ReducedState init = default_initial_state(split);
      const Trajectory traj =
          base.variant == Variant::Direct
              ? integrate(DirectModel{split, rates, c.direct}, init, opt.integrator)
              : integrate(BasicModel{split, rates}, init, opt.integrator);
      cell.cross_check_agrees = tag_of(outcome_from_trajectory(traj)) == cell.tag;
    } catch (const Error&) {
      cell.cross_check_agrees = false;
    }
  }
  return cell;
}

void check_axis(const SweepAxis& a) {
  const std::string name(parameter_name(a.parameter));
  if (a.count < 2) throw ConfigError("axis " + name + " needs at least 2 points");
  if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max)) {
    throw ConfigError("axis " + name + " needs finite min < max");
  }
  if (a.scale == AxisScale::Log && !(a.min > 0.0)) {
    throw ConfigError("log axis " + name + " needs min > 0");
  }
  switch (a.parameter) {
    case Parameter::S:
      if (!(a.min > 0.0 && a.max < 1.0)) throw ConfigError("axis S must stay inside (0, 1)");
      break;
    case Parameter::lambda_S:
    case Parameter::lambda_C:
      if (a.min < 0.0) throw ConfigError("axis " + name + " must be >= 0");
      break;
    case Parameter::mu_S:
    case Parameter::mu_C:
      if (a.min < 1.0) throw ConfigError("axis " + name + " must be >= 1");
      break;
    default:
      if (!(a.min > 0.0)) throw ConfigError("axis " + name + " must be > 0");
      break;
  }
}

OpportunisticState slice_state(const BasinSlice& slice, double x, double y) {
  switch (slice.fixed) {
    case BasinCoordinate::S0:
      return {x, y, slice.fixed_value};
    case BasinCoordinate::SB0:
      return {slice.fixed_value, x, y};
    default:
      return {x, slice.fixed_value, y};
  }
}

bool in_box(const OpportunisticState& st) {
  return st.s >= 0.0 && st.s <= 1.0 && st.sb >= 0.0 && st.sb <= st.s && st.cr >= 0.0 &&
         st.cr <= 1.0 - st.s;
}

std::vector<double> centers(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return out;
}

}  // namespace

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::Basic:
      return "basic";
    case Variant::Direct:
      return "direct";
    case Variant::Indirect:
      return "indirect";
    default:
      return "opportunistic";
  }
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  for (Variant v : {Variant::Basic, Variant::Direct, Variant::Indirect, Variant::Opportunistic}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

std::string_view parameter_name(Parameter p) noexcept {
  static constexpr std::string_view names[] = {"S",   "r_S", "r_C",      "f_S",      "f_C", "h_S",
                                               "h_C", "lambda_S", "lambda_C", "mu_S", "mu_C"};
  return names[static_cast<int>(p)];
}

std::optional<Parameter> parse_parameter(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(Parameter::mu_C); ++i) {
    if (parameter_name(static_cast<Parameter>(i)) == name) return static_cast<Parameter>(i);
  }
  return std::nullopt;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / last;
    out[i] = scale == AxisScale::Log ? std::exp(std::log(min) + u * (std::log(max) - std::log(min)))
                                     : min + u * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::string_view cell_tag_name(CellTag tag) noexcept {
  switch (tag) {
    case CellTag::BlueVictory:
      return "blue_victory";
    case CellTag::RedVictory:
      return "red_victory";
    case CellTag::Stalemate:
      return "stalemate";
    case CellTag::Marginal:
      return "marginal";
    case CellTag::Excluded:
      return "excluded";
    default:
      return "inconclusive";
  }
}

void validate_sweep(const SweepGrid& grid) {
  const Variant v = grid.base.variant;
  if (v == Variant::Opportunistic) {
    throw ConfigError("the opportunistic model has no outcome map; use a basin map");
  }
  for (const SweepAxis* a : {&grid.x, &grid.y}) {
    if (!variant_has(v, a->parameter)) {
      throw ConfigError("parameter " + std::string(parameter_name(a->parameter)) +
                        " is not part of the " + std::string(variant_name(v)) + " variant");
    }
    check_axis(*a);
  }
  if (grid.x.parameter == grid.y.parameter) throw ConfigError("both axes sweep the same parameter");
  const bool lser = is_lser(grid.x.parameter) || is_lser(grid.y.parameter);
  const bool raw = is_raw_rate(grid.x.parameter) || is_raw_rate(grid.y.parameter);
  if (lser && raw) throw ConfigError("cannot sweep an LSER and a raw rate together");
}

SweepGrid outcome_map(SweepGrid grid, const SweepOptions& options) {
  validate_sweep(grid);
  const auto xs = grid.x.values();
  const auto ys = grid.y.values();
  const std::size_t nx = xs.size();
  grid.cells.assign(nx * ys.size(), SweepCell{});
  parallel_for(grid.cells.size(), options.threads, [&](std::size_t k) {
    const std::size_t i = k % nx, j = k / nx;
    const CellParams c = cell_params(grid.base, grid.x.parameter, xs[i], grid.y.parameter, ys[j]);
    grid.cells[k] = evaluate_cell(grid.base, c, options);
  });
  return grid;
}

std::vector<double> blue_control_surface(const SweepGrid& grid, const SweepOptions& options) {
  SweepOptions analytic = options;
  analytic.cross_check = false;
  const SweepGrid mapped = outcome_map(grid, analytic);
  std::vector<double> out;
  out.reserve(mapped.cells.size());
  for (const auto& c : mapped.cells) out.push_back(c.blue_fraction);
  return out;
}

SweepGrid fig2_grid(std::size_t nx, std::size_t ny) {
  SweepGrid g;
  g.base.variant = Variant::Basic;
  g.base.s = 0.4;
  g.x = {Parameter::r_S, 0.1, 5.0, nx, AxisScale::Linear};
  g.y = {Parameter::r_C, 0.1, 5.0, ny, AxisScale::Linear};
  return g;
}

std::string_view basin_coordinate_name(BasinCoordinate c) noexcept {
  switch (c) {
    case BasinCoordinate::SB0:
      return "SB0";
    case BasinCoordinate::CR0:
      return "CR0";
    default:
      return "S0";
  }
}

std::string_view basin_tag_name(BasinTag tag) noexcept {
  switch (tag) {
    case BasinTag::BlueVictory:
      return "blue_victory";
    case BasinTag::RedVictory:
      return "red_victory";
    case BasinTag::Saddle:
      return "saddle";
    case BasinTag::Inconclusive:
      return "inconclusive";
    default:
      return "outside_box";
  }
}

OpportunisticState BasinMap::initial_state(std::size_t i, std::size_t j) const {
  return slice_state(slice, x_values.at(i), y_values.at(j));
}

double BasinMap::blue_basin_fraction() const {
  std::size_t blue = 0, total = 0;
  for (BasinTag t : cells) {
    if (t == BasinTag::OutsideBox) continue;
    ++total;
    if (t == BasinTag::BlueVictory) ++blue;
  }
  return total == 0 ? 0.0 : static_cast<double>(blue) / static_cast<double>(total);
}

BasinTag basin_attractor(const OpportunisticModel& model, const OpportunisticState& init,
                         const IntegratorConfig& cfg) {
  try {
    const Trajectory traj = integrate(model, init, cfg);
    if (!traj.converged()) return BasinTag::Inconclusive;
    const std::string& eq = traj.terminal.equilibrium;
    if (eq == "blue_victory") return BasinTag::BlueVictory;
    if (eq == "red_victory") return BasinTag::RedVictory;
    if (eq == "balanced") return BasinTag::Saddle;
    return BasinTag::Inconclusive;
  } catch (const IntegrationFailure&) {
    return BasinTag::Inconclusive;
  }
}

BasinMap basin_map(const RateParams& rates, const OpportunisticParams& op,
                   const BasinSlice& slice, const BasinOptions& options) {
  if (slice.cols < 2 || slice.rows < 2) throw ConfigError("basin slice needs at least 2x2 cells");
  if (!(slice.bracket_width > 0.0)) throw ConfigError("bracket width must be > 0");
  if (!(slice.fixed_value > 0.0 && slice.fixed_value < 1.0)) {
    throw ConfigError("fixed basin coordinate must lie inside (0, 1)");
  }
  const OpportunisticModel model{rates, op};
  BasinMap map;
  map.slice = slice;
  if (slice.fixed == BasinCoordinate::S0) {
    map.x_values = centers(0.0, slice.fixed_value, slice.cols);
    map.y_values = centers(0.0, 1.0 - slice.fixed_value, slice.rows);
  } else {
    map.x_values = centers(0.0, 1.0, slice.cols);
    map.y_values = centers(0.0, 1.0, slice.rows);
  }

  map.cells.assign(slice.cols * slice.rows, BasinTag::OutsideBox);
  parallel_for(map.cells.size(), options.threads, [&](std::size_t k) {
    const OpportunisticState init = map.initial_state(k % slice.cols, k / slice.cols);
    if (in_box(init)) map.cells[k] = basin_attractor(model, init, options.integrator);
  });

  std::vector<std::vector<SeparatrixSample>> per_row(slice.rows);
  parallel_for(slice.rows, options.threads, [&](std::size_t j) {
    const double y = map.y_values[j];
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < slice.cols; ++i) {
      const BasinTag tag = map.at(i, j);
      if (tag != BasinTag::BlueVictory && tag != BasinTag::RedVictory) continue;
      if (prev && map.at(*prev, j) != tag) {
        const BasinTag lo_tag = map.at(*prev, j);
        double lo = map.x_values[*prev], hi = map.x_values[i];
        while (hi - lo >= slice.bracket_width) {
          const double mid = 0.5 * (lo + hi);
          const BasinTag t = basin_attractor(model, slice_state(slice, mid, y), options.integrator);
          if (t == lo_tag) {
            lo = mid;
          } else if (t == tag) {
            hi = mid;
          } else {
            // Settled on the saddle (or undecided): the midpoint is on the boundary.
            lo = hi = mid;
          }
        }
        per_row[j].push_back({slice_state(slice, 0.5 * (lo + hi), y), hi - lo, j});
      }
      prev = i;
    }
  });
  for (auto& row : per_row) {
    map.separatrix.insert(map.separatrix.end(), row.begin(), row.end());
  }
  return map;
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double UniformSource::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

ConjectureReport conjecture_sweep(std::size_t samples, const ConjectureRanges& ranges,
                                  std::uint64_t seed) {
  if (!(ranges.rate_min > 0.0 && ranges.rate_min < ranges.rate_max) ||
      !(ranges.s_min > 0.0 && ranges.s_min < ranges.s_max && ranges.s_max < 1.0) ||
      !(ranges.lambda_max >= 0.0)) {
    throw ConfigError("invalid conjecture sampling ranges");
  }
  UniformSource rng(seed);
  ConjectureReport report;
  report.seed = seed;
  report.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    ConjectureDraw d;
    d.index = n;
    do {
      d.f_S = rng.log_uniform(ranges.rate_min, ranges.rate_max);
      d.f_C = rng.log_uniform(ranges.rate_min, ranges.rate_max);
      d.h_S = rng.log_uniform(ranges.rate_min, ranges.rate_max);
      d.h_C = rng.log_uniform(ranges.rate_min, ranges.rate_max);
    } while (!(d.f_S > d.h_C && d.f_C > d.h_S));
    d.s = rng.uniform(ranges.s_min, ranges.s_max);
    const double lambda_S = rng.uniform(0.0, ranges.lambda_max);
    const double lambda_C = rng.uniform(0.0, ranges.lambda_max);
    const bool zero = ranges.zero_intervention_every != 0 &&
                      (n + 1) % ranges.zero_intervention_every == 0;
    d.lambda_S = zero ? 0.0 : lambda_S;
    d.lambda_C = zero ? 0.0 : lambda_C;
    if (zero) ++report.zero_intervention;

    d.check = check_conjecture(PopulationSplit(d.s), RateParams(d.f_S, d.f_C, d.h_S, d.h_C),
                               DirectIntervention(d.lambda_S, d.lambda_C));
    if (d.check.interior) ++report.interior;
    if (d.check.marginal) {
      ++report.marginal;
    } else if (d.check.agrees()) {
      ++report.agreements;
    } else {
      report.disagreements.push_back(d);
    }
  }
  return report;
}

}  // namespace revolt
