#pragma once

// Parameter sweeps (outcome maps and Blue-control surfaces), basin-of-
// attraction slices for the opportunistic model, and the Monte Carlo
// harness for the intervention-stalemate stability conjecture.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "revolt/equilibria.hpp"
#include "revolt/integrate.hpp"
#include "revolt/model.hpp"

namespace revolt {

enum class Variant { Basic, Direct, Indirect, Opportunistic };

std::string_view variant_name(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

/// Quantities a sweep axis can vary. r_S and r_C are realized through
/// RateParams::from_lsers, so in LSER space a cell is dominance-excluded
/// exactly when r_S * r_C <= 1.
enum class Parameter { S, r_S, r_C, f_S, f_C, h_S, h_C, lambda_S, lambda_C, mu_S, mu_C };

std::string_view parameter_name(Parameter p) noexcept;
std::optional<Parameter> parse_parameter(std::string_view name) noexcept;

enum class AxisScale { Linear, Log };

struct SweepAxis {
  Parameter parameter = Parameter::r_S;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;
  AxisScale scale = AxisScale::Linear;

  /// Grid points from min to max inclusive.
  std::vector<double> values() const;
};

/// Values held fixed across the sweep.
struct SweepBase {
  Variant variant = Variant::Basic;
  double s = 0.4;
  RateParams rates{2.0, 2.0, 1.0, 1.0};
  DirectIntervention direct{0.0, 0.0};
  IndirectIntervention indirect{1.0, 1.0};
};

enum class CellTag { BlueVictory, RedVictory, Stalemate, Marginal, Excluded, Inconclusive };

std::string_view cell_tag_name(CellTag tag) noexcept;

struct SweepCell {
  CellTag tag = CellTag::Excluded;
  /// SB + CB at the attractor; NaN for excluded cells.
  double blue_fraction = 0.0;
  bool cross_checked = false;
  bool cross_check_agrees = true;
};

struct SweepGrid {
  SweepBase base;
  SweepAxis x;
  SweepAxis y;
  /// Row-major over y: cells[j * x.count + i] holds (x.values()[i], y.values()[j]).
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t i, std::size_t j) const { return cells.at(j * x.count + i); }
};

struct SweepOptions {
  /// Re-derive every classified cell by integrating from the default initial state.
  bool cross_check = false;
  IntegratorConfig integrator;
  Tolerances tol;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Throws ConfigError for axes the variant does not have, repeated or
/// mixed LSER/raw-rate axes, and invalid ranges.
void validate_sweep(const SweepGrid& grid);

/// Classifies every cell analytically (and optionally by integration).
SweepGrid outcome_map(SweepGrid grid, const SweepOptions& options = {});

/// SB + CB at the attractor for every cell, same layout as SweepGrid::cells.
std::vector<double> blue_control_surface(const SweepGrid& grid, const SweepOptions& options = {});

/// Preset outcome map: S = 0.4, r_S and r_C over [0.1, 5].
SweepGrid fig2_grid(std::size_t nx = 50, std::size_t ny = 50);

enum class BasinCoordinate { SB0, CR0, S0 };

std::string_view basin_coordinate_name(BasinCoordinate c) noexcept;

struct BasinSlice {
  BasinCoordinate fixed = BasinCoordinate::S0;
  double fixed_value = 0.5;
  /// Cells along the first varying coordinate (SB0, or CR0 when SB0 is fixed).
  std::size_t cols = 41;
  /// Cells along the second varying coordinate (CR0, or S0 when S0 is not fixed).
  std::size_t rows = 41;
  double bracket_width = 1e-6;
};

enum class BasinTag { BlueVictory, RedVictory, Saddle, Inconclusive, OutsideBox };

std::string_view basin_tag_name(BasinTag tag) noexcept;

struct SeparatrixSample {
  OpportunisticState point;
  double bracket_width = 0.0;
  std::size_t row = 0;
};

struct BasinMap {
  BasinSlice slice;
  std::vector<double> x_values;
  std::vector<double> y_values;
  /// Row-major: cells[j * cols + i].
  std::vector<BasinTag> cells;
  std::vector<SeparatrixSample> separatrix;

  BasinTag at(std::size_t i, std::size_t j) const { return cells.at(j * slice.cols + i); }
  /// Initial state of cell (i, j); may be outside the box for OutsideBox cells.
  OpportunisticState initial_state(std::size_t i, std::size_t j) const;
  /// Fraction of in-box cells that reach Blue victory.
  double blue_basin_fraction() const;
};

struct BasinOptions {
  IntegratorConfig integrator;
  unsigned threads = 0;
};

/// Attractor of the opportunistic model from `init`: BlueVictory, RedVictory,
/// Saddle (settles on the balanced stalemate) or Inconclusive.
BasinTag basin_attractor(const OpportunisticModel& model, const OpportunisticState& init,
                         const IntegratorConfig& cfg = {});

BasinMap basin_map(const RateParams& rates, const OpportunisticParams& op,
                   const BasinSlice& slice = {}, const BasinOptions& options = {});

struct ConjectureRanges {
  double rate_min = 0.1;
  double rate_max = 10.0;
  double s_min = 0.05;
  double s_max = 0.95;
  double lambda_max = 2.0;
  /// Every k-th draw has no intervention at all (0 disables).
  std::size_t zero_intervention_every = 10;
};

struct ConjectureDraw {
  std::size_t index = 0;
  double s = 0.0;
  double f_S = 0.0, f_C = 0.0, h_S = 0.0, h_C = 0.0;
  double lambda_S = 0.0, lambda_C = 0.0;
  ConjectureCheck check;
};

struct ConjectureReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t marginal = 0;
  /// Draws whose closed-form stalemate lies inside the state box.
  std::size_t interior = 0;
  std::size_t zero_intervention = 0;
  std::vector<ConjectureDraw> disagreements;
};

/// Draws rates log-uniformly (rejecting non-dominant draws), S uniformly and
/// intervention powers uniformly, then runs check_conjecture on each.
/// Deterministic in the seed.
ConjectureReport conjecture_sweep(std::size_t samples, const ConjectureRanges& ranges,
                                  std::uint64_t seed);

/// Deterministic uniform draws on [0, 1) from a 64-bit Mersenne Twister,
/// independent of the standard library's distribution implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace revolt
