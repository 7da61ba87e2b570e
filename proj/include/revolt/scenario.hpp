#pragma once

// Scenario files: a flat INI-like format with [model], [rates],
// [intervention], [opportunistic], [init] and [integrator] sections.
//
//   [model]
//   name = libya
//   variant = basic        # basic | direct | indirect | opportunistic
//   S = 0.4
//   [rates]
//   f_S = 1
//   ...
//
// '#' and ';' start comments. Numbers round-trip exactly through
// render_scenario.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "revolt/explore.hpp"
#include "revolt/integrate.hpp"
#include "revolt/model.hpp"

namespace revolt {

/// Integrator settings a scenario may override; unset fields keep the defaults.
struct IntegratorOverrides {
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<double> t_max;
  std::optional<double> convergence_eps;
  std::optional<double> proximity_eps;
  std::optional<std::size_t> record_stride;

  bool empty() const noexcept;
  IntegratorConfig apply(IntegratorConfig base = {}) const;

  friend bool operator==(const IntegratorOverrides&, const IntegratorOverrides&) = default;
};

struct Scenario {
  std::string name;
  Variant variant = Variant::Basic;
  /// Supporter fraction; absent for the opportunistic variant (see s0).
  std::optional<double> s;
  RateParams rates{1.0, 1.0, 1.0, 1.0};
  std::optional<DirectIntervention> direct;
  std::optional<IndirectIntervention> indirect;
  std::optional<OpportunisticParams> opportunistic;
  /// Initial SB and CR; both set or both absent.
  std::optional<double> sb0;
  std::optional<double> cr0;
  /// Initial S, opportunistic variant only (required there).
  std::optional<double> s0;
  IntegratorOverrides integrator;

  /// Throws PreconditionError for the opportunistic variant.
  PopulationSplit split() const;
  /// The variant's dynamical system. Indirect intervention is folded into the rates.
  Model model() const;
  /// The scenario's initial state, or the documented default.
  InitialState initial_state() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParseError naming the line and key on malformed input, unknown or
/// duplicate keys, missing required keys and invariant violations.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file; throws ConfigError if it cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& scenario);

}  // namespace revolt
