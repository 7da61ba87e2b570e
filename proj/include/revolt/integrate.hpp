#pragma once

// Trajectory integration for the three model variants, with early
// termination once the state settles on an equilibrium.

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "revolt/equilibria.hpp"
#include "revolt/errors.hpp"
#include "revolt/model.hpp"

namespace revolt {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_max = 1e4;
  /// Stop once the max-norm of the right-hand side falls below this.
  double convergence_eps = 1e-10;
  /// Stop once the state is this close (max-norm) to a closed-form equilibrium.
  double proximity_eps = 1e-8;
  /// Keep every k-th accepted step; the first and last points are always kept.
  std::size_t record_stride = 1;

  /// Throws PreconditionError unless tolerances and horizon are positive.
  void validate() const;

  friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

/// Overshoot outside the state box that is clipped as roundoff; anything
/// larger aborts the integration.
inline constexpr double kBoxSlack = 1e-7;

struct BasicModel {
  PopulationSplit split;
  RateParams rates;
};

struct DirectModel {
  PopulationSplit split;
  RateParams rates;
  DirectIntervention intervention;
};

struct OpportunisticModel {
  RateParams rates;
  OpportunisticParams params;
};

using Model = std::variant<BasicModel, DirectModel, OpportunisticModel>;
using InitialState = std::variant<ReducedState, OpportunisticState>;

/// A named equilibrium in the model's independent coordinates.
struct KnownEquilibrium {
  std::string label;
  std::array<double, 3> coords{};
};

/// Closed-form equilibria that lie in the state box. Coordinates are
/// (SB, CR) for fixed-population models and (SB, CR, S) for the opportunistic one.
std::vector<KnownEquilibrium> known_equilibria(const Model& model);

enum class TerminalKind { ConvergedToEquilibrium, HorizonReached };

struct Terminal {
  TerminalKind kind = TerminalKind::HorizonReached;
  /// Label of the equilibrium reached, or "unlisted" when the right-hand side
  /// vanished away from every closed-form point.
  std::string equilibrium;
};

struct Trajectory {
  /// 2 for fixed-population models, 3 for the opportunistic model.
  std::size_t dimension = 2;
  std::vector<double> times;
  /// Independent coordinates as integrated; unused trailing entries are 0.
  std::vector<std::array<double, 3>> coords;
  std::vector<BasicState> states;
  /// Max-norm of the right-hand side at each recorded point.
  std::vector<double> rhs_norms;
  Terminal terminal;

  const BasicState& final_state() const { return states.back(); }
  bool converged() const noexcept { return terminal.kind == TerminalKind::ConvergedToEquilibrium; }
};

/// SB0 = 0.9 S and CR0 = 0.9 C: both forces present, entrenched in friendly territory.
ReducedState default_initial_state(const PopulationSplit& split);
OpportunisticState default_initial_state(double s0);

Trajectory integrate(const BasicModel& model, const ReducedState& init,
                     const IntegratorConfig& cfg = {});
Trajectory integrate(const DirectModel& model, const ReducedState& init,
                     const IntegratorConfig& cfg = {});
Trajectory integrate(const OpportunisticModel& model, const OpportunisticState& init,
                     const IntegratorConfig& cfg = {});
/// Dispatches on the model; the initial state must match its kind.
Trajectory integrate(const Model& model, const InitialState& init,
                     const IntegratorConfig& cfg = {});

/// Fixed-step classical RK4 to t_end with no convergence checks. Verification oracle.
std::array<double, 3> integrate_rk4(const Model& model, const InitialState& init, double step,
                                    double t_end);

/// Raised when an outcome is requested from a trajectory that never settled.
class InconclusiveError : public Error {
 public:
  InconclusiveError(const std::string& what, BasicState final_state)
      : Error(what), final_state_(final_state) {}
  const BasicState& final_state() const noexcept { return final_state_; }

 private:
  BasicState final_state_;
};

/// BlueVictory when CR + SR < tol, RedVictory when SB + CB < tol, Stalemate otherwise.
Outcome outcome_from_trajectory(const Trajectory& traj, double tol = 1e-6);

}  // namespace revolt
