#pragma once

#include "mcs/dynamic.hpp"

namespace mcs {

enum class EquilibriumMode { Caged, Monotone };

/// Short-lived-agent equilibrium sequence: each period's choice maximizes
/// that period's payoff G_t(x, y) = F(x, theta_t) - C_t(x - y) given the
/// predecessor's choice y. The selection follows the constructive joins and
/// meets from the existence proofs, so it carries per-period certificates.
struct EquilibriumSequence {
  CheckStatus status = CheckStatus::Holds;
  std::vector<PropertyReport> hypothesis_failures;
  std::vector<int> points;            // x~_1 .. x~_H
  std::vector<double> argmax_values;  // attained per-period maximum
  int continuation = -1;              // absorbing point when detected
  int x_initial = -1;
  int x_bar = -1;
  bool bounds_ok = false;  // caged: x_lo <= x~_t <= x_bar; monotone: increasing as well
  std::string detail;
};

// Theorem on short-lived agents: caged mode needs theta_t within
// [theta_initial, theta_target]; monotone mode additionally needs an
// increasing parameter path and produces an increasing sequence.
EquilibriumSequence equilibrium_sequence(const DynamicScenario& S, EquilibriumMode mode,
                                         std::optional<int> x_bar = std::nullopt,
                                         bool skip_hypotheses = false);

// Sluggishness comparison: with a supermodular objective and monotone,
// additively separable, per-dimension convex costs, the join of a monotone
// equilibrium sequence with an optimal forward-looking path inside
// [x_initial, x_bar] is again optimal and dominates the equilibrium sequence.
TheoremReport theorem6_check(const DynamicScenario& S, const EquilibriumSequence& eq,
                             const Path& forward, bool skip_hypotheses = false);
// Convenience form: builds the monotone equilibrium and the sandwiched
// optimal path itself.
TheoremReport theorem6_check(const DynamicScenario& S, bool skip_hypotheses = false);

// Two-stage costly adjustment (the 2-period special case of the short-lived
// theorem): costs C1, C2 for the two stages, parameter fixed at theta_target.
// Certifies x2 >= x1 >= x_initial (and both <= x_bar).
TheoremReport prop2_two_stage_check(const StaticProblem& P, const CostFunction& C2,
                                    bool skip_hypotheses = false);

}  // namespace mcs
