#pragma once

#include <optional>

#include "mcs/lechatelier.hpp"

namespace mcs {

struct HorizonSpec {
  enum class Mode { Infinite, Finite };
  Mode mode = Mode::Infinite;
  // Infinite: report horizon H; Finite: number of decision periods K.
  int periods = 40;

  static HorizonSpec infinite(int report_horizon) { return {Mode::Infinite, report_horizon}; }
  static HorizonSpec finite(int k) { return {Mode::Finite, k}; }
  bool is_finite() const { return mode == Mode::Finite; }
};

/// Forward-looking discounted adjustment problem. The parameter and cost
/// sequences are a transient prefix followed by a constant tail, so the
/// stationary part can be solved exactly. Periods are 1-based.
struct DynamicScenario {
  LatticePtr lattice;
  ObjectivePtr objective;
  int theta_initial = 0;  // defines the starting choice
  int theta_target = 0;   // the new frictionless benchmark
  std::vector<int> theta_prefix;
  int theta_tail = 0;
  std::vector<CostFunction> cost_prefix;
  CostFunction cost_tail = CostFunction::zero(1);
  double delta = 0.9;
  std::optional<int> x0;  // member id; computed if absent
  HorizonSpec horizon = HorizonSpec::infinite(40);
  double vi_tol = 1e-10;
  long vi_cap = 1'000'000;
  double value_tol = 1e-9;  // relative, for optimality-preservation assertions
  double tol = 0.0;         // property-check comparison tolerance

  int prefix_len() const { return static_cast<int>(theta_prefix.size()); }
  int theta_at(int t) const;                // t >= 1
  const CostFunction& cost_at(int t) const  // t >= 1
  {
    return t <= prefix_len() ? cost_prefix[t - 1] : cost_tail;
  }
  const GridLattice& L() const { return *lattice; }
  const ParamPoset& poset() const { return objective->poset(); }
  void validate() const;
};

/// Period-payoff matrices for the dynamic program. The stochastic layer
/// builds these from expected utilities; everything downstream is shared.
struct PeriodTables {
  int m = 0;
  double delta = 0.9;
  std::vector<std::vector<double>> prefix;  // [t-1][from * m + to], -inf = infeasible
  std::vector<double> tail;                 // [from * m + to]
  HorizonSpec horizon;
  double vi_tol = 1e-10;
  long vi_cap = 1'000'000;

  int prefix_len() const { return static_cast<int>(prefix.size()); }
  double payoff(int t, int from, int to) const {
    const std::vector<double>& r = t <= prefix_len() ? prefix[t - 1] : tail;
    return r[static_cast<std::size_t>(from) * m + to];
  }
};

PeriodTables build_tables(const DynamicScenario& S);

struct Path {
  // x_1 .. x_tau; in infinite mode the path is constant from tau onwards and
  // `continuation` is the absorbing point (the last entry). Finite mode holds
  // exactly K entries and no continuation.
  std::vector<int> points;
  int continuation = -1;
  double value = -kInf;

  // x_1 .. x_H for reporting, extended with the continuation point.
  std::vector<int> reported(int horizon) const;
};

struct DynamicSolution {
  Path path;
  std::vector<double> stationary_value;  // V over members (infinite mode)
  double bellman_residual = 0.0;
  long vi_iterations = 0;
};

// Exact DP solve: value iteration to tolerance plus a policy-iteration polish
// (infinite mode), pure backward induction (finite mode). Path extraction is
// greedy with lexicographic-first tie-breaking; a cycling stationary policy
// aborts with a diagnostic.
DynamicSolution dp_solve(const PeriodTables& T, int x0);
DynamicSolution solve_dynamic(const DynamicScenario& S);

// Discounted value of a path that stays at points.back() after its last entry
// (infinite mode); -inf if it ever steps on an infeasible transition.
double path_value(const PeriodTables& T, int x0, const std::vector<int>& points);

// Pointwise x_bar ∧ (x_lo ∨ x_t), value recomputed.
Path sandwich_transform(const PeriodTables& T, const GridLattice& L, int x0, const Path& p,
                        int x_lo, int x_bar);
Path sandwich_transform(const DynamicScenario& S, const Path& p, int x_lo, int x_bar);
// Cumulative join x_1 ∨ ... ∨ x_t, value recomputed.
Path monotonize(const PeriodTables& T, const GridLattice& L, int x0, const Path& p);
Path monotonize(const DynamicScenario& S, const Path& p);

// Dynamic le Chatelier: solves, applies the sandwich transform, and certifies
// value preservation plus x_lo <= x_t <= x_bar everywhere.
TheoremReport theorem3_check(const DynamicScenario& S, std::optional<int> x_bar = std::nullopt,
                             bool skip_hypotheses = false);

// Strong dynamic le Chatelier (stationary data): additionally monotonizes and
// certifies an increasing sandwiched path.
TheoremReport theorem4_check(const DynamicScenario& S, bool skip_hypotheses = false);

// Largest frictionless maximizer of F(., theta_target) above the initial
// choice; used by the dynamic and short-lived checks.
struct BarSelection {
  int x_bar = -1;
  bool is_largest = false;
};
BarSelection longrun_bar(const DynamicScenario& S, int x0);

int resolve_x0(const DynamicScenario& S);

}  // namespace mcs
