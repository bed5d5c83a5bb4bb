#pragma once

#include <optional>
#include <span>

#include "mcs/cost.hpp"
#include "mcs/objective.hpp"
#include "mcs/properties.hpp"
#include "mcs/report.hpp"

namespace mcs {

/// One-shot adjusted problem: maximize G(x, theta_new) = F(x, theta_new) -
/// C(x - x_initial) over the new constraint set, starting from an optimal
/// choice at theta_initial over the initial constraint set. Both constraint
/// sets default to the whole lattice.
struct StaticProblem {
  LatticePtr lattice;
  ObjectivePtr objective;
  CostFunction cost;
  int theta_initial = 0;
  int theta_new = 0;
  std::vector<int> initial_set;  // empty = all of L
  std::vector<int> new_set;      // empty = all of L
  std::optional<int> x_initial;  // member id; computed if absent
  double tol = 0.0;

  const GridLattice& L() const { return *lattice; }
  const ParamPoset& poset() const { return objective->poset(); }
  std::vector<int> initial_ids() const;
  std::vector<int> new_ids() const;
  // G(x, theta_new); -inf when the adjustment from x_initial is infeasible.
  double G(int x, int x_init) const;
};

struct ArgmaxSet {
  double value = -kInf;
  std::vector<int> points;  // lexicographic member order

  bool contains(int id) const;
};

// Exhaustive maximization; members with f = -inf (infeasible) are excluded.
// Throws if every value is -inf.
ArgmaxSet argmax_over(std::span<const int> members, const MemberFn& f);

/// Result of a constructive theorem selection.
struct SelectResult {
  CheckStatus status = CheckStatus::Holds;
  std::vector<PropertyReport> hypothesis_failures;
  int x_initial = -1;
  int x_prime = -1;  // lexicographically-first maximizer of G
  int x_hat = -1;    // x_initial ∨ x_prime
  ArgmaxSet gmax;
  bool x_hat_in_argmax = false;
  bool x_hat_geq_initial = false;
  // Theorem 1* companion: x_initial ∧ x' maximizes F(., theta_initial) on the
  // initial set for every maximizer x' of G on the new set.
  std::optional<bool> companion_meet_ok;
};

// Verifies the hypotheses of the basic comparative-statics theorem (quasi-
// supermodularity, single-crossing differences, minimal monotonicity,
// theta_initial <= theta_new), then returns x_hat = x_initial ∨ x' for the
// lexicographically-first maximizer x' of G. With hypotheses verified, a
// selection that is not a maximizer or not above x_initial is an engine bug.
// `skip_hypotheses` reruns without the gate to reproduce counterexamples.
SelectResult theorem1_select(const StaticProblem& P, bool skip_hypotheses = false);

// Constraint-set version: also requires new_set >= initial_set in the strong
// set order and both sets to be sublattices; runs the companion check.
SelectResult theorem1_star_select(const StaticProblem& P, bool skip_hypotheses = false);

enum class Prop1Mode { StrictSingleCrossing, StrictMinimalMonotonicity };

// "For all" variant: every maximizer of G lies above x_initial.
TheoremReport prop1_forall_check(const StaticProblem& P, Prop1Mode mode,
                                 bool skip_hypotheses = false);

// Shared helpers used by the le Chatelier and dynamic layers.
int resolve_initial_choice(const StaticProblem& P);  // verifies or computes x_initial
std::vector<PropertyReport> ordinal_hypotheses(const StaticProblem& P);  // QSM + SCD + order

}  // namespace mcs
