#pragma once

#include "mcs/static_solver.hpp"

namespace mcs {

/// Frictionless long-run choice above the initial one.
struct LongRunSelection {
  CheckStatus status = CheckStatus::Holds;
  std::vector<PropertyReport> hypothesis_failures;
  int x_initial = -1;
  int x_bar = -1;
  bool is_largest = false;  // x_bar is the largest maximizer of F(., theta_new)
  ArgmaxSet fmax;
};

// Picks x_bar in argmax F(., theta_new) with x_bar >= x_initial: the largest
// maximizer when one exists (always, under verified quasi-supermodularity on a
// finite lattice), otherwise x_initial ∨ x'' for the lexicographically-first
// frictionless maximizer x''.
LongRunSelection longrun_select(const StaticProblem& P, bool skip_hypotheses = false);

/// Short-run versus long-run comparison for one parameter shift.
struct LeChatelierResult {
  CheckStatus status = CheckStatus::Holds;
  std::vector<PropertyReport> hypothesis_failures;
  int x_initial = -1;
  int x_hat = -1;  // short-run: x_bar ∧ (theorem-1 selection)
  int x_bar = -1;  // long-run frictionless choice
  bool bar_is_largest = false;
  bool x_hat_in_argmax = false;
  bool sandwich = false;         // x_initial <= x_hat <= x_bar
  bool universal_bound = false;  // every maximizer of G is <= x_bar (largest case)
  ArgmaxSet gmax;
  ArgmaxSet fmax;
};

// Theorem 2: verifies quasi-supermodularity, single-crossing differences and
// full monotonicity of the cost, then certifies the sandwich
// x_initial <= x_hat <= x_bar for x_hat = x_bar ∧ theorem1_select(P), and the
// universal bound when x_bar is the largest frictionless maximizer.
LeChatelierResult theorem2_select(const StaticProblem& P, bool skip_hypotheses = false);

// Proposition: with a strictly monotone cost, every maximizer of G lies in
// [x_initial, x_bar]. x_bar defaults to the long-run selection.
TheoremReport prop3_forall_check(const StaticProblem& P, std::optional<int> x_bar = std::nullopt,
                                 bool skip_hypotheses = false);

}  // namespace mcs
