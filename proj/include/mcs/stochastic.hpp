#pragma once

#include "mcs/dynamic.hpp"

namespace mcs {

/// Strictly increasing utility over realized payoffs; curvature encodes the
/// risk attitude.
struct Utility {
  enum class Family { Linear, Cara, Piecewise };
  Family family = Family::Linear;
  double risk_aversion = 0;          // Cara: (1 - exp(-a v)) / a
  double slope_lo = 1, slope_hi = 1; // Piecewise-linear around a kink
  double kink = 0;

  static Utility linear();
  static Utility cara(double a);
  static Utility piecewise(double slope_below, double slope_above, double kink);
  double operator()(double v) const;
};

/// Finite cost lottery: state probabilities, per-state cost functions, and
/// the agent's utility.
struct CostLottery {
  std::vector<double> probs;
  std::vector<CostFunction> costs;
  Utility utility;

  int states() const { return static_cast<int>(probs.size()); }
  void validate(int dims) const;
};

// Expected-utility objective: sum_s P(s) u(F(x, theta) - C_s(x - x_init));
// -inf when any positive-probability state makes the adjustment infeasible.
double expected_objective(const StaticProblem& P, const CostLottery& lot, int x, int theta,
                          int x_init);

// Uncertain-cost counterparts of the basic, le Chatelier, and dynamic
// theorems: identical conclusions with G replaced by the expected utility.
TheoremReport theorem1_prime_check(const StaticProblem& P, const CostLottery& lot,
                                   bool skip_hypotheses = false);
TheoremReport theorem2_prime_check(const StaticProblem& P, const CostLottery& lot,
                                   bool skip_hypotheses = false);

/// Per-period i.i.d. cost lotteries for the dynamic extension.
struct LotteryPath {
  std::vector<CostLottery> prefix;
  CostLottery tail;

  const CostLottery& at(int t) const {
    return t <= static_cast<int>(prefix.size()) ? prefix[t - 1] : tail;
  }
};

// Builds expected-utility period payoffs and runs the dynamic le Chatelier
// check on them. The scenario's own cost path is ignored.
TheoremReport theorem3_prime_check(const DynamicScenario& S, const LotteryPath& lots,
                                   std::optional<int> x_bar = std::nullopt,
                                   bool skip_hypotheses = false);

PeriodTables build_expected_tables(const DynamicScenario& S, const LotteryPath& lots);

}  // namespace mcs
