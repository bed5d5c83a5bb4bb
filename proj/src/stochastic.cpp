#include "mcs/stochastic.hpp"

#include <cmath>
#include <stdexcept>

namespace mcs {

Utility Utility::linear() { return Utility{}; }

Utility Utility::cara(double a) {
  if (!(a > 0)) throw std::invalid_argument("utility: CARA coefficient must be > 0");
  Utility u;
  u.family = Family::Cara;
  u.risk_aversion = a;
  return u;
}

Utility Utility::piecewise(double slope_below, double slope_above, double kink) {
  if (!(slope_below > 0) || !(slope_above > 0))
    throw std::invalid_argument("utility: piecewise slopes must be > 0");
  Utility u;
  u.family = Family::Piecewise;
  u.slope_lo = slope_below;
  u.slope_hi = slope_above;
  u.kink = kink;
  return u;
}

double Utility::operator()(double v) const {
  switch (family) {
    case Family::Linear:
      return v;
    case Family::Cara:
      return (1.0 - std::exp(-risk_aversion * v)) / risk_aversion;
    case Family::Piecewise:
      return v <= kink ? slope_lo * (v - kink) : slope_hi * (v - kink);
  }
  return v;
}

void CostLottery::validate(int dims) const {
  if (probs.empty() || probs.size() != costs.size())
    throw std::invalid_argument("lottery: needs matching state probabilities and costs");
  double total = 0;
  for (double p : probs) {
    if (!(p >= 0)) throw std::invalid_argument("lottery: probabilities must be >= 0");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("lottery: probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  const Vec zero(dims, 0.0);
  for (std::size_t s = 0; s < costs.size(); ++s) {
    if (costs[s].dims() != dims)
      throw std::invalid_argument("lottery: state " + std::to_string(s) + " cost has wrong dimension");
    if (probs[s] > 0 && !(costs[s](zero) < kInf))
      throw std::invalid_argument("lottery: state " + std::to_string(s) + " has C(0) = inf");
  }
}

namespace {

double expected_payoff(const CostLottery& lot, double payoff, const Vec& eps) {
  double total = 0;
  for (int s = 0; s < lot.states(); ++s) {
    if (!(lot.probs[s] > 0)) continue;
    const double c = lot.costs[s](eps);
    if (!(c < kInf)) return -kInf;
    total += lot.probs[s] * lot.utility(payoff - c);
  }
  return total;
}

// Per-state hypothesis gate over positive-probability states.
void lottery_cost_failures(const CostLottery& lot, const DiffSet& D, bool need_full_monotone,
                           double tol, std::vector<PropertyReport>& failures) {
  for (int s = 0; s < lot.states(); ++s) {
    if (!(lot.probs[s] > 0)) continue;
    PropertyReport r = need_full_monotone ? check_cost_monotone(lot.costs[s], D, tol)
                                          : check_cost_minimally_monotone(lot.costs[s], D, tol);
    if (!r.holds) {
      r.detail += " (state " + std::to_string(s) + ")";
      failures.push_back(std::move(r));
    }
  }
}

}  // namespace

double expected_objective(const StaticProblem& P, const CostLottery& lot, int x, int theta,
                          int x_init) {
  const GridLattice& L = P.L();
  return expected_payoff(lot, (*P.objective)(x, theta), vec_sub(L.coords(x), L.coords(x_init)));
}

TheoremReport theorem1_prime_check(const StaticProblem& P, const CostLottery& lot,
                                   bool skip_hypotheses) {
  lot.validate(P.L().dims());
  TheoremReport rep;
  rep.theorem = "thm1prime";

  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  lottery_cost_failures(lot, D, /*need_full_monotone=*/false, P.tol, failures);
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  const int x0 = resolve_initial_choice(P);
  ArgmaxSet gmax = argmax_over(P.new_ids(),
                               [&](int i) { return expected_objective(P, lot, i, P.theta_new, x0); });
  const int x_hat = L.join(x0, gmax.points.front());
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_hat", L.coords(x_hat));
  if (!gmax.contains(x_hat) || !L.leq(x0, x_hat)) {
    if (!skip_hypotheses && rep.hypothesis_failures.empty())
      throw std::logic_error("theorem 1' selection failed although its hypotheses were verified");
    rep.status = CheckStatus::Violated;
    rep.detail = "x_initial ∨ x' is not an expected-utility maximizer above x_initial";
    return rep;
  }
  rep.detail = "x_hat maximizes the expected utility and lies above x_initial";
  return rep;
}

TheoremReport theorem2_prime_check(const StaticProblem& P, const CostLottery& lot,
                                   bool skip_hypotheses) {
  lot.validate(P.L().dims());
  TheoremReport rep;
  rep.theorem = "thm2prime";

  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  lottery_cost_failures(lot, D, /*need_full_monotone=*/true, P.tol, failures);
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  LongRunSelection lr = longrun_select(P, /*skip_hypotheses=*/true);
  const int x0 = lr.x_initial;
  ArgmaxSet gmax = argmax_over(P.new_ids(),
                               [&](int i) { return expected_objective(P, lot, i, P.theta_new, x0); });
  const int x_prime = L.join(x0, gmax.points.front());
  const int x_hat = L.meet(lr.x_bar, x_prime);
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_hat", L.coords(x_hat));
  rep.add_point("x_bar", L.coords(lr.x_bar));

  bool ok = gmax.contains(x_hat) && L.leq(x0, x_hat) && L.leq(x_hat, lr.x_bar);
  if (lr.is_largest)
    for (int id : gmax.points) ok = ok && L.leq(id, lr.x_bar);
  if (!ok) {
    if (!skip_hypotheses && rep.hypothesis_failures.empty())
      throw std::logic_error("theorem 2' selection failed although its hypotheses were verified");
    rep.status = CheckStatus::Violated;
    rep.detail = "sandwich or universal bound fails under the expected utility";
    return rep;
  }
  rep.detail = "x_initial <= x_hat <= x_bar with the universal bound where applicable";
  return rep;
}

PeriodTables build_expected_tables(const DynamicScenario& S, const LotteryPath& lots) {
  PeriodTables T;
  const GridLattice& L = S.L();
  T.m = L.size();
  T.delta = S.delta;
  T.horizon = S.horizon;
  T.vi_tol = S.vi_tol;
  T.vi_cap = S.vi_cap;
  auto fill = [&](int theta, const CostLottery& lot) {
    std::vector<double> r(static_cast<std::size_t>(T.m) * T.m);
    for (int from = 0; from < T.m; ++from)
      for (int to = 0; to < T.m; ++to)
        r[static_cast<std::size_t>(from) * T.m + to] = expected_payoff(
            lot, (*S.objective)(to, theta), vec_sub(L.coords(to), L.coords(from)));
    return r;
  };
  for (int t = 1; t <= S.prefix_len(); ++t) T.prefix.push_back(fill(S.theta_at(t), lots.at(t)));
  T.tail = fill(S.theta_tail, lots.tail);
  return T;
}

TheoremReport theorem3_prime_check(const DynamicScenario& S, const LotteryPath& lots,
                                   std::optional<int> x_bar, bool skip_hypotheses) {
  if (static_cast<int>(lots.prefix.size()) != S.prefix_len())
    throw std::invalid_argument("thm3': lottery prefix length must match the scenario prefix");
  for (int t = 1; t <= S.prefix_len() + 1; ++t) lots.at(t).validate(S.L().dims());
  TheoremReport rep;
  rep.theorem = "thm3prime";

  std::vector<PropertyReport> failures;
  PropertyReport qsm = check_objective_quasi_supermodular(*S.objective, S.tol);
  if (!qsm.holds) failures.push_back(std::move(qsm));
  PropertyReport scd = check_single_crossing_differences(*S.objective, false, S.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  {
    const DiffSet D = DiffSet::of(S.L());
    for (int t = 1; t <= S.prefix_len() + 1; ++t) {
      std::vector<PropertyReport> per;
      lottery_cost_failures(lots.at(t), D, /*need_full_monotone=*/true, S.tol, per);
      for (PropertyReport& r : per) {
        r.detail += t <= S.prefix_len() ? " (period " + std::to_string(t) + ")" : " (tail)";
        failures.push_back(std::move(r));
      }
    }
  }
  {
    const ParamPoset& P = S.poset();
    bool ok = P.leq(S.theta_initial, S.theta_target);
    for (int t = 1; t <= S.prefix_len() + 1 && ok; ++t)
      ok = P.leq(S.theta_initial, S.theta_at(t)) && P.leq(S.theta_at(t), S.theta_target);
    if (!ok) {
      PropertyReport r;
      r.property = "theta_path_bounds";
      r.holds = false;
      r.detail = "parameter path must stay within [theta_initial, theta_target]";
      failures.push_back(std::move(r));
    }
  }
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);
  rep.note("period states are independent across periods; period payoffs are exact expectations");

  const GridLattice& L = S.L();
  const int x0 = resolve_x0(S);
  const int bar = x_bar ? *x_bar : longrun_bar(S, x0).x_bar;
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_bar", L.coords(bar));

  const PeriodTables T = build_expected_tables(S, lots);
  DynamicSolution sol = dp_solve(T, x0);
  Path sandwiched = sandwich_transform(T, L, x0, sol.path, x0, bar);

  const double scale = std::max(1.0, std::fabs(sol.path.value));
  const bool value_ok = std::fabs(sandwiched.value - sol.path.value) <= S.value_tol * scale;
  bool bounds_ok = true;
  for (int x : sandwiched.points)
    if (!L.leq(x0, x) || !L.leq(x, bar)) bounds_ok = false;

  if (!value_ok || !bounds_ok) {
    rep.status = CheckStatus::Violated;
    rep.detail = !value_ok ? "sandwich transform lost expected value"
                           : "sandwiched path escapes [x_initial, x_bar]";
    return rep;
  }
  rep.detail = "sandwiched path is optimal for the expected objective and stays in bounds";
  return rep;
}

}  // namespace mcs
