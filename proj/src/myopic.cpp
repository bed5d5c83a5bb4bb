#include "mcs/myopic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcs {

namespace {

ArgmaxSet period_argmax(const DynamicScenario& S, int t, int prev) {
  const GridLattice& L = S.L();
  const int theta = S.theta_at(t);
  const CostFunction& C = S.cost_at(t);
  return argmax_over(L.all_ids(), [&](int i) {
    const double c = C(vec_sub(L.coords(i), L.coords(prev)));
    if (!(c < kInf)) return -kInf;
    return (*S.objective)(i, theta) - c;
  });
}

}  // namespace

EquilibriumSequence equilibrium_sequence(const DynamicScenario& S, EquilibriumMode mode,
                                         std::optional<int> x_bar, bool skip_hypotheses) {
  S.validate();
  EquilibriumSequence eq;

  std::vector<PropertyReport> failures;
  PropertyReport qsm = check_objective_quasi_supermodular(*S.objective, S.tol);
  if (!qsm.holds) failures.push_back(std::move(qsm));
  PropertyReport scd = check_single_crossing_differences(*S.objective, false, S.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  {
    const DiffSet D = DiffSet::of(S.L());
    for (int t = 1; t <= S.prefix_len() + 1; ++t) {
      PropertyReport mono = check_cost_monotone(S.cost_at(t), D, S.tol);
      if (!mono.holds) {
        mono.detail += t <= S.prefix_len() ? " (period " + std::to_string(t) + ")" : " (tail)";
        failures.push_back(std::move(mono));
      }
    }
  }
  {
    const ParamPoset& P = S.poset();
    bool ok = P.leq(S.theta_initial, S.theta_target);
    for (int t = 1; t <= S.prefix_len() + 1 && ok; ++t)
      ok = P.leq(S.theta_initial, S.theta_at(t)) && P.leq(S.theta_at(t), S.theta_target);
    if (mode == EquilibriumMode::Monotone)
      for (int t = 1; t <= S.prefix_len() && ok; ++t)
        ok = P.leq(S.theta_at(t), S.theta_at(t + 1));
    if (!ok) {
      PropertyReport r;
      r.property = mode == EquilibriumMode::Monotone ? "theta_path_increasing" : "theta_path_bounds";
      r.holds = false;
      r.detail = mode == EquilibriumMode::Monotone
                     ? "parameter path must increase within [theta_initial, theta_target]"
                     : "parameter path must stay within [theta_initial, theta_target]";
      failures.push_back(std::move(r));
    }
  }
  if (!skip_hypotheses && !failures.empty()) {
    eq.status = CheckStatus::HypothesisRejected;
    eq.hypothesis_failures = std::move(failures);
    return eq;
  }
  eq.hypothesis_failures = std::move(failures);

  const GridLattice& L = S.L();
  eq.x_initial = resolve_x0(S);
  eq.x_bar = x_bar ? *x_bar : longrun_bar(S, eq.x_initial).x_bar;
  if (!L.leq(eq.x_initial, eq.x_bar))
    throw std::invalid_argument("equilibrium: the long-run point must lie above the initial choice");

  const int H = S.horizon.periods;
  bool certified = true, bounded = true;
  int prev = eq.x_initial;
  for (int t = 1; t <= H; ++t) {
    if (eq.continuation >= 0) {
      eq.points.push_back(eq.continuation);
      eq.argmax_values.push_back(eq.argmax_values.back());
      continue;
    }
    ArgmaxSet gmax = period_argmax(S, t, prev);
    const int base = L.meet(eq.x_bar, L.join(eq.x_initial, gmax.points.front()));
    certified = certified && gmax.contains(base);
    int sel = base;
    if (mode == EquilibriumMode::Monotone) {
      sel = L.join(prev, base);
      certified = certified && gmax.contains(sel);
    }
    if (mode == EquilibriumMode::Caged)
      bounded = bounded && L.leq(eq.x_initial, sel) && L.leq(sel, eq.x_bar);
    else
      bounded = bounded && L.leq(prev, sel) && L.leq(sel, eq.x_bar);
    eq.points.push_back(sel);
    eq.argmax_values.push_back(gmax.value);
    if (t > S.prefix_len() && sel == prev) eq.continuation = sel;
    prev = sel;
  }

  eq.bounds_ok = bounded;
  if (!certified || !bounded) {
    if (!skip_hypotheses && eq.hypothesis_failures.empty())
      throw std::logic_error(
          "equilibrium selection failed although its hypotheses were verified; this is an engine bug");
    eq.status = CheckStatus::Violated;
    eq.detail = !certified ? "a constructed selection is not a per-period maximizer"
                           : "the constructed sequence escapes its bounds";
  }
  return eq;
}

TheoremReport theorem6_check(const DynamicScenario& S, const EquilibriumSequence& eq,
                             const Path& forward, bool skip_hypotheses) {
  S.validate();
  TheoremReport rep;
  rep.theorem = "thm6";

  std::vector<PropertyReport> failures;
  PropertyReport spm = check_objective_supermodular(*S.objective, S.tol);
  if (!spm.holds) failures.push_back(std::move(spm));
  PropertyReport scd = check_single_crossing_differences(*S.objective, false, S.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  {
    const DiffSet D = DiffSet::of(S.L());
    for (int t = 1; t <= S.prefix_len() + 1; ++t) {
      const CostFunction& C = S.cost_at(t);
      const std::string tag = t <= S.prefix_len() ? " (period " + std::to_string(t) + ")" : " (tail)";
      for (PropertyReport r : {check_cost_monotone(C, D, S.tol), check_cost_separable(C, D),
                               check_cost_convex_per_dim(C, D, S.tol)})
        if (!r.holds) {
          r.detail += tag;
          failures.push_back(std::move(r));
        }
    }
  }
  {
    const ParamPoset& P = S.poset();
    bool ok = P.leq(S.theta_initial, S.theta_target);
    for (int t = 1; t <= S.prefix_len() + 1 && ok; ++t)
      ok = P.leq(S.theta_initial, S.theta_at(t)) && P.leq(S.theta_at(t), S.theta_target);
    for (int t = 1; t <= S.prefix_len() && ok; ++t) ok = P.leq(S.theta_at(t), S.theta_at(t + 1));
    if (!ok) {
      PropertyReport r;
      r.property = "theta_path_increasing";
      r.holds = false;
      r.detail = "parameter path must increase within [theta_initial, theta_target]";
      failures.push_back(std::move(r));
    }
  }
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);
  rep.note("equi-BCS holds automatically on a finite lattice");

  const GridLattice& L = S.L();
  const int x0 = resolve_x0(S);
  const int bar = eq.x_bar;
  if (eq.continuation < 0)
    throw std::runtime_error("thm6: equilibrium sequence did not absorb within the horizon");
  if (forward.continuation < 0)
    throw std::runtime_error("thm6: forward-looking path did not absorb");
  for (std::size_t i = 1; i < eq.points.size(); ++i)
    if (!L.leq(eq.points[i - 1], eq.points[i]))
      throw std::invalid_argument("thm6: the equilibrium sequence must be increasing");
  for (int x : forward.points)
    if (!L.leq(x0, x) || !L.leq(x, bar))
      throw std::invalid_argument("thm6: the forward-looking path must lie inside [x_initial, x_bar]");

  auto at = [&](const std::vector<int>& pts, int cont, std::size_t t) {
    return t < pts.size() ? pts[t] : cont;
  };
  const std::size_t len = std::max(eq.points.size(), forward.points.size());
  Path joined;
  joined.points.reserve(len);
  bool dominance = true, bounds = true;
  for (std::size_t t = 0; t < len; ++t) {
    const int e = at(eq.points, eq.continuation, t);
    const int f = at(forward.points, forward.continuation, t);
    const int z = L.join(e, f);
    dominance = dominance && L.leq(e, z);
    bounds = bounds && L.leq(z, bar);
    joined.points.push_back(z);
  }
  joined.continuation = joined.points.back();
  const PeriodTables T = build_tables(S);
  joined.value = path_value(T, x0, joined.points);
  rep.paths.emplace_back("equilibrium", [&] {
    std::vector<Vec> v;
    for (int id : eq.points) v.push_back(L.coords(id));
    return v;
  }());
  rep.paths.emplace_back("joined", [&] {
    std::vector<Vec> v;
    for (int id : joined.points) v.push_back(L.coords(id));
    return v;
  }());

  const double scale = std::max(1.0, std::fabs(forward.value));
  const bool value_ok = std::fabs(joined.value - forward.value) <= S.value_tol * scale;
  if (!value_ok || !dominance || !bounds) {
    rep.status = CheckStatus::Violated;
    rep.detail = !value_ok ? "joined path lost value: " + std::to_string(forward.value) + " -> " +
                                 std::to_string(joined.value)
                           : "joined path violates the dominance bounds";
    return rep;
  }
  rep.detail = "joined path is optimal and dominates the equilibrium sequence below x_bar";
  return rep;
}

TheoremReport theorem6_check(const DynamicScenario& S, bool skip_hypotheses) {
  EquilibriumSequence eq =
      equilibrium_sequence(S, EquilibriumMode::Monotone, std::nullopt, skip_hypotheses);
  if (eq.status == CheckStatus::HypothesisRejected) {
    TheoremReport rep;
    rep.theorem = "thm6";
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = eq.hypothesis_failures;
    return rep;
  }
  const int x0 = resolve_x0(S);
  const PeriodTables T = build_tables(S);
  DynamicSolution sol = dp_solve(T, x0);
  Path fwd = sandwich_transform(T, S.L(), x0, sol.path, x0, eq.x_bar);
  return theorem6_check(S, eq, fwd, skip_hypotheses);
}

TheoremReport prop2_two_stage_check(const StaticProblem& P, const CostFunction& C2,
                                    bool skip_hypotheses) {
  TheoremReport rep;
  rep.theorem = "prop2";

  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  for (auto [tag, C] : {std::pair{"stage 1", &P.cost}, std::pair{"stage 2", &C2}}) {
    PropertyReport mono = check_cost_monotone(*C, D, P.tol);
    if (!mono.holds) {
      mono.detail += std::string(" (") + tag + ")";
      failures.push_back(std::move(mono));
    }
  }
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  const int x0 = resolve_initial_choice(P);
  const int bar = longrun_select(P, /*skip_hypotheses=*/true).x_bar;

  ArgmaxSet g1 = argmax_over(P.new_ids(), [&](int i) { return P.G(i, x0); });
  const int x1 = L.meet(bar, L.join(x0, g1.points.front()));
  ArgmaxSet g2 = argmax_over(P.new_ids(), [&](int i) {
    const double c = C2(vec_sub(L.coords(i), L.coords(x1)));
    if (!(c < kInf)) return -kInf;
    return (*P.objective)(i, P.theta_new) - c;
  });
  const int x2 = L.join(x1, L.meet(bar, L.join(x0, g2.points.front())));

  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_1", L.coords(x1));
  rep.add_point("x_2", L.coords(x2));
  rep.add_point("x_bar", L.coords(bar));

  const bool certified = g1.contains(x1) && g2.contains(x2);
  const bool chain = L.leq(x0, x1) && L.leq(x1, x2) && L.leq(x2, bar);
  if (!certified || !chain) {
    if (!skip_hypotheses && rep.hypothesis_failures.empty())
      throw std::logic_error(
          "two-stage selection failed although its hypotheses were verified; this is an engine bug");
    rep.status = CheckStatus::Violated;
    rep.detail = !certified ? "a constructed stage choice is not a maximizer"
                            : "the stage choices do not form an increasing chain";
    return rep;
  }
  rep.detail = "x_initial <= x_1 <= x_2 <= x_bar with both stages optimal";
  return rep;
}

}  // namespace mcs
