#include "mcs/lechatelier.hpp"

#include <stdexcept>

namespace mcs {

LongRunSelection longrun_select(const StaticProblem& P, bool skip_hypotheses) {
  LongRunSelection sel;
  sel.hypothesis_failures = ordinal_hypotheses(P);
  if (!skip_hypotheses && !sel.hypothesis_failures.empty()) {
    sel.status = CheckStatus::HypothesisRejected;
    return sel;
  }
  const GridLattice& L = P.L();
  sel.x_initial = resolve_initial_choice(P);
  sel.fmax = argmax_over(P.new_ids(), [&](int i) { return (*P.objective)(i, P.theta_new); });

  // The argmax of a quasi-supermodular function is a sublattice, so the join
  // of all maximizers is the largest element whenever it is itself optimal.
  int top = sel.fmax.points.front();
  for (int id : sel.fmax.points) top = L.join(top, id);
  if (sel.fmax.contains(top)) {
    sel.x_bar = top;
    sel.is_largest = true;
  } else {
    sel.x_bar = L.join(sel.x_initial, sel.fmax.points.front());
    sel.is_largest = false;
  }
  if (!sel.fmax.contains(sel.x_bar) || !L.leq(sel.x_initial, sel.x_bar)) {
    if (!skip_hypotheses)
      throw std::logic_error(
          "long-run selection failed although its hypotheses were verified; this is an engine bug");
    sel.status = CheckStatus::Violated;
  }
  return sel;
}

LeChatelierResult theorem2_select(const StaticProblem& P, bool skip_hypotheses) {
  LeChatelierResult res;
  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  PropertyReport mono = check_cost_monotone(P.cost, D, P.tol);
  if (!mono.holds) failures.push_back(std::move(mono));
  if (!skip_hypotheses && !failures.empty()) {
    res.status = CheckStatus::HypothesisRejected;
    res.hypothesis_failures = std::move(failures);
    return res;
  }
  res.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  LongRunSelection lr = longrun_select(P, /*skip_hypotheses=*/true);
  res.x_initial = lr.x_initial;
  res.x_bar = lr.x_bar;
  res.bar_is_largest = lr.is_largest;
  res.fmax = lr.fmax;

  res.gmax = argmax_over(P.new_ids(), [&](int i) { return P.G(i, res.x_initial); });
  const int x_prime = L.join(res.x_initial, res.gmax.points.front());
  res.x_hat = L.meet(res.x_bar, x_prime);
  res.x_hat_in_argmax = res.gmax.contains(res.x_hat);
  res.sandwich = L.leq(res.x_initial, res.x_hat) && L.leq(res.x_hat, res.x_bar);

  res.universal_bound = true;
  if (res.bar_is_largest) {
    for (int id : res.gmax.points)
      if (!L.leq(id, res.x_bar)) {
        res.universal_bound = false;
        break;
      }
  }

  if (!res.x_hat_in_argmax || !res.sandwich || !res.universal_bound) {
    if (!skip_hypotheses && res.hypothesis_failures.empty())
      throw std::logic_error(
          "le Chatelier selection failed although its hypotheses were verified; this is an engine bug");
    res.status = CheckStatus::Violated;
  }
  return res;
}

TheoremReport prop3_forall_check(const StaticProblem& P, std::optional<int> x_bar,
                                 bool skip_hypotheses) {
  TheoremReport rep;
  rep.theorem = "prop3";
  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  PropertyReport sm = check_cost_strictly_monotone(P.cost, D, P.tol);
  if (!sm.holds) failures.push_back(std::move(sm));
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  const int x0 = resolve_initial_choice(P);
  int bar;
  if (x_bar) {
    bar = *x_bar;
    ArgmaxSet fmax = argmax_over(P.new_ids(), [&](int i) { return (*P.objective)(i, P.theta_new); });
    if (!fmax.contains(bar) || !L.leq(x0, bar))
      throw std::invalid_argument(
          "prop3: supplied long-run point is not a frictionless maximizer above the initial choice");
  } else {
    bar = longrun_select(P, /*skip_hypotheses=*/true).x_bar;
  }
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_bar", L.coords(bar));

  ArgmaxSet gmax = argmax_over(P.new_ids(), [&](int i) { return P.G(i, x0); });
  for (int id : gmax.points)
    if (!L.leq(x0, id) || !L.leq(id, bar)) {
      rep.status = CheckStatus::Violated;
      rep.add_point("violating_maximizer", L.coords(id));
      rep.detail = "maximizer " + seq_str(L.coords(id)) + " escapes [x_initial, x_bar]";
      return rep;
    }
  rep.detail =
      "all " + std::to_string(gmax.points.size()) + " maximizers lie inside [x_initial, x_bar]";
  return rep;
}

}  // namespace mcs
