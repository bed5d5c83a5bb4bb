#include "mcs/static_solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcs {

std::vector<int> StaticProblem::initial_ids() const {
  return initial_set.empty() ? lattice->all_ids() : initial_set;
}

std::vector<int> StaticProblem::new_ids() const {
  return new_set.empty() ? lattice->all_ids() : new_set;
}

double StaticProblem::G(int x, int x_init) const {
  const double c = cost(vec_sub(L().coords(x), L().coords(x_init)));
  if (!(c < kInf)) return -kInf;
  return (*objective)(x, theta_new) - c;
}

bool ArgmaxSet::contains(int id) const {
  return std::binary_search(points.begin(), points.end(), id);
}

ArgmaxSet argmax_over(std::span<const int> members, const MemberFn& f) {
  ArgmaxSet out;
  for (int id : members) {
    const double v = f(id);
    if (v == -kInf) continue;
    if (v > out.value) {
      out.value = v;
      out.points.assign(1, id);
    } else if (v == out.value) {
      out.points.push_back(id);
    }
  }
  if (out.points.empty())
    throw std::runtime_error("argmax: every choice is infeasible (all values are -inf)");
  return out;
}

int resolve_initial_choice(const StaticProblem& P) {
  std::vector<int> ids = P.initial_ids();
  ArgmaxSet fmax = argmax_over(ids, [&](int i) { return (*P.objective)(i, P.theta_initial); });
  if (P.x_initial) {
    if (!fmax.contains(*P.x_initial))
      throw std::invalid_argument("static problem: supplied initial choice " +
                                  seq_str(P.L().coords(*P.x_initial)) +
                                  " does not maximize F at the initial parameter");
    return *P.x_initial;
  }
  return fmax.points.front();
}

std::vector<PropertyReport> ordinal_hypotheses(const StaticProblem& P) {
  std::vector<PropertyReport> failures;
  PropertyReport qsm = check_objective_quasi_supermodular(*P.objective, P.tol);
  if (!qsm.holds) failures.push_back(std::move(qsm));
  PropertyReport scd = check_single_crossing_differences(*P.objective, false, P.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  if (!P.poset().leq(P.theta_initial, P.theta_new)) {
    PropertyReport r;
    r.property = "theta_order";
    r.holds = false;
    r.detail = "theta_initial " + P.poset().label(P.theta_initial) +
               " is not below theta_new " + P.poset().label(P.theta_new);
    failures.push_back(std::move(r));
  }
  return failures;
}

namespace {

SelectResult run_basic_selection(const StaticProblem& P, std::vector<PropertyReport> failures,
                                 bool star, bool skip) {
  SelectResult res;
  if (!skip && !failures.empty()) {
    res.status = CheckStatus::HypothesisRejected;
    res.hypothesis_failures = std::move(failures);
    return res;
  }
  res.hypothesis_failures = std::move(failures);

  const GridLattice& L = P.L();
  res.x_initial = resolve_initial_choice(P);
  const std::vector<int> ids = P.new_ids();
  res.gmax = argmax_over(ids, [&](int i) { return P.G(i, res.x_initial); });
  res.x_prime = res.gmax.points.front();
  res.x_hat = L.join(res.x_initial, res.x_prime);
  res.x_hat_in_argmax = res.gmax.contains(res.x_hat);
  res.x_hat_geq_initial = L.leq(res.x_initial, res.x_hat);

  if (star) {
    bool companion = true;
    const std::vector<int> init_ids = P.initial_ids();
    ArgmaxSet fmax =
        argmax_over(init_ids, [&](int i) { return (*P.objective)(i, P.theta_initial); });
    for (int xp : res.gmax.points)
      if (!fmax.contains(L.meet(res.x_initial, xp))) {
        companion = false;
        break;
      }
    res.companion_meet_ok = companion;
  }

  const bool ok = res.x_hat_in_argmax && res.x_hat_geq_initial &&
                  (!res.companion_meet_ok || *res.companion_meet_ok);
  if (!ok) {
    if (!skip && res.hypothesis_failures.empty())
      throw std::logic_error(
          "theorem selection failed although its hypotheses were verified; this is an engine bug");
    res.status = CheckStatus::Violated;
  }
  return res;
}

}  // namespace

SelectResult theorem1_select(const StaticProblem& P, bool skip_hypotheses) {
  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  PropertyReport mm = check_cost_minimally_monotone(P.cost, D, P.tol);
  if (!mm.holds) failures.push_back(std::move(mm));
  return run_basic_selection(P, std::move(failures), /*star=*/false, skip_hypotheses);
}

SelectResult theorem1_star_select(const StaticProblem& P, bool skip_hypotheses) {
  std::vector<PropertyReport> failures = ordinal_hypotheses(P);
  const DiffSet D = DiffSet::of(P.L());
  PropertyReport mm = check_cost_minimally_monotone(P.cost, D, P.tol);
  if (!mm.holds) failures.push_back(std::move(mm));

  const std::vector<int> lo = P.initial_ids();
  const std::vector<int> hi = P.new_ids();
  for (auto [name, ids] : {std::pair{"initial", &lo}, std::pair{"new", &hi}}) {
    if (auto bad = P.L().sublattice_violation(*ids)) {
      PropertyReport r;
      r.property = std::string("constraint_set_sublattice_") + name;
      r.holds = false;
      r.detail = "meet or join of " + seq_str(P.L().coords(bad->first)) + " and " +
                 seq_str(P.L().coords(bad->second)) + " escapes the set";
      failures.push_back(std::move(r));
    }
  }
  if (!strong_set_geq(P.L(), hi, lo)) {
    PropertyReport r;
    r.property = "constraint_set_strong_order";
    r.holds = false;
    r.detail = "new constraint set is not above the initial set in the strong set order";
    failures.push_back(std::move(r));
  }
  return run_basic_selection(P, std::move(failures), /*star=*/true, skip_hypotheses);
}

TheoremReport prop1_forall_check(const StaticProblem& P, Prop1Mode mode, bool skip_hypotheses) {
  TheoremReport rep;
  rep.theorem = mode == Prop1Mode::StrictSingleCrossing ? "prop1a" : "prop1b";

  std::vector<PropertyReport> failures;
  PropertyReport qsm = check_objective_quasi_supermodular(*P.objective, P.tol);
  if (!qsm.holds) failures.push_back(std::move(qsm));
  const DiffSet D = DiffSet::of(P.L());
  if (mode == Prop1Mode::StrictSingleCrossing) {
    PropertyReport scd = check_single_crossing_differences(*P.objective, true, P.tol);
    if (!scd.holds) failures.push_back(std::move(scd));
    PropertyReport mm = check_cost_minimally_monotone(P.cost, D, P.tol);
    if (!mm.holds) failures.push_back(std::move(mm));
  } else {
    PropertyReport scd = check_single_crossing_differences(*P.objective, false, P.tol);
    if (!scd.holds) failures.push_back(std::move(scd));
    PropertyReport mm = check_cost_strictly_minimally_monotone(P.cost, D, P.tol);
    if (!mm.holds) failures.push_back(std::move(mm));
  }
  if (!P.poset().lt(P.theta_initial, P.theta_new)) {
    PropertyReport r;
    r.property = "theta_order_strict";
    r.holds = false;
    r.detail = "theta_initial must be strictly below theta_new";
    failures.push_back(std::move(r));
  }
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const int x0 = resolve_initial_choice(P);
  rep.add_point("x_initial", P.L().coords(x0));
  ArgmaxSet gmax = argmax_over(P.new_ids(), [&](int i) { return P.G(i, x0); });
  for (int id : gmax.points)
    if (!P.L().leq(x0, id)) {
      rep.status = CheckStatus::Violated;
      rep.add_point("violating_maximizer", P.L().coords(id));
      rep.detail = "maximizer " + seq_str(P.L().coords(id)) + " is not above the initial choice";
      return rep;
    }
  rep.detail = "all " + std::to_string(gmax.points.size()) + " maximizers lie above the initial choice";
  return rep;
}

}  // namespace mcs
