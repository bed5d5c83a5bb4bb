#include <doctest.h>

#include "helpers.hpp"
#include "mcs/harness.hpp"
#include "mcs/myopic.hpp"

using namespace mcs;

namespace {

DynamicScenario staircase_pricing(CostFunction cost, std::vector<int> prefix) {
  auto L = oracle::grid({{1.0, 1.5, 2.0, 2.5, 3.0, 3.5}});
  auto P = oracle::chain(3);
  const Vec c = {0.5, 1.0, 1.5};
  DynamicScenario S;
  S.lattice = L;
  S.objective = std::make_shared<const Objective>(Objective::tabulate(
      L, P, [&](const Vec& x, int t) { return (x[0] - c[t]) * (6.0 - x[0]); }));
  S.theta_initial = 0;
  S.theta_target = 2;
  S.theta_prefix = prefix;
  S.theta_tail = 2;
  for (std::size_t i = 0; i < prefix.size(); ++i) S.cost_prefix.push_back(cost);
  S.cost_tail = std::move(cost);
  S.delta = 0.9;
  S.horizon = HorizonSpec::infinite(40);
  return S;
}

}  // namespace

TEST_CASE("per-period certificates: each entry maximizes its period payoff") {
  DynamicScenario S =
      staircase_pricing(CostFunction::separable({Cost1d::quadratic(1.2)}), {0, 1, 1});
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Monotone);
  REQUIRE(eq.status == CheckStatus::Holds);
  const GridLattice& L = S.L();
  int prev = eq.x_initial;
  for (std::size_t t = 0; t < eq.points.size(); ++t) {
    auto [best, points] = oracle::scan_argmax(L.size(), [&](int i) {
      const double c = S.cost_at(static_cast<int>(t) + 1)(
          vec_sub(L.coords(i), L.coords(prev)));
      return c < kInf ? (*S.objective)(i, S.theta_at(static_cast<int>(t) + 1)) - c : -kInf;
    });
    CHECK(eq.argmax_values[t] == best);
    bool found = false;
    for (int id : points) found = found || id == eq.points[t];
    CHECK(found);
    prev = eq.points[t];
  }
}

TEST_CASE("increasing parameter staircase yields a weakly increasing price sequence") {
  DynamicScenario S =
      staircase_pricing(CostFunction::separable({Cost1d::quadratic(1.2)}), {0, 0, 1, 1});
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Monotone);
  REQUIRE(eq.status == CheckStatus::Holds);
  CHECK(eq.bounds_ok);
  for (std::size_t t = 1; t < eq.points.size(); ++t)
    CHECK(S.L().coords(eq.points[t - 1])[0] <= S.L().coords(eq.points[t])[0]);
}

TEST_CASE("zero cost: the equilibrium tracks the per-period frictionless optimum") {
  DynamicScenario S = staircase_pricing(CostFunction::zero(1), {0, 1});
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Caged);
  REQUIRE(eq.status == CheckStatus::Holds);
  const GridLattice& L = S.L();
  int prev = eq.x_initial;
  for (std::size_t t = 0; t < eq.points.size(); ++t) {
    ArgmaxSet fmax = argmax_over(
        L.all_ids(), [&](int i) { return (*S.objective)(i, S.theta_at(static_cast<int>(t) + 1)); });
    CHECK(fmax.contains(eq.points[t]));
    prev = eq.points[t];
  }
}

TEST_CASE("two-stage reduction reproduces the medium-run chain x2 >= x1 >= x_initial") {
  auto L = oracle::grid({{0, 1, 2, 3, 4}});
  auto P = oracle::chain(2);
  StaticProblem prob;
  prob.lattice = L;
  prob.objective = std::make_shared<const Objective>(Objective::tabulate(
      L, P, [](const Vec& x, int t) { return -(x[0] - 3.0 * t) * (x[0] - 3.0 * t); }));
  prob.cost = CostFunction::separable({Cost1d::quadratic(1.5)});  // stage 1: sluggish
  prob.theta_initial = 0;
  prob.theta_new = 1;
  CostFunction stage2 = CostFunction::separable({Cost1d::quadratic(0.2)});
  TheoremReport rep = prop2_two_stage_check(prob, stage2);
  REQUIRE(rep.holds());
  // The chain is strict here: the cheap second stage moves further.
  Vec x1, x2;
  for (const auto& [name, p] : rep.points) {
    if (name == "x_1") x1 = p;
    if (name == "x_2") x2 = p;
  }
  CHECK(x1[0] >= 1);
  CHECK(x2[0] >= x1[0]);
}

TEST_CASE("short-lived theorem oracle: caged and monotone bullets") {
  Rng rng(97);
  for (int trial = 0; trial < 25; ++trial) {
    GenProfile profile;
    profile.objective = trial % 3 == 0   ? ObjectiveFamily::SupermodularLinear
                        : trial % 3 == 1 ? ObjectiveFamily::LogDemand
                                         : ObjectiveFamily::QuasiTransform;
    profile.cost = trial % 2 ? CostFamily::SeparableDipped : CostFamily::BoxConstraint;
    profile.path = ThetaPathShape::Caged;
    Instance caged = generate(rng.next(), profile);
    EquilibriumSequence eq = equilibrium_sequence(*caged.dynamic, EquilibriumMode::Caged);
    REQUIRE(eq.status == CheckStatus::Holds);
    CHECK(eq.bounds_ok);

    profile.path = ThetaPathShape::Increasing;
    Instance mono = generate(rng.next(), profile);
    EquilibriumSequence eq2 = equilibrium_sequence(*mono.dynamic, EquilibriumMode::Monotone);
    REQUIRE(eq2.status == CheckStatus::Holds);
    CHECK(eq2.bounds_ok);
  }
}

TEST_CASE("monotone mode rejects a non-increasing parameter path") {
  DynamicScenario S =
      staircase_pricing(CostFunction::separable({Cost1d::quadratic(1.0)}), {1, 0});
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Monotone);
  CHECK(eq.status == CheckStatus::HypothesisRejected);
  // The same path is fine for the caged bullet.
  EquilibriumSequence caged = equilibrium_sequence(S, EquilibriumMode::Caged);
  CHECK(caged.status == CheckStatus::Holds);
}

TEST_CASE("sluggishness: the forward-looking path dominates the myopic one") {
  DynamicScenario S = staircase_pricing(CostFunction::separable({Cost1d::quadratic(1.2)}), {});
  TheoremReport rep = theorem6_check(S);
  REQUIRE(rep.holds());

  // Solve both paths and compare them period by period.
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Monotone);
  const int x0 = resolve_x0(S);
  const PeriodTables T = build_tables(S);
  DynamicSolution sol = dp_solve(T, x0);
  Path fwd = sandwich_transform(T, S.L(), x0, sol.path, x0, eq.x_bar);
  const std::vector<int> f = fwd.reported(40);
  for (std::size_t t = 0; t < f.size() && t < eq.points.size(); ++t)
    CHECK(S.L().coords(eq.points[t])[0] <= S.L().coords(f[t])[0]);
}

TEST_CASE("zero cost: myopic and forward-looking paths coincide at the frictionless optimum") {
  DynamicScenario S = staircase_pricing(CostFunction::zero(1), {});
  TheoremReport rep = theorem6_check(S);
  REQUIRE(rep.holds());
  EquilibriumSequence eq = equilibrium_sequence(S, EquilibriumMode::Monotone);
  const int x0 = resolve_x0(S);
  DynamicSolution sol = solve_dynamic(S);
  ArgmaxSet fmax =
      argmax_over(S.L().all_ids(), [&](int i) { return (*S.objective)(i, S.theta_tail); });
  CHECK(fmax.contains(eq.points.front()));
  CHECK(fmax.contains(sol.path.points.front()));
  (void)x0;
}

TEST_CASE("non-convex cost fails the sluggishness gate") {
  DynamicScenario S = staircase_pricing(CostFunction::separable({Cost1d::fixed(0.4)}), {});
  TheoremReport rep = theorem6_check(S);
  CHECK(rep.status == CheckStatus::HypothesisRejected);
  bool convexity = false;
  for (const auto& f : rep.hypothesis_failures)
    convexity = convexity || f.property == "cost_convex_per_dim";
  CHECK(convexity);
  // Exploratory forced run is recorded as a diagnostic only: it may hold or
  // violate, but it must not throw.
  TheoremReport forced = theorem6_check(S, /*skip_hypotheses=*/true);
  CHECK((forced.status == CheckStatus::Holds || forced.status == CheckStatus::Violated));
}

TEST_CASE("sluggishness oracle on generated convex instances") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    GenProfile profile;
    profile.objective =
        trial % 2 ? ObjectiveFamily::SupermodularLinear : ObjectiveFamily::LogDemand;
    profile.cost = CostFamily::ConvexSeparable;
    profile.path = ThetaPathShape::Increasing;
    Instance inst = generate(rng.next(), profile);
    TheoremReport rep = theorem6_check(*inst.dynamic);
    REQUIRE(rep.holds());
  }
}
