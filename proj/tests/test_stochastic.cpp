#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mcs/harness.hpp"
#include "mcs/stochastic.hpp"

using namespace mcs;

namespace {

StaticProblem base_problem(LatticePtr L, PosetPtr P) {
  StaticProblem prob;
  prob.lattice = L;
  prob.objective = std::make_shared<const Objective>(Objective::tabulate(
      L, P, [](const Vec& x, int t) { return x[0] * x[1] + t * (x[0] + x[1]); }));
  prob.cost = CostFunction::zero(2);
  prob.theta_initial = 0;
  prob.theta_new = P->size() - 1;
  return prob;
}

}  // namespace

TEST_CASE("expected objective: degenerate lottery with identity utility equals G") {
  auto L = oracle::grid({{0, 1, 2}, {0, 1}});
  auto P = oracle::chain(2);
  StaticProblem prob = base_problem(L, P);
  CostFunction C = CostFunction::separable({Cost1d::quadratic(0.5), Cost1d::fixed(0.3)});
  CostLottery lot;
  lot.probs = {1.0};
  lot.costs = {C};
  lot.utility = Utility::linear();
  const int x0 = L->find_coords({0, 0});
  for (int i = 0; i < L->size(); ++i) {
    const double g = (*prob.objective)(i, 1) - C(vec_sub(L->coords(i), L->coords(x0)));
    CHECK(expected_objective(prob, lot, i, 1, x0) == g);
  }
}

TEST_CASE("two equiprobable quadratic costs average to the midpoint coefficient") {
  auto L = oracle::grid({{0, 1, 2}, {0, 1}});
  auto P = oracle::chain(2);
  StaticProblem prob = base_problem(L, P);
  CostLottery lot;
  lot.probs = {0.5, 0.5};
  lot.costs = {CostFunction::separable({Cost1d::quadratic(1), Cost1d::quadratic(1)}),
               CostFunction::separable({Cost1d::quadratic(3), Cost1d::quadratic(3)})};
  lot.utility = Utility::linear();
  CostFunction mid = CostFunction::separable({Cost1d::quadratic(2), Cost1d::quadratic(2)});
  const int x0 = L->find_coords({0, 0});
  for (int i = 0; i < L->size(); ++i) {
    const double expect = (*prob.objective)(i, 1) - mid(vec_sub(L->coords(i), L->coords(x0)));
    CHECK(expected_objective(prob, lot, i, 1, x0) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("concave utility matches an independent summation") {
  auto L = oracle::grid({{0, 1, 2}, {0, 1}});
  auto P = oracle::chain(2);
  StaticProblem prob = base_problem(L, P);
  CostLottery lot;
  lot.probs = {0.3, 0.7};
  lot.costs = {CostFunction::separable({Cost1d::fixed(0.5), Cost1d::fixed(0.5)}),
               CostFunction::separable({Cost1d::quadratic(0.8), Cost1d::quadratic(0.8)})};
  lot.utility = Utility::cara(0.2);
  const int x0 = L->find_coords({0, 0});
  auto u = [](double v) { return (1.0 - std::exp(-0.2 * v)) / 0.2; };
  for (int i = 0; i < L->size(); ++i) {
    double direct = 0;
    for (int s = 0; s < 2; ++s)
      direct += lot.probs[s] *
                u((*prob.objective)(i, 1) - lot.costs[s](vec_sub(L->coords(i), L->coords(x0))));
    CHECK(expected_objective(prob, lot, i, 1, x0) == direct);
  }
}

TEST_CASE("an infeasible positive-probability state makes the point infeasible") {
  auto L = oracle::grid({{0, 1}, {0, 1}});
  auto P = oracle::chain(2);
  StaticProblem prob = base_problem(L, P);
  CostLottery lot;
  lot.probs = {0.5, 0.5};
  lot.costs = {CostFunction::zero(2),
               CostFunction::separable({Cost1d::box_quad(1.0, 0, 0), Cost1d::zero()})};
  lot.utility = Utility::linear();
  const int x0 = L->find_coords({0, 0});
  CHECK(expected_objective(prob, lot, L->find_coords({1, 0}), 1, x0) == -kInf);
  CHECK(expected_objective(prob, lot, L->find_coords({0, 1}), 1, x0) > -kInf);
}

TEST_CASE("degenerate lottery: primed verdicts equal the deterministic ones") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    GenProfile profile;
    profile.cost = CostFamily::SeparableDipped;
    Instance inst = generate(rng.next(), profile);
    CostLottery lot;
    lot.probs = {1.0};
    lot.costs = {inst.problem.cost};
    lot.utility = Utility::linear();
    TheoremReport prime = theorem1_prime_check(inst.problem, lot);
    SelectResult plain = theorem1_select(inst.problem);
    REQUIRE(prime.holds());
    REQUIRE(plain.status == CheckStatus::Holds);
    // Same selection under an identity utility.
    Vec hat;
    for (const auto& [name, p] : prime.points)
      if (name == "x_hat") hat = p;
    CHECK(hat == inst.problem.L().coords(plain.x_hat));
  }
}

TEST_CASE("ordinal invariance: any strictly increasing utility leaves the argmax unchanged") {
  Rng rng(107);
  auto L = oracle::grid({{0, 1, 2}, {0, 2}});
  auto P = oracle::chain(2);
  StaticProblem prob = base_problem(L, P);
  prob.cost = CostFunction::separable({Cost1d::quadratic(0.6), Cost1d::quadratic(0.6)});
  CostLottery lot;
  lot.probs = {1.0};
  lot.costs = {prob.cost};
  const int x0 = resolve_initial_choice(prob);
  for (Utility u : {Utility::linear(), Utility::cara(0.15), Utility::piecewise(2.0, 0.5, 1.0)}) {
    lot.utility = u;
    ArgmaxSet am = argmax_over(L->all_ids(),
                               [&](int i) { return expected_objective(prob, lot, i, 1, x0); });
    ArgmaxSet plain = argmax_over(L->all_ids(), [&](int i) { return prob.G(i, x0); });
    CHECK(am.points == plain.points);
  }
  (void)rng;
}

TEST_CASE("theorem 1': risk-averse utility and mixed fixed/quadratic states on a 2-d factor model") {
  auto L = oracle::grid({{0, 1, 2}, {0, 1, 2}});
  auto P = oracle::chain(2);
  StaticProblem prob;
  prob.lattice = L;
  prob.objective = std::make_shared<const Objective>(Objective::tabulate(
      L, P, [](const Vec& x, int t) {
        return 2.0 * std::sqrt((x[0] + 0.5) * (x[1] + 0.5)) + 0.6 * t * (x[0] + x[1]);
      }));
  prob.cost = CostFunction::zero(2);
  prob.theta_initial = 0;
  prob.theta_new = 1;
  CostLottery lot;
  lot.probs = {0.4, 0.6};
  lot.costs = {CostFunction::separable({Cost1d::fixed(0.4), Cost1d::fixed(0.4)}),
               CostFunction::separable({Cost1d::quadratic(0.7), Cost1d::quadratic(0.7)})};
  lot.utility = Utility::cara(0.3);
  TheoremReport rep = theorem1_prime_check(prob, lot);
  CHECK(rep.holds());
}

TEST_CASE("theorem-prime oracles over generated lotteries") {
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    GenProfile profile;
    profile.objective = trial % 2 ? ObjectiveFamily::LogDemand : ObjectiveFamily::SupermodularLinear;
    profile.cost = CostFamily::SeparableDipped;
    Instance inst = generate(rng.next(), profile);
    Rng local(rng.next());
    const DiffSet D = DiffSet::of(inst.problem.L());

    CostLottery weak = generate_lottery(local, inst.problem.L().dims(), D, false);
    REQUIRE(theorem1_prime_check(inst.problem, weak).holds());

    CostLottery strong = generate_lottery(local, inst.problem.L().dims(), D, true);
    REQUIRE(theorem2_prime_check(inst.problem, strong).holds());
  }
}

TEST_CASE("theorem 3': two-state i.i.d. cost lottery with a stationary target") {
  auto L = oracle::grid({{1.0, 1.5, 2.0, 2.5, 3.0}});
  auto P = oracle::chain(2);
  DynamicScenario S;
  S.lattice = L;
  const Vec c = {0.5, 1.2};
  S.objective = std::make_shared<const Objective>(Objective::tabulate(
      L, P, [&](const Vec& x, int t) { return (x[0] - c[t]) * (5.0 - x[0]); }));
  S.theta_initial = 0;
  S.theta_target = 1;
  S.theta_tail = 1;
  S.cost_tail = CostFunction::zero(1);  // replaced by the lottery path
  S.delta = 0.9;
  S.horizon = HorizonSpec::infinite(40);

  LotteryPath lots;
  lots.tail.probs = {0.5, 0.5};
  lots.tail.costs = {CostFunction::separable({Cost1d::quadratic(0.6)}),
                     CostFunction::separable({Cost1d::fixed(0.5)})};
  lots.tail.utility = Utility::cara(0.1);
  TheoremReport rep = theorem3_prime_check(S, lots);
  CHECK(rep.holds());
}

TEST_CASE("theorem 3' oracle over generated dynamic lotteries") {
  Rng rng(113);
  for (int trial = 0; trial < 12; ++trial) {
    GenProfile profile;
    profile.cost = CostFamily::SeparableDipped;
    profile.path = ThetaPathShape::Caged;
    profile.max_prefix = 3;
    Instance inst = generate(rng.next(), profile);
    Rng local(rng.next());
    const DiffSet D = DiffSet::of(inst.problem.L());
    LotteryPath lots;
    for (int t = 0; t < inst.dynamic->prefix_len(); ++t)
      lots.prefix.push_back(generate_lottery(local, inst.problem.L().dims(), D, true));
    lots.tail = generate_lottery(local, inst.problem.L().dims(), D, true);
    TheoremReport rep = theorem3_prime_check(*inst.dynamic, lots);
    REQUIRE(rep.holds());
  }
}

TEST_CASE("lottery validation") {
  CostLottery lot;
  lot.probs = {0.6, 0.3};  // sums to 0.9
  lot.costs = {CostFunction::zero(1), CostFunction::zero(1)};
  CHECK_THROWS_AS(lot.validate(1), std::invalid_argument);
  lot.probs = {0.6, 0.4};
  CHECK_NOTHROW(lot.validate(1));
  CHECK_THROWS_AS(Utility::cara(0.0), std::invalid_argument);
}
