#pragma once

#include "mcs/dynamic.hpp"
#include "mcs/myopic.hpp"

namespace mcs {

/// A fully verified problem produced by a model constructor: the released
/// problem passed its paper-mandated property profile.
struct BuiltModel {
  StaticProblem problem;
  std::optional<DynamicScenario> dynamic;
  std::vector<PropertyReport> certificates;
  std::vector<int> flipped_dims;  // axes negated relative to the natural model
  std::vector<std::string> notes;
};

// Negates the listed axes (reversing their order) and transforms the
// objective, cost, constraint sets and initial point consistently. Involutive.
StaticProblem flip_dimensions(const StaticProblem& P, const std::vector<int>& dims);

/// Monopoly pricing: profit (p - c) D(p, eta) on a price grid, with the
/// parameter chain (c up, eta down).
struct PricingSpec {
  Vec price_grid;
  std::string demand = "linear";  // "linear": D = intercept - eta p; "isoelastic": D = scale p^-eta
  double intercept = 10.0;
  double scale = 10.0;
  std::vector<double> marginal_costs;  // increasing
  std::vector<double> elasticities;    // decreasing, same length
  CostFunction adjustment = CostFunction::zero(1);
  double delta = 0.9;
  int horizon = 40;
};
BuiltModel build_pricing(const PricingSpec& spec);

/// Factor demand: profit f(k, l) - r k - w l over a (k, l) grid, wage chain
/// decreasing. Substitutes are handled by flipping the capital axis.
struct FactorDemandSpec {
  Vec capital_grid;
  Vec labor_grid;
  std::string technology = "cobb_douglas";  // or "ces"
  double scale = 1.0;
  double alpha = 0.4, beta = 0.6;  // Cobb-Douglas exponents
  double rho = 2.0;                // CES exponent (> 1 gives substitutes)
  double rental = 1.0;
  std::vector<double> wages;  // decreasing
  CostFunction adjustment = CostFunction::zero(2);
  bool substitutes = false;
};
BuiltModel build_factor_demand(const FactorDemandSpec& spec);

/// Labor supply: per-period utility w x - T(w x) - kappa(x) under a tax
/// schedule that flattens from rate_initial to rate_new.
struct LaborSupplySpec {
  Vec hours_grid;
  double wage = 1.0;
  double rate_initial = 0.5;
  double rate_new = 0.3;
  double exemption = 0.0;
  double disutility_scale = 0.3;
  double disutility_power = 2.0;
  CostFunction adjustment = CostFunction::zero(1);
  double delta = 0.9;
  int horizon = 40;
};
BuiltModel build_labor_supply(const LaborSupplySpec& spec);

/// Capital investment: profit p f(k, eta) - r k with f(k, eta) = eta k^alpha,
/// parameter chain (p, eta, -r) increasing. Lumpy adjustment supported.
struct InvestmentSpec {
  Vec capital_grid;
  double alpha = 0.5;
  std::vector<double> output_prices;  // increasing
  std::vector<double> productivity;   // increasing
  std::vector<double> rentals;        // decreasing
  CostFunction adjustment = CostFunction::zero(1);
  double delta = 0.9;
  int horizon = 40;
};
BuiltModel build_investment(const InvestmentSpec& spec);

/// Saving by wishful thinkers: joint choice of consumption and belief. The
/// belief set lives on negated-CDF coordinates so first-order stochastic
/// dominance is the engine's product order; the supplied beliefs are closed
/// under the FOSD meet and join automatically.
struct WishfulSpec {
  double wealth = 1.0;
  double interest = 0.1;
  int consumption_points = 6;
  Vec outcomes;                // income support, increasing
  std::vector<Vec> beliefs;    // CDF rows over `outcomes`, each ending at 1
  int realist_index = 0;       // position of G0 in `beliefs`
  double kl_scale = 1.0;       // lambda; cost = lambda * KL(G from G0)
  std::string u1 = "log";      // "log" | "sqrt" | "linear"
  std::string u2 = "log";
  double u2_weight = 0.9;
};
struct WishfulModel {
  LatticePtr combined;       // (c, -G(y_1), ..., -G(y_N)) lattice
  ObjectivePtr utility;      // U(c, G) with a singleton parameter poset
  LatticePtr beliefs;        // belief-only lattice
  CostFunction combined_cost;
  CostFunction belief_cost;
  std::vector<double> phi;   // phi(G) = max_c U(c, G), by belief member id
  int g0 = -1;               // realist belief, belief-lattice id
  int gbar = -1;             // most optimistic belief
  Vec consumption_axis;
  std::vector<PropertyReport> certificates;

  int c_index_of(int combined_id) const;
  int belief_id_of(int combined_id) const;
  Vec cdf_of(int belief_id) const;  // back to CDF coordinates
};
WishfulModel build_wishful(const WishfulSpec& spec);

// Verifies supermodularity of U on the joint lattice, then certifies the
// saving chain: c_bar >= c_hat >= c_0 and G_bar >=_1 G_hat >=_1 G_0 for the
// constructed selections, with (c_hat, G_hat) jointly optimal.
TheoremReport wishful_check(const WishfulModel& M);

// lambda * KL(G || G0) over CDF vectors; +inf off the simplex or when
// absolute continuity with respect to G0 fails. 0 ln 0 := 0.
double kl_divergence(const Vec& cdf, const Vec& cdf0);

}  // namespace mcs
