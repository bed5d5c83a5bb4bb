#include "mcs/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mcs {

namespace {

void require(const PropertyReport& r, std::vector<PropertyReport>& certificates,
             const std::string& model) {
  if (!r.holds)
    throw std::invalid_argument(model + ": required property '" + r.property +
                                "' fails: " + r.detail);
  certificates.push_back(r);
}

PosetPtr chain_of(const std::vector<std::string>& labels) {
  return std::make_shared<const ParamPoset>(ParamPoset::chain(labels));
}

}  // namespace

StaticProblem flip_dimensions(const StaticProblem& P, const std::vector<int>& dims) {
  const GridLattice& L = P.L();
  const int n = L.dims();
  std::vector<bool> flip(n, false);
  for (int d : dims) {
    if (d < 0 || d >= n) throw std::invalid_argument("flip: dimension out of range");
    flip[d] = true;
  }

  std::vector<Vec> axes = L.axes();
  for (int d = 0; d < n; ++d)
    if (flip[d]) {
      std::reverse(axes[d].begin(), axes[d].end());
      for (double& v : axes[d]) v = -v;
    }
  auto map_idx = [&](const Idx& idx) {
    Idx out = idx;
    for (int d = 0; d < n; ++d)
      if (flip[d]) out[d] = static_cast<int>(L.axis(d).size()) - 1 - idx[d];
    return out;
  };
  std::vector<Idx> members;
  members.reserve(L.size());
  for (int i = 0; i < L.size(); ++i) members.push_back(map_idx(L.index_of(i)));
  auto lattice = std::make_shared<const GridLattice>(
      GridLattice::from_members(std::move(axes), std::move(members)));

  // old member id -> new member id
  std::vector<int> remap(L.size());
  for (int i = 0; i < L.size(); ++i) remap[i] = lattice->find(map_idx(L.index_of(i)));

  std::vector<double> values(static_cast<std::size_t>(L.size()) * P.poset().size());
  for (int i = 0; i < L.size(); ++i)
    for (int t = 0; t < P.poset().size(); ++t)
      values[static_cast<std::size_t>(remap[i]) * P.poset().size() + t] = (*P.objective)(i, t);
  auto objective = std::make_shared<const Objective>(lattice, P.objective->poset_ptr(),
                                                     std::move(values));

  CostFunction cost = [&] {
    // Symmetric families are invariant under sign flips.
    if (P.cost.kind() == CostFunction::Kind::Euclidean ||
        P.cost.kind() == CostFunction::Kind::CobbDouglas)
      return P.cost;
    auto sign_map = [flip, n](const Vec& eps) {
      Vec out = eps;
      for (int d = 0; d < n; ++d)
        if (flip[d]) out[d] = -out[d];
      return out;
    };
    if (P.cost.is_separable()) {
      std::vector<Cost1d> comps;
      for (int d = 0; d < n; ++d) {
        if (!flip[d]) {
          comps.push_back(P.cost.components()[d]);
        } else {
          Cost1d inner = P.cost.components()[d];
          comps.push_back(Cost1d::custom([inner](double e) { return inner(-e); },
                                         "flipped_" + inner.name()));
        }
      }
      return CostFunction::separable(std::move(comps));
    }
    CostFunction inner = P.cost;
    return CostFunction::custom(
        n, [inner, sign_map](const Vec& eps) { return inner(sign_map(eps)); },
        "flipped_" + P.cost.name());
  }();

  StaticProblem out;
  out.lattice = lattice;
  out.objective = objective;
  out.cost = std::move(cost);
  out.theta_initial = P.theta_initial;
  out.theta_new = P.theta_new;
  out.tol = P.tol;
  for (int id : P.initial_set) out.initial_set.push_back(remap[id]);
  for (int id : P.new_set) out.new_set.push_back(remap[id]);
  std::sort(out.initial_set.begin(), out.initial_set.end());
  std::sort(out.new_set.begin(), out.new_set.end());
  if (P.x_initial) out.x_initial = remap[*P.x_initial];
  return out;
}

BuiltModel build_pricing(const PricingSpec& spec) {
  BuiltModel model;
  if (spec.marginal_costs.empty() || spec.marginal_costs.size() != spec.elasticities.size())
    throw std::invalid_argument("pricing: needs matching marginal-cost and elasticity chains");
  for (std::size_t j = 1; j < spec.marginal_costs.size(); ++j) {
    if (spec.marginal_costs[j] < spec.marginal_costs[j - 1])
      throw std::invalid_argument("pricing: marginal costs must be increasing");
    if (spec.elasticities[j] > spec.elasticities[j - 1])
      throw std::invalid_argument("pricing: elasticities must be decreasing");
  }
  auto lattice = std::make_shared<const GridLattice>(GridLattice::product({spec.price_grid}));

  std::vector<std::string> labels;
  for (std::size_t j = 0; j < spec.marginal_costs.size(); ++j)
    labels.push_back("(c=" + std::to_string(spec.marginal_costs[j]) +
                     ",eta=" + std::to_string(spec.elasticities[j]) + ")");
  PosetPtr poset = chain_of(labels);

  auto demand = [&](double p, double eta) {
    if (spec.demand == "linear") return spec.intercept - eta * p;
    if (spec.demand == "isoelastic") return spec.scale * std::pow(p, -eta);
    throw std::invalid_argument("pricing: unknown demand family '" + spec.demand + "'");
  };
  for (double p : spec.price_grid)
    for (double eta : spec.elasticities)
      if (!(demand(p, eta) > 0))
        throw std::invalid_argument("pricing: demand must be strictly positive on the grid (p=" +
                                    std::to_string(p) + ")");

  auto D = std::make_shared<const Objective>(Objective::tabulate(
      lattice, poset, [&](const Vec& x, int j) { return demand(x[0], spec.elasticities[j]); }));
  auto profit = std::make_shared<const Objective>(
      Objective::tabulate(lattice, poset, [&](const Vec& x, int j) {
        return (x[0] - spec.marginal_costs[j]) * demand(x[0], spec.elasticities[j]);
      }));

  // Demand is log-supermodular in (p, -eta); the profit then shifts in the
  // single-crossing sense along the chain. Both are checked outright.
  require(check_log_increasing_differences(*D), model.certificates, "pricing");
  require(check_single_crossing_differences(*profit), model.certificates, "pricing");
  model.notes.push_back("quasi-supermodularity in p is automatic: the price is one-dimensional");

  model.problem.lattice = lattice;
  model.problem.objective = profit;
  model.problem.cost = spec.adjustment;
  model.problem.theta_initial = 0;
  model.problem.theta_new = poset->size() - 1;

  DynamicScenario dyn;
  dyn.lattice = lattice;
  dyn.objective = profit;
  dyn.theta_initial = 0;
  dyn.theta_target = poset->size() - 1;
  dyn.theta_tail = poset->size() - 1;
  dyn.cost_tail = spec.adjustment;
  dyn.delta = spec.delta;
  dyn.horizon = HorizonSpec::infinite(spec.horizon);
  model.dynamic = std::move(dyn);
  return model;
}

BuiltModel build_factor_demand(const FactorDemandSpec& spec) {
  BuiltModel model;
  if (spec.wages.empty()) throw std::invalid_argument("factor demand: needs a wage chain");
  for (std::size_t j = 1; j < spec.wages.size(); ++j)
    if (spec.wages[j] > spec.wages[j - 1])
      throw std::invalid_argument("factor demand: wages must be decreasing");

  auto lattice = std::make_shared<const GridLattice>(
      GridLattice::product({spec.capital_grid, spec.labor_grid}));
  std::vector<std::string> labels;
  for (double w : spec.wages) labels.push_back("w=" + std::to_string(w));
  PosetPtr poset = chain_of(labels);

  auto technology = [&](double k, double l) {
    if (spec.technology == "cobb_douglas")
      return spec.scale * std::pow(k, spec.alpha) * std::pow(l, spec.beta);
    if (spec.technology == "ces")
      return spec.scale * std::pow(std::pow(k, spec.rho) + std::pow(l, spec.rho), 1.0 / spec.rho);
    throw std::invalid_argument("factor demand: unknown technology '" + spec.technology + "'");
  };
  auto profit = std::make_shared<const Objective>(
      Objective::tabulate(lattice, poset, [&](const Vec& x, int j) {
        return technology(x[0], x[1]) - spec.rental * x[0] - spec.wages[j] * x[1];
      }));

  auto output = [&](int id) { return technology(lattice->coords(id)[0], lattice->coords(id)[1]); };
  if (spec.substitutes) {
    require(check_submodular(*lattice, output), model.certificates, "factor demand");
  } else {
    require(check_supermodular(*lattice, output), model.certificates, "factor demand");
  }
  require(check_increasing_differences(*profit), model.certificates, "factor demand");

  model.problem.lattice = lattice;
  model.problem.objective = profit;
  model.problem.cost = spec.adjustment;
  model.problem.theta_initial = 0;
  model.problem.theta_new = poset->size() - 1;

  if (spec.substitutes) {
    model.problem = flip_dimensions(model.problem, {0});
    model.flipped_dims = {0};
    model.notes.push_back("substitutes case: theorems run on the choice variable (-k, l)");
    require(check_objective_supermodular(*model.problem.objective), model.certificates,
            "factor demand");
  }
  return model;
}

BuiltModel build_labor_supply(const LaborSupplySpec& spec) {
  BuiltModel model;
  if (!(spec.wage > 0)) throw std::invalid_argument("labor supply: wage must be > 0");
  auto lattice = std::make_shared<const GridLattice>(GridLattice::product({spec.hours_grid}));
  PosetPtr poset = chain_of({"T", "T_flat"});

  auto tax = [&](double rate, double earnings) {
    return rate * std::max(0.0, earnings - spec.exemption);
  };
  // The flatter-order invariant on the realized earnings grid.
  for (double x1 : spec.hours_grid)
    for (double x2 : spec.hours_grid) {
      const double y1 = spec.wage * x1, y2 = spec.wage * x2;
      if (y2 < y1) continue;
      if (tax(spec.rate_new, y2) - tax(spec.rate_new, y1) >
          tax(spec.rate_initial, y2) - tax(spec.rate_initial, y1) + 1e-12)
        throw std::invalid_argument("labor supply: the new schedule is not flatter than the old one");
    }
  {
    PropertyReport flat;
    flat.property = "tax_flatter_order";
    flat.holds = true;
    model.certificates.push_back(flat);
  }

  auto utility = std::make_shared<const Objective>(
      Objective::tabulate(lattice, poset, [&](const Vec& x, int j) {
        const double rate = j == 0 ? spec.rate_initial : spec.rate_new;
        const double earnings = spec.wage * x[0];
        return earnings - tax(rate, earnings) -
               spec.disutility_scale * std::pow(x[0], spec.disutility_power);
      }));
  require(check_single_crossing_differences(*utility), model.certificates, "labor supply");
  model.notes.push_back("a flatter schedule shifts after-tax earnings differences up, so the"
                        " single-crossing property is inherited from the flatter order");

  model.problem.lattice = lattice;
  model.problem.objective = utility;
  model.problem.cost = spec.adjustment;
  model.problem.theta_initial = 0;
  model.problem.theta_new = 1;

  DynamicScenario dyn;
  dyn.lattice = lattice;
  dyn.objective = utility;
  dyn.theta_initial = 0;
  dyn.theta_target = 1;
  dyn.theta_tail = 1;
  dyn.cost_tail = spec.adjustment;
  dyn.delta = spec.delta;
  dyn.horizon = HorizonSpec::infinite(spec.horizon);
  model.dynamic = std::move(dyn);
  return model;
}

BuiltModel build_investment(const InvestmentSpec& spec) {
  BuiltModel model;
  const std::size_t K = spec.output_prices.size();
  if (K == 0 || spec.productivity.size() != K || spec.rentals.size() != K)
    throw std::invalid_argument("investment: needs matching price, productivity and rental chains");
  for (std::size_t j = 1; j < K; ++j) {
    if (spec.output_prices[j] < spec.output_prices[j - 1] ||
        spec.productivity[j] < spec.productivity[j - 1] || spec.rentals[j] > spec.rentals[j - 1])
      throw std::invalid_argument(
          "investment: the chain (p, eta, -r) must be increasing");
  }
  auto lattice = std::make_shared<const GridLattice>(GridLattice::product({spec.capital_grid}));
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < K; ++j)
    labels.push_back("(p=" + std::to_string(spec.output_prices[j]) +
                     ",eta=" + std::to_string(spec.productivity[j]) +
                     ",r=" + std::to_string(spec.rentals[j]) + ")");
  PosetPtr poset = chain_of(labels);

  auto profit = std::make_shared<const Objective>(
      Objective::tabulate(lattice, poset, [&](const Vec& x, int j) {
        return spec.output_prices[j] * spec.productivity[j] * std::pow(x[0], spec.alpha) -
               spec.rentals[j] * x[0];
      }));
  require(check_increasing_differences(*profit), model.certificates, "investment");
  model.notes.push_back("supermodularity in k is automatic: capital is one-dimensional");

  model.problem.lattice = lattice;
  model.problem.objective = profit;
  model.problem.cost = spec.adjustment;
  model.problem.theta_initial = 0;
  model.problem.theta_new = poset->size() - 1;

  DynamicScenario dyn;
  dyn.lattice = lattice;
  dyn.objective = profit;
  dyn.theta_initial = 0;
  dyn.theta_target = poset->size() - 1;
  dyn.theta_tail = poset->size() - 1;
  dyn.cost_tail = spec.adjustment;
  dyn.delta = spec.delta;
  dyn.horizon = HorizonSpec::infinite(spec.horizon);
  model.dynamic = std::move(dyn);
  return model;
}

double kl_divergence(const Vec& cdf, const Vec& cdf0) {
  if (cdf.size() != cdf0.size())
    throw std::invalid_argument("kl: CDF vectors must have equal length");
  const std::size_t n = cdf.size();
  double prev = 0, prev0 = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = cdf[i] - prev;
    const double g0 = cdf0[i] - prev0;
    prev = cdf[i];
    prev0 = cdf0[i];
    if (g < -1e-12 || cdf[i] > 1 + 1e-12) return kInf;  // not a CDF
    if (g <= 0) continue;                               // 0 ln 0 = 0
    if (g0 <= 0) return kInf;                           // absolute continuity fails
    total += g * std::log(g / g0);
  }
  if (std::fabs(cdf.back() - 1.0) > 1e-12) return kInf;
  return std::max(total, 0.0);
}

int WishfulModel::c_index_of(int combined_id) const { return combined->index_of(combined_id)[0]; }

int WishfulModel::belief_id_of(int combined_id) const {
  const Idx& idx = combined->index_of(combined_id);
  Idx b(idx.begin() + 1, idx.end());
  const int id = beliefs->find(b);
  if (id < 0) throw std::logic_error("wishful: combined member has no belief counterpart");
  return id;
}

Vec WishfulModel::cdf_of(int belief_id) const {
  Vec cdf = beliefs->coords(belief_id);
  for (double& v : cdf) v = -v;
  return cdf;
}

WishfulModel build_wishful(const WishfulSpec& spec) {
  WishfulModel M;
  if (!(spec.wealth > 0)) throw std::invalid_argument("wishful: wealth must be > 0");
  if (!(spec.interest > 0)) throw std::invalid_argument("wishful: interest rate must be > 0");
  if (spec.consumption_points < 2)
    throw std::invalid_argument("wishful: needs at least two consumption points");
  const std::size_t N = spec.outcomes.size();
  if (N == 0) throw std::invalid_argument("wishful: needs at least one income outcome");
  for (std::size_t i = 1; i < N; ++i)
    if (spec.outcomes[i] <= spec.outcomes[i - 1])
      throw std::invalid_argument("wishful: outcomes must be strictly increasing");
  if (spec.beliefs.empty() || spec.realist_index < 0 ||
      spec.realist_index >= static_cast<int>(spec.beliefs.size()))
    throw std::invalid_argument("wishful: realist index is out of range");
  for (const Vec& G : spec.beliefs) {
    if (G.size() != N) throw std::invalid_argument("wishful: belief row has wrong length");
    double prev = 0;
    for (double v : G) {
      if (v < prev - 1e-12 || v > 1 + 1e-12)
        throw std::invalid_argument("wishful: belief row " + seq_str(G) + " is not a CDF");
      prev = v;
    }
    if (std::fabs(G.back() - 1.0) > 1e-12)
      throw std::invalid_argument("wishful: belief CDF must end at 1");
  }

  // Close the belief set under the FOSD meet and join (pointwise max / min
  // of CDFs), then embed through negated-CDF coordinates.
  std::set<Vec> closure(spec.beliefs.begin(), spec.beliefs.end());
  for (;;) {
    std::set<Vec> grown = closure;
    for (const Vec& a : closure)
      for (const Vec& b : closure) {
        grown.insert(vec_max(a, b));
        grown.insert(vec_min(a, b));
      }
    if (grown.size() == closure.size()) break;
    closure = std::move(grown);
  }

  std::vector<Vec> belief_axes(N);
  for (const Vec& G : closure)
    for (std::size_t i = 0; i < N; ++i) belief_axes[i].push_back(-G[i]);
  for (Vec& axis : belief_axes) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  std::vector<Vec> belief_members;
  for (const Vec& G : closure) {
    Vec b(N);
    for (std::size_t i = 0; i < N; ++i) b[i] = -G[i];
    belief_members.push_back(std::move(b));
  }
  M.beliefs = std::make_shared<const GridLattice>(
      GridLattice::from_member_coords(belief_axes, belief_members));

  Vec g0_neg(N);
  for (std::size_t i = 0; i < N; ++i) g0_neg[i] = -spec.beliefs[spec.realist_index][i];
  M.g0 = M.beliefs->find_coords(g0_neg);
  // The most optimistic belief is the join of everything.
  M.gbar = 0;
  for (int i = 1; i < M.beliefs->size(); ++i) M.gbar = M.beliefs->join(M.gbar, i);

  M.consumption_axis.resize(spec.consumption_points);
  for (int i = 0; i < spec.consumption_points; ++i)
    M.consumption_axis[i] = spec.wealth * i / (spec.consumption_points - 1);

  std::vector<Vec> combined_axes;
  combined_axes.push_back(M.consumption_axis);
  for (const Vec& axis : belief_axes) combined_axes.push_back(axis);
  std::vector<Idx> combined_members;
  for (int ci = 0; ci < spec.consumption_points; ++ci)
    for (int bi = 0; bi < M.beliefs->size(); ++bi) {
      Idx idx;
      idx.push_back(ci);
      const Idx& b = M.beliefs->index_of(bi);
      idx.insert(idx.end(), b.begin(), b.end());
      combined_members.push_back(std::move(idx));
    }
  M.combined = std::make_shared<const GridLattice>(
      GridLattice::from_members(std::move(combined_axes), std::move(combined_members)));

  auto curve = [](const std::string& family, double v) {
    if (family == "log") return std::log1p(v);
    if (family == "sqrt") return std::sqrt(v);
    if (family == "linear") return v;
    throw std::invalid_argument("wishful: unknown utility family '" + family + "'");
  };
  auto u1 = [&](double c) { return curve(spec.u1, c); };
  auto u2 = [&](double z) { return spec.u2_weight * curve(spec.u2, z); };

  // U(c, G) = u1(c) + sum_y u2((1+r)(w - c) + y) g(y), computed from the pmf.
  auto expected_u2 = [&](double c, const Vec& cdf) {
    double prev = 0, total = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double mass = cdf[i] - prev;
      prev = cdf[i];
      total += mass * u2((1 + spec.interest) * (spec.wealth - c) + spec.outcomes[i]);
    }
    return total;
  };
  PosetPtr singleton = chain_of({"-"});
  M.utility = std::make_shared<const Objective>(
      Objective::tabulate(M.combined, singleton, [&](const Vec& x, int) {
        Vec cdf(x.begin() + 1, x.end());
        for (double& v : cdf) v = -v;
        return u1(x[0]) + expected_u2(x[0], cdf);
      }));

  // Concavity of u2 on the realized resource grid (slopes must not increase).
  {
    std::set<double> zs;
    for (double c : M.consumption_axis)
      for (double y : spec.outcomes) zs.insert((1 + spec.interest) * (spec.wealth - c) + y);
    std::vector<double> z(zs.begin(), zs.end());
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
      const double left = (u2(z[i]) - u2(z[i - 1])) * (z[i + 1] - z[i]);
      const double right = (u2(z[i + 1]) - u2(z[i])) * (z[i] - z[i - 1]);
      if (left < right - 1e-12)
        throw std::invalid_argument("wishful: u2 is not concave on the resource grid");
    }
    PropertyReport r;
    r.property = "u2_concave";
    r.holds = true;
    M.certificates.push_back(r);
  }

  const double lambda = spec.kl_scale;
  const Vec g0_cdf = spec.beliefs[spec.realist_index];
  auto belief_cost_fn = [lambda, g0_cdf](const Vec& eps_neg) {
    Vec cdf(g0_cdf.size());
    for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = g0_cdf[i] - eps_neg[i];
    const double kl = kl_divergence(cdf, g0_cdf);
    return kl < kInf ? lambda * kl : kInf;
  };
  M.belief_cost = CostFunction::custom(static_cast<int>(N), belief_cost_fn, "kl");
  M.combined_cost = CostFunction::custom(
      static_cast<int>(N) + 1,
      [belief_cost_fn](const Vec& eps) {
        return belief_cost_fn(Vec(eps.begin() + 1, eps.end()));
      },
      "kl_beliefs_only");

  // phi(G) = max_c U(c, G).
  M.phi.assign(M.beliefs->size(), -kInf);
  for (int id = 0; id < M.combined->size(); ++id) {
    const int b = M.belief_id_of(id);
    M.phi[b] = std::max(M.phi[b], (*M.utility)(id, 0));
  }

  require(check_cost_minimally_monotone(M.belief_cost, DiffSet::of(*M.beliefs)), M.certificates,
          "wishful");
  return M;
}

TheoremReport wishful_check(const WishfulModel& M) {
  TheoremReport rep;
  rep.theorem = "wishful";
  const GridLattice& CL = *M.combined;
  const GridLattice& BL = *M.beliefs;

  // Claim: U is supermodular on the joint (c, G) lattice.
  PropertyReport spm = check_supermodular(CL, [&](int i) { return (*M.utility)(i, 0); });
  if (!spm.holds) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures.push_back(std::move(spm));
    return rep;
  }
  rep.note("joint utility verified supermodular on the (c, G) lattice");
  PropertyReport phi_spm = check_supermodular(BL, [&](int i) { return M.phi[i]; });
  if (!phi_spm.holds) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures.push_back(std::move(phi_spm));
    return rep;
  }

  // Realist: best consumption under G0.
  auto best_c = [&](int belief) {
    ArgmaxSet am = argmax_over(CL.all_ids(), [&](int i) {
      return M.belief_id_of(i) == belief ? (*M.utility)(i, 0) : -kInf;
    });
    return am;
  };
  ArgmaxSet realist = best_c(M.g0);
  const int c0_idx = M.c_index_of(realist.points.front());

  // Wishful belief: the basic constraint-shift selection on the belief
  // lattice, from {G <=_1 G0} to the whole set.
  ArgmaxSet gmax = argmax_over(BL.all_ids(), [&](int i) {
    const double c = M.belief_cost(vec_sub(BL.coords(i), BL.coords(M.g0)));
    if (!(c < kInf)) return -kInf;
    return M.phi[i] - c;
  });
  const int g_hat = BL.join(M.g0, gmax.points.front());
  const bool g_hat_optimal = gmax.contains(g_hat);

  // Best consumption under G_hat and under the most optimistic belief, using
  // the constructive joins so the chain is the theorem's selection.
  ArgmaxSet under_hat = best_c(g_hat);
  const int c_hat_idx = std::max(c0_idx, M.c_index_of(under_hat.points.front()));
  ArgmaxSet under_bar = best_c(M.gbar);
  const int c_bar_idx = std::max(c_hat_idx, M.c_index_of(under_bar.points.front()));

  auto c_in_argmax = [&](const ArgmaxSet& am, int c_idx) {
    for (int id : am.points)
      if (M.c_index_of(id) == c_idx) return true;
    return false;
  };
  const bool c_hat_optimal = c_in_argmax(under_hat, c_hat_idx);
  const bool c_bar_optimal = c_in_argmax(under_bar, c_bar_idx);

  // Joint optimality of (c_hat, G_hat) for U - C over the combined lattice.
  ArgmaxSet joint = argmax_over(CL.all_ids(), [&](int i) {
    const double c = M.belief_cost(vec_sub(BL.coords(M.belief_id_of(i)), BL.coords(M.g0)));
    if (!(c < kInf)) return -kInf;
    return (*M.utility)(i, 0) - c;
  });
  bool joint_ok = false;
  for (int id : joint.points)
    if (M.c_index_of(id) == c_hat_idx && M.belief_id_of(id) == g_hat) joint_ok = true;

  const bool chain_c = c0_idx <= c_hat_idx && c_hat_idx <= c_bar_idx;
  const bool chain_g = BL.leq(M.g0, g_hat) && BL.leq(g_hat, M.gbar);

  rep.add_point("c_0", {M.consumption_axis[c0_idx]});
  rep.add_point("c_hat", {M.consumption_axis[c_hat_idx]});
  rep.add_point("c_bar", {M.consumption_axis[c_bar_idx]});
  rep.add_point("G_0", M.cdf_of(M.g0));
  rep.add_point("G_hat", M.cdf_of(g_hat));
  rep.add_point("G_bar", M.cdf_of(M.gbar));

  if (!(g_hat_optimal && c_hat_optimal && c_bar_optimal && joint_ok && chain_c && chain_g)) {
    rep.status = CheckStatus::Violated;
    rep.detail = "the constructed selections do not form the saving chain";
    return rep;
  }
  rep.detail = "c_bar >= c_hat >= c_0 and G_bar >=_1 G_hat >=_1 G_0 with all selections optimal";
  return rep;
}

}  // namespace mcs
