#include "mcs/config.hpp"

#include <cmath>
#include <fstream>

namespace mcs {

using nlohmann::json;

namespace {

const json& need(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(path + "/" + key, "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
  }
  throw ConfigError(path, "expected a number (or \"inf\")");
}

json number_out(double v) {
  if (v == kInf) return json("inf");
  return json(v);
}

Vec vec_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "/" + std::to_string(i)));
  return out;
}

Cost1d cost1d_from_json(const json& doc, const std::string& path) {
  const std::string family = need(doc, "family", path).get<std::string>();
  if (family == "zero") return Cost1d::zero();
  if (family == "quadratic") return Cost1d::quadratic(number(need(doc, "a", path), path + "/a"));
  if (family == "fixed") return Cost1d::fixed(number(need(doc, "k", path), path + "/k"));
  if (family == "free_disposal")
    return Cost1d::free_disposal(number(need(doc, "a", path), path + "/a"));
  if (family == "box")
    return Cost1d::box_quad(number(need(doc, "a", path), path + "/a"),
                            number(need(doc, "lo", path), path + "/lo"),
                            number(need(doc, "hi", path), path + "/hi"));
  if (family == "lumpy")
    return Cost1d::lumpy(number(need(doc, "a", path), path + "/a"),
                         number(need(doc, "min_size", path), path + "/min_size"));
  if (family == "table") {
    const json& entries = need(doc, "entries", path);
    if (!entries.is_array()) throw ConfigError(path + "/entries", "expected an array");
    std::map<double, double> values;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string ep = path + "/entries/" + std::to_string(i);
      values[number(need(entries[i], "eps", ep), ep + "/eps")] =
          number(need(entries[i], "cost", ep), ep + "/cost");
    }
    return Cost1d::table(std::move(values));
  }
  throw ConfigError(path + "/family", "unknown 1-d cost family '" + family + "'");
}

json cost1d_to_json(const Cost1d& c) {
  json out;
  switch (c.family()) {
    case Cost1d::Family::Zero:
      out["family"] = "zero";
      break;
    case Cost1d::Family::Quadratic:
      out["family"] = "quadratic";
      out["a"] = c.a;
      break;
    case Cost1d::Family::Fixed:
      out["family"] = "fixed";
      out["k"] = c.k;
      break;
    case Cost1d::Family::FreeDisposal:
      out["family"] = "free_disposal";
      out["a"] = c.a;
      break;
    case Cost1d::Family::BoxQuad:
      out["family"] = "box";
      out["a"] = c.a;
      out["lo"] = c.lo;
      out["hi"] = c.hi;
      break;
    case Cost1d::Family::Lumpy:
      out["family"] = "lumpy";
      out["a"] = c.a;
      out["min_size"] = c.min_size;
      break;
    case Cost1d::Family::Table:
    case Cost1d::Family::Custom: {
      // Custom components are tabulated by the caller before serialization.
      out["family"] = "table";
      json entries = json::array();
      for (const auto& [e, v] : c.entries()) {
        json row;
        row["eps"] = e;
        row["cost"] = number_out(v);
        entries.push_back(std::move(row));
      }
      out["entries"] = std::move(entries);
      break;
    }
  }
  return out;
}

CostFunction cost_from_json(const json& doc, int dims, const std::string& path) {
  const std::string family = need(doc, "family", path).get<std::string>();
  if (family == "separable") {
    const json& comps = need(doc, "components", path);
    if (!comps.is_array() || static_cast<int>(comps.size()) != dims)
      throw ConfigError(path + "/components", "expected " + std::to_string(dims) + " components");
    std::vector<Cost1d> out;
    for (std::size_t i = 0; i < comps.size(); ++i)
      out.push_back(cost1d_from_json(comps[i], path + "/components/" + std::to_string(i)));
    return CostFunction::separable(std::move(out));
  }
  if (family == "zero") return CostFunction::zero(dims);
  if (family == "euclidean") return CostFunction::euclidean(dims);
  if (family == "cobb_douglas")
    return CostFunction::cobb_douglas(vec_of(need(doc, "exponents", path), path + "/exponents"));
  if (family == "table") {
    const json& entries = need(doc, "entries", path);
    if (!entries.is_array()) throw ConfigError(path + "/entries", "expected an array");
    std::vector<std::pair<Vec, double>> rows;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string ep = path + "/entries/" + std::to_string(i);
      rows.emplace_back(vec_of(need(entries[i], "eps", ep), ep + "/eps"),
                        number(need(entries[i], "cost", ep), ep + "/cost"));
    }
    return CostFunction::table(dims, std::move(rows));
  }
  throw ConfigError(path + "/family", "unknown cost family '" + family + "'");
}

LatticePtr lattice_from_json(const json& doc, const std::string& path) {
  std::vector<Vec> axes;
  const json& jaxes = need(doc, "axes", path);
  if (!jaxes.is_array() || jaxes.empty()) throw ConfigError(path + "/axes", "expected axis arrays");
  for (std::size_t d = 0; d < jaxes.size(); ++d)
    axes.push_back(vec_of(jaxes[d], path + "/axes/" + std::to_string(d)));
  try {
    if (doc.contains("members")) {
      std::vector<Vec> members;
      const json& jm = doc["members"];
      if (!jm.is_array()) throw ConfigError(path + "/members", "expected an array of points");
      for (std::size_t i = 0; i < jm.size(); ++i)
        members.push_back(vec_of(jm[i], path + "/members/" + std::to_string(i)));
      return std::make_shared<const GridLattice>(
          GridLattice::from_member_coords(std::move(axes), members));
    }
    return std::make_shared<const GridLattice>(GridLattice::product(std::move(axes)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

PosetPtr poset_from_json(const json& doc, const std::string& path) {
  try {
    if (doc.contains("chain")) {
      std::vector<std::string> labels;
      for (const json& v : doc["chain"])
        labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      return std::make_shared<const ParamPoset>(ParamPoset::chain(std::move(labels)));
    }
    if (doc.contains("elements")) {
      std::vector<std::string> labels;
      for (const json& v : doc["elements"])
        labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      std::vector<std::pair<int, int>> pairs;
      if (doc.contains("leq"))
        for (const json& p : doc["leq"]) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
      return std::make_shared<const ParamPoset>(ParamPoset::from_pairs(std::move(labels), pairs));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected a 'chain' or 'elements' parameter block");
}

Utility utility_from_json(const json& doc, const std::string& path) {
  const std::string family = need(doc, "family", path).get<std::string>();
  if (family == "linear") return Utility::linear();
  if (family == "cara") return Utility::cara(number(need(doc, "a", path), path + "/a"));
  if (family == "piecewise")
    return Utility::piecewise(number(need(doc, "slope_below", path), path + "/slope_below"),
                              number(need(doc, "slope_above", path), path + "/slope_above"),
                              number(need(doc, "kink", path), path + "/kink"));
  throw ConfigError(path + "/family", "unknown utility family '" + family + "'");
}

BuiltModel model_from_json(const json& doc, const std::string& path) {
  const std::string name = need(doc, "name", path).get<std::string>();
  auto opt_num = [&](const std::string& key, double fallback) {
    return doc.contains(key) ? number(doc[key], path + "/" + key) : fallback;
  };
  auto opt_vec = [&](const std::string& key, Vec fallback) {
    return doc.contains(key) ? vec_of(doc[key], path + "/" + key) : fallback;
  };
  try {
    if (name == "pricing") {
      PricingSpec spec;
      spec.price_grid = vec_of(need(doc, "price_grid", path), path + "/price_grid");
      if (doc.contains("demand")) spec.demand = doc["demand"].get<std::string>();
      spec.intercept = opt_num("intercept", spec.intercept);
      spec.scale = opt_num("scale", spec.scale);
      spec.marginal_costs = vec_of(need(doc, "marginal_costs", path), path + "/marginal_costs");
      spec.elasticities = vec_of(need(doc, "elasticities", path), path + "/elasticities");
      if (doc.contains("cost")) spec.adjustment = cost_from_json(doc["cost"], 1, path + "/cost");
      spec.delta = opt_num("delta", spec.delta);
      spec.horizon = static_cast<int>(opt_num("horizon", spec.horizon));
      return build_pricing(spec);
    }
    if (name == "factor_demand") {
      FactorDemandSpec spec;
      spec.capital_grid = vec_of(need(doc, "capital_grid", path), path + "/capital_grid");
      spec.labor_grid = vec_of(need(doc, "labor_grid", path), path + "/labor_grid");
      if (doc.contains("technology")) spec.technology = doc["technology"].get<std::string>();
      spec.scale = opt_num("scale", spec.scale);
      spec.alpha = opt_num("alpha", spec.alpha);
      spec.beta = opt_num("beta", spec.beta);
      spec.rho = opt_num("rho", spec.rho);
      spec.rental = opt_num("rental", spec.rental);
      spec.wages = vec_of(need(doc, "wages", path), path + "/wages");
      if (doc.contains("cost")) spec.adjustment = cost_from_json(doc["cost"], 2, path + "/cost");
      if (doc.contains("substitutes")) spec.substitutes = doc["substitutes"].get<bool>();
      return build_factor_demand(spec);
    }
    if (name == "labor_supply") {
      LaborSupplySpec spec;
      spec.hours_grid = vec_of(need(doc, "hours_grid", path), path + "/hours_grid");
      spec.wage = opt_num("wage", spec.wage);
      spec.rate_initial = opt_num("rate_initial", spec.rate_initial);
      spec.rate_new = opt_num("rate_new", spec.rate_new);
      spec.exemption = opt_num("exemption", spec.exemption);
      spec.disutility_scale = opt_num("disutility_scale", spec.disutility_scale);
      spec.disutility_power = opt_num("disutility_power", spec.disutility_power);
      if (doc.contains("cost")) spec.adjustment = cost_from_json(doc["cost"], 1, path + "/cost");
      spec.delta = opt_num("delta", spec.delta);
      spec.horizon = static_cast<int>(opt_num("horizon", spec.horizon));
      return build_labor_supply(spec);
    }
    if (name == "investment") {
      InvestmentSpec spec;
      spec.capital_grid = vec_of(need(doc, "capital_grid", path), path + "/capital_grid");
      spec.alpha = opt_num("alpha", spec.alpha);
      spec.output_prices = vec_of(need(doc, "output_prices", path), path + "/output_prices");
      spec.productivity = vec_of(need(doc, "productivity", path), path + "/productivity");
      spec.rentals = vec_of(need(doc, "rentals", path), path + "/rentals");
      if (doc.contains("cost")) spec.adjustment = cost_from_json(doc["cost"], 1, path + "/cost");
      spec.delta = opt_num("delta", spec.delta);
      spec.horizon = static_cast<int>(opt_num("horizon", spec.horizon));
      return build_investment(spec);
    }
    if (name == "wishful") {
      WishfulSpec spec;
      spec.wealth = opt_num("wealth", spec.wealth);
      spec.interest = opt_num("interest", spec.interest);
      spec.consumption_points = static_cast<int>(opt_num("consumption_points", spec.consumption_points));
      spec.outcomes = vec_of(need(doc, "outcomes", path), path + "/outcomes");
      const json& jb = need(doc, "beliefs", path);
      for (std::size_t i = 0; i < jb.size(); ++i)
        spec.beliefs.push_back(vec_of(jb[i], path + "/beliefs/" + std::to_string(i)));
      spec.realist_index = static_cast<int>(opt_num("realist_index", spec.realist_index));
      spec.kl_scale = opt_num("kl_scale", spec.kl_scale);
      if (doc.contains("u1")) spec.u1 = doc["u1"].get<std::string>();
      if (doc.contains("u2")) spec.u2 = doc["u2"].get<std::string>();
      spec.u2_weight = opt_num("u2_weight", spec.u2_weight);
      WishfulModel wm = build_wishful(spec);
      BuiltModel out;
      out.problem.lattice = wm.combined;
      out.problem.objective = wm.utility;
      out.problem.cost = wm.combined_cost;
      out.certificates = wm.certificates;
      out.notes.push_back("wishful model: run the dedicated saving-chain check via `demo wishful`");
      (void)opt_vec;
      return out;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + "/name", "unknown model '" + name + "'");
}

}  // namespace

Scenario load_scenario(const json& doc) {
  Scenario sc;
  if (!doc.is_object()) throw ConfigError("/", "expected a JSON object");
  const bool has_model = doc.contains("model");
  const bool has_raw = doc.contains("lattice") || doc.contains("objective");
  if (has_model && has_raw)
    throw ConfigError("/", "a config holds either a 'model' block or raw blocks, not both");
  if (doc.contains("tolerance")) sc.tol = number(doc["tolerance"], "/tolerance");

  if (has_model) {
    sc.model = model_from_json(doc["model"], "/model");
    sc.lattice = sc.model->problem.lattice;
    sc.objective = sc.model->problem.objective;
    sc.poset = sc.model->problem.objective->poset_ptr();
    sc.cost = sc.model->problem.cost;
    sc.static_problem = sc.model->problem;
    sc.static_problem->tol = sc.tol;
    sc.dynamic = sc.model->dynamic;
    return sc;
  }

  sc.lattice = lattice_from_json(need(doc, "lattice", "/"), "/lattice");
  sc.poset = poset_from_json(need(doc, "parameters", "/"), "/parameters");
  {
    const json& jt = need(doc, "objective", "/");
    const json& table = need(jt, "table", "/objective");
    if (!table.is_array() || static_cast<int>(table.size()) != sc.lattice->size())
      throw ConfigError("/objective/table",
                        "expected one row per lattice member (" +
                            std::to_string(sc.lattice->size()) + ")");
    std::vector<double> values;
    for (std::size_t i = 0; i < table.size(); ++i) {
      Vec row = vec_of(table[i], "/objective/table/" + std::to_string(i));
      if (static_cast<int>(row.size()) != sc.poset->size())
        throw ConfigError("/objective/table/" + std::to_string(i),
                          "expected one value per parameter (" + std::to_string(sc.poset->size()) + ")");
      values.insert(values.end(), row.begin(), row.end());
    }
    try {
      sc.objective = std::make_shared<const Objective>(sc.lattice, sc.poset, std::move(values));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/objective/table", e.what());
    }
  }
  if (doc.contains("cost"))
    sc.cost = cost_from_json(doc["cost"], sc.lattice->dims(), "/cost");

  auto theta_index = [&](const std::string& key, int fallback) {
    if (!doc.contains(key)) return fallback;
    const int t = static_cast<int>(number(doc[key], "/" + key));
    if (t < 0 || t >= sc.poset->size()) throw ConfigError("/" + key, "parameter index out of range");
    return t;
  };
  auto point_set = [&](const std::string& key) {
    std::vector<int> ids;
    if (!doc.contains(key)) return ids;
    const json& js = doc[key];
    for (std::size_t i = 0; i < js.size(); ++i) {
      try {
        ids.push_back(sc.lattice->find_coords(vec_of(js[i], "/" + key + "/" + std::to_string(i))));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/" + key + "/" + std::to_string(i), e.what());
      }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  if (sc.cost) {
    StaticProblem P;
    P.lattice = sc.lattice;
    P.objective = sc.objective;
    P.cost = *sc.cost;
    P.theta_initial = theta_index("theta_initial", 0);
    P.theta_new = theta_index("theta_new", sc.poset->size() - 1);
    P.initial_set = point_set("initial_set");
    P.new_set = point_set("new_set");
    P.tol = sc.tol;
    if (doc.contains("initial_point")) {
      try {
        P.x_initial = sc.lattice->find_coords(vec_of(doc["initial_point"], "/initial_point"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/initial_point", e.what());
      }
    }
    sc.static_problem = std::move(P);
  }

  if (doc.contains("dynamic")) {
    const json& jd = doc["dynamic"];
    DynamicScenario S;
    S.lattice = sc.lattice;
    S.objective = sc.objective;
    S.theta_initial = theta_index("theta_initial", 0);
    S.theta_target = jd.contains("theta_target")
                         ? static_cast<int>(number(jd["theta_target"], "/dynamic/theta_target"))
                         : sc.poset->size() - 1;
    if (jd.contains("theta_prefix"))
      for (const json& v : jd["theta_prefix"])
        S.theta_prefix.push_back(static_cast<int>(number(v, "/dynamic/theta_prefix")));
    S.theta_tail = jd.contains("theta_tail")
                       ? static_cast<int>(number(jd["theta_tail"], "/dynamic/theta_tail"))
                       : S.theta_target;
    if (jd.contains("cost_prefix")) {
      const json& jc = jd["cost_prefix"];
      for (std::size_t i = 0; i < jc.size(); ++i)
        S.cost_prefix.push_back(
            cost_from_json(jc[i], sc.lattice->dims(), "/dynamic/cost_prefix/" + std::to_string(i)));
    }
    if (jd.contains("cost_tail"))
      S.cost_tail = cost_from_json(jd["cost_tail"], sc.lattice->dims(), "/dynamic/cost_tail");
    else if (sc.cost)
      S.cost_tail = *sc.cost;
    else
      throw ConfigError("/dynamic/cost_tail", "missing required field");
    S.delta = jd.contains("delta") ? number(jd["delta"], "/dynamic/delta") : 0.9;
    if (jd.contains("horizon")) {
      const json& jh = jd["horizon"];
      const std::string mode = need(jh, "mode", "/dynamic/horizon").get<std::string>();
      const int periods =
          static_cast<int>(number(need(jh, "periods", "/dynamic/horizon"), "/dynamic/horizon/periods"));
      if (mode == "infinite")
        S.horizon = HorizonSpec::infinite(periods);
      else if (mode == "finite")
        S.horizon = HorizonSpec::finite(periods);
      else
        throw ConfigError("/dynamic/horizon/mode", "expected 'infinite' or 'finite'");
    }
    if (jd.contains("vi_tolerance")) S.vi_tol = number(jd["vi_tolerance"], "/dynamic/vi_tolerance");
    if (jd.contains("value_tolerance"))
      S.value_tol = number(jd["value_tolerance"], "/dynamic/value_tolerance");
    S.tol = sc.tol;
    if (doc.contains("initial_point")) {
      try {
        S.x0 = sc.lattice->find_coords(vec_of(doc["initial_point"], "/initial_point"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/initial_point", e.what());
      }
    }
    try {
      S.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/dynamic", e.what());
    }
    sc.dynamic = std::move(S);
  }

  if (doc.contains("lottery")) {
    const json& jl = doc["lottery"];
    CostLottery lot;
    const json& js = need(jl, "states", "/lottery");
    for (std::size_t i = 0; i < js.size(); ++i) {
      const std::string sp = "/lottery/states/" + std::to_string(i);
      lot.probs.push_back(number(need(js[i], "prob", sp), sp + "/prob"));
      lot.costs.push_back(cost_from_json(need(js[i], "cost", sp), sc.lattice->dims(), sp + "/cost"));
    }
    lot.utility = jl.contains("utility") ? utility_from_json(jl["utility"], "/lottery/utility")
                                         : Utility::linear();
    try {
      lot.validate(sc.lattice->dims());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/lottery", e.what());
    }
    sc.lottery = std::move(lot);
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("JSON parse error: ") + e.what());
  }
  return load_scenario(doc);
}

json lattice_to_json(const GridLattice& L) {
  json out;
  out["axes"] = L.axes();
  std::size_t full = 1;
  for (const Vec& a : L.axes()) full *= a.size();
  if (full != static_cast<std::size_t>(L.size())) {
    json members = json::array();
    for (int i = 0; i < L.size(); ++i) members.push_back(L.coords(i));
    out["members"] = std::move(members);
  }
  return out;
}

json poset_to_json(const ParamPoset& P) {
  json out;
  std::vector<std::string> labels;
  for (int i = 0; i < P.size(); ++i) labels.push_back(P.label(i));
  if (P.is_chain()) {
    out["chain"] = labels;
    return out;
  }
  out["elements"] = labels;
  json pairs = json::array();
  for (int a = 0; a < P.size(); ++a)
    for (int b = 0; b < P.size(); ++b)
      if (a != b && P.leq(a, b)) pairs.push_back(json::array({a, b}));
  out["leq"] = std::move(pairs);
  return out;
}

json cost_to_json(const CostFunction& C, const GridLattice& L) {
  json out;
  switch (C.kind()) {
    case CostFunction::Kind::Euclidean:
      out["family"] = "euclidean";
      return out;
    case CostFunction::Kind::CobbDouglas:
      out["family"] = "cobb_douglas";
      out["exponents"] = C.exponents();
      return out;
    case CostFunction::Kind::Separable: {
      bool tabulable = true;
      for (const Cost1d& c : C.components())
        if (c.family() == Cost1d::Family::Custom) tabulable = false;
      if (tabulable) {
        out["family"] = "separable";
        json comps = json::array();
        for (const Cost1d& c : C.components()) comps.push_back(cost1d_to_json(c));
        out["components"] = std::move(comps);
        return out;
      }
      // Custom per-dimension pieces: tabulate each on its difference grid.
      const DiffSet D = DiffSet::of(L);
      out["family"] = "separable";
      json comps = json::array();
      for (int d = 0; d < C.dims(); ++d) {
        std::map<double, double> values;
        for (double e : D.per_dim[d]) values[e] = C.components()[d](e);
        comps.push_back(cost1d_to_json(Cost1d::table(std::move(values))));
      }
      out["components"] = std::move(comps);
      return out;
    }
    case CostFunction::Kind::Table:
    case CostFunction::Kind::Custom: {
      // Exact tabulation over the difference set.
      const DiffSet D = DiffSet::of(L);
      out["family"] = "table";
      json entries = json::array();
      for (const Vec& eps : D.all) {
        json row;
        row["eps"] = eps;
        row["cost"] = number_out(C(eps));
        entries.push_back(std::move(row));
      }
      out["entries"] = std::move(entries);
      return out;
    }
  }
  return out;
}

json static_problem_to_json(const StaticProblem& P) {
  json out;
  out["lattice"] = lattice_to_json(P.L());
  out["parameters"] = poset_to_json(P.poset());
  json table = json::array();
  for (int i = 0; i < P.L().size(); ++i) {
    Vec row;
    for (int t = 0; t < P.poset().size(); ++t) row.push_back((*P.objective)(i, t));
    table.push_back(row);
  }
  out["objective"] = {{"table", table}};
  out["cost"] = cost_to_json(P.cost, P.L());
  out["theta_initial"] = P.theta_initial;
  out["theta_new"] = P.theta_new;
  if (P.x_initial) out["initial_point"] = P.L().coords(*P.x_initial);
  if (!P.initial_set.empty()) {
    json s = json::array();
    for (int id : P.initial_set) s.push_back(P.L().coords(id));
    out["initial_set"] = std::move(s);
  }
  if (!P.new_set.empty()) {
    json s = json::array();
    for (int id : P.new_set) s.push_back(P.L().coords(id));
    out["new_set"] = std::move(s);
  }
  if (P.tol != 0) out["tolerance"] = P.tol;
  return out;
}

json dynamic_to_json(const DynamicScenario& S) {
  json out;
  out["lattice"] = lattice_to_json(S.L());
  out["parameters"] = poset_to_json(S.poset());
  json table = json::array();
  for (int i = 0; i < S.L().size(); ++i) {
    Vec row;
    for (int t = 0; t < S.poset().size(); ++t) row.push_back((*S.objective)(i, t));
    table.push_back(row);
  }
  out["objective"] = {{"table", table}};
  out["theta_initial"] = S.theta_initial;
  json dyn;
  dyn["delta"] = S.delta;
  dyn["theta_target"] = S.theta_target;
  dyn["theta_prefix"] = S.theta_prefix;
  dyn["theta_tail"] = S.theta_tail;
  json prefix = json::array();
  for (const CostFunction& c : S.cost_prefix) prefix.push_back(cost_to_json(c, S.L()));
  dyn["cost_prefix"] = std::move(prefix);
  dyn["cost_tail"] = cost_to_json(S.cost_tail, S.L());
  dyn["horizon"] = {{"mode", S.horizon.is_finite() ? "finite" : "infinite"},
                    {"periods", S.horizon.periods}};
  dyn["vi_tolerance"] = S.vi_tol;
  dyn["value_tolerance"] = S.value_tol;
  out["dynamic"] = std::move(dyn);
  if (S.x0) out["initial_point"] = S.L().coords(*S.x0);
  return out;
}

json lottery_to_json(const CostLottery& lot, const GridLattice& L) {
  json out;
  json states = json::array();
  for (int s = 0; s < lot.states(); ++s) {
    json row;
    row["prob"] = lot.probs[s];
    row["cost"] = cost_to_json(lot.costs[s], L);
    states.push_back(std::move(row));
  }
  out["states"] = std::move(states);
  switch (lot.utility.family) {
    case Utility::Family::Linear:
      out["utility"] = {{"family", "linear"}};
      break;
    case Utility::Family::Cara:
      out["utility"] = {{"family", "cara"}, {"a", lot.utility.risk_aversion}};
      break;
    case Utility::Family::Piecewise:
      out["utility"] = {{"family", "piecewise"},
                        {"slope_below", lot.utility.slope_lo},
                        {"slope_above", lot.utility.slope_hi},
                        {"kink", lot.utility.kink}};
      break;
  }
  return out;
}

json property_report_to_json(const PropertyReport& r) {
  json out;
  out["property"] = r.property;
  out["holds"] = r.holds;
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (!r.witness_vectors.empty()) out["witness"] = r.witness_vectors;
  if (!r.witness_thetas.empty()) out["witness_thetas"] = r.witness_thetas;
  return out;
}

json theorem_report_to_json(const TheoremReport& r) {
  json out;
  out["theorem"] = r.theorem;
  out["status"] = to_string(r.status);
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (!r.hypothesis_failures.empty()) {
    json fails = json::array();
    for (const PropertyReport& p : r.hypothesis_failures) fails.push_back(property_report_to_json(p));
    out["hypothesis_failures"] = std::move(fails);
  }
  if (!r.points.empty()) {
    json pts;
    for (const auto& [name, p] : r.points) pts[name] = p;
    out["points"] = std::move(pts);
  }
  if (!r.paths.empty()) {
    json paths;
    for (const auto& [name, p] : r.paths) paths[name] = p;
    out["paths"] = std::move(paths);
  }
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

}  // namespace mcs
