// Command-line front end: every solver, check, demo and verification suite
// over a JSON scenario config. Exit codes: 0 success / verdict holds,
// 1 input error, 2 hypothesis rejection, 3 verdict violation.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mcs/config.hpp"
#include "mcs/harness.hpp"

namespace {

using mcs::CheckStatus;
using nlohmann::json;

int exit_code(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds:
      return 0;
    case CheckStatus::HypothesisRejected:
      return 2;
    case CheckStatus::Violated:
      return 3;
  }
  return 1;
}

struct Output {
  std::string out_dir;
  bool pretty = false;

  void emit(const json& doc) const { std::cout << doc.dump(pretty ? 2 : -1) << "\n"; }

  void write_csv(const std::string& name, const std::string& header,
                 const std::vector<std::string>& rows) const {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / name);
    f << header << "\n";
    for (const std::string& r : rows) f << r << "\n";
  }
};

std::string csv_coords(const mcs::Vec& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ",";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
  }
  return out;
}

std::string coord_header(const std::string& prefix, int dims) {
  std::string out;
  for (int d = 0; d < dims; ++d) {
    if (!out.empty()) out += ",";
    out += prefix + std::to_string(d);
  }
  return out;
}

json points_json(const mcs::GridLattice& L, const std::vector<int>& ids) {
  json out = json::array();
  for (int id : ids) out.push_back(L.coords(id));
  return out;
}

const mcs::StaticProblem& need_static(const mcs::Scenario& sc) {
  if (!sc.static_problem)
    throw mcs::ConfigError("/cost", "this command needs a cost block (or a model block)");
  return *sc.static_problem;
}

const mcs::DynamicScenario& need_dynamic(const mcs::Scenario& sc) {
  if (!sc.dynamic)
    throw mcs::ConfigError("/dynamic", "this command needs a dynamic block (or a model block)");
  return *sc.dynamic;
}

mcs::Utility utility_from_flag(const std::string& risk) {
  if (risk == "linear") return mcs::Utility::linear();
  if (risk == "cara") return mcs::Utility::cara(0.1);
  if (risk == "piecewise") return mcs::Utility::piecewise(1.5, 0.75, 0.0);
  throw mcs::ConfigError("--risk", "expected linear, cara or piecewise");
}

int cmd_check_properties(const std::string& config, const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  json reports = json::array();
  auto add = [&](const mcs::PropertyReport& r) { reports.push_back(property_report_to_json(r)); };

  add(mcs::check_objective_quasi_supermodular(*sc.objective, sc.tol));
  add(mcs::check_objective_supermodular(*sc.objective, sc.tol));
  add(mcs::check_increasing_differences(*sc.objective, sc.tol));
  add(mcs::check_single_crossing_differences(*sc.objective, false, sc.tol));
  add(mcs::check_single_crossing_differences(*sc.objective, true, sc.tol));
  {
    bool positive = true;
    for (int i = 0; i < sc.objective->members() && positive; ++i)
      for (int t = 0; t < sc.objective->thetas() && positive; ++t)
        positive = (*sc.objective)(i, t) > 0;
    if (positive) add(mcs::check_log_increasing_differences(*sc.objective, false, sc.tol));
  }
  if (sc.cost) {
    const mcs::DiffSet D = mcs::DiffSet::of(*sc.lattice);
    add(mcs::check_cost_c0_finite(*sc.cost, sc.lattice->dims()));
    add(mcs::check_cost_minimally_monotone(*sc.cost, D, sc.tol));
    add(mcs::check_cost_monotone(*sc.cost, D, sc.tol));
    add(mcs::check_cost_strictly_minimally_monotone(*sc.cost, D, sc.tol));
    add(mcs::check_cost_strictly_monotone(*sc.cost, D, sc.tol));
    add(mcs::check_cost_separable(*sc.cost, D));
    add(mcs::check_cost_convex_per_dim(*sc.cost, D, sc.tol));
    if (sc.lattice->dims() == 1) add(mcs::check_cost_single_dipped(*sc.cost, D, sc.tol));
  }
  json doc;
  doc["command"] = "check-properties";
  doc["reports"] = std::move(reports);
  out.emit(doc);
  return 0;
}

int cmd_solve_static(const std::string& config, bool unsafe, const std::string& risk,
                     const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  const mcs::StaticProblem& P = need_static(sc);

  if (sc.lottery) {
    mcs::CostLottery lot = *sc.lottery;
    if (!risk.empty()) lot.utility = utility_from_flag(risk);
    mcs::TheoremReport rep = mcs::theorem1_prime_check(P, lot, unsafe);
    json doc = theorem_report_to_json(rep);
    doc["command"] = "solve-static";
    out.emit(doc);
    return exit_code(rep.status);
  }

  mcs::SelectResult res = mcs::theorem1_select(P, unsafe);
  json doc;
  doc["command"] = "solve-static";
  doc["status"] = to_string(res.status);
  json fails = json::array();
  for (const auto& f : res.hypothesis_failures) fails.push_back(property_report_to_json(f));
  doc["hypothesis_failures"] = std::move(fails);
  if (res.status != CheckStatus::HypothesisRejected) {
    const mcs::GridLattice& L = P.L();
    doc["x_initial"] = L.coords(res.x_initial);
    doc["x_prime"] = L.coords(res.x_prime);
    doc["x_hat"] = L.coords(res.x_hat);
    doc["argmax"] = {{"value", res.gmax.value}, {"points", points_json(L, res.gmax.points)}};
    doc["verdicts"] = {{"x_hat_in_argmax", res.x_hat_in_argmax},
                       {"x_hat_geq_initial", res.x_hat_geq_initial}};
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < res.gmax.points.size(); ++i) {
      const int id = res.gmax.points[i];
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", res.gmax.value);
      rows.push_back(std::to_string(i) + "," + csv_coords(L.coords(id)) + "," + buf + "," +
                     (id == res.x_hat ? "1" : "0") + "," + (L.leq(res.x_initial, id) ? "1" : "0"));
    }
    out.write_csv("solve_static_maximizers.csv",
                  "index," + coord_header("x", L.dims()) + ",value,is_selected,geq_initial", rows);
  }
  out.emit(doc);
  return exit_code(res.status);
}

int cmd_lechatelier(const std::string& config, bool unsafe, const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  const mcs::StaticProblem& P = need_static(sc);
  mcs::LeChatelierResult res = mcs::theorem2_select(P, unsafe);
  json doc;
  doc["command"] = "lechatelier";
  doc["status"] = to_string(res.status);
  json fails = json::array();
  for (const auto& f : res.hypothesis_failures) fails.push_back(property_report_to_json(f));
  doc["hypothesis_failures"] = std::move(fails);
  if (res.status != CheckStatus::HypothesisRejected) {
    const mcs::GridLattice& L = P.L();
    doc["x_initial"] = L.coords(res.x_initial);
    doc["x_hat"] = L.coords(res.x_hat);
    doc["x_bar"] = L.coords(res.x_bar);
    doc["verdicts"] = {{"sandwich", res.sandwich},
                       {"x_hat_in_argmax", res.x_hat_in_argmax},
                       {"bar_is_largest", res.bar_is_largest},
                       {"universal_bound", res.universal_bound}};
  }
  out.emit(doc);
  return exit_code(res.status);
}

void write_path_csv(const Output& out, const std::string& name, const mcs::DynamicScenario& S,
                    const std::vector<int>& reported) {
  const mcs::GridLattice& L = S.L();
  std::vector<std::string> rows;
  int prev = mcs::resolve_x0(S);
  for (std::size_t i = 0; i < reported.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    const int cur = reported[i];
    const double payoff = (*S.objective)(cur, S.theta_at(t));
    const double cost = S.cost_at(t)(mcs::vec_sub(L.coords(cur), L.coords(prev)));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", payoff, cost);
    rows.push_back(std::to_string(t) + "," + csv_coords(L.coords(cur)) + "," + buf);
    prev = cur;
  }
  out.write_csv(name, "t," + coord_header("x", L.dims()) + ",period_payoff,period_cost", rows);
}

int cmd_solve_dynamic(const std::string& config, const std::string& risk, const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  const mcs::DynamicScenario& S = need_dynamic(sc);

  if (sc.lottery) {
    mcs::LotteryPath lots;
    mcs::CostLottery lot = *sc.lottery;
    if (!risk.empty()) lot.utility = utility_from_flag(risk);
    for (int t = 0; t < S.prefix_len(); ++t) lots.prefix.push_back(lot);
    lots.tail = lot;
    mcs::TheoremReport rep = mcs::theorem3_prime_check(S, lots);
    json doc = theorem_report_to_json(rep);
    doc["command"] = "solve-dynamic";
    out.emit(doc);
    return exit_code(rep.status);
  }

  mcs::DynamicSolution sol = mcs::solve_dynamic(S);
  const std::vector<int> reported = sol.path.reported(S.horizon.periods);
  json doc;
  doc["command"] = "solve-dynamic";
  doc["value"] = sol.path.value;
  doc["path"] = points_json(S.L(), reported);
  if (sol.path.continuation >= 0) {
    doc["continuation"] = S.L().coords(sol.path.continuation);
    doc["verdicts"] = {{"bellman_residual", sol.bellman_residual},
                       {"vi_iterations", sol.vi_iterations}};
  }
  write_path_csv(out, "solve_dynamic_path.csv", S, reported);
  out.emit(doc);
  return 0;
}

int cmd_solve_myopic(const std::string& config, const std::string& mode, const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  const mcs::DynamicScenario& S = need_dynamic(sc);
  const mcs::EquilibriumMode m =
      mode == "monotone" ? mcs::EquilibriumMode::Monotone : mcs::EquilibriumMode::Caged;
  mcs::EquilibriumSequence eq = mcs::equilibrium_sequence(S, m);
  json doc;
  doc["command"] = "solve-myopic";
  doc["mode"] = mode;
  doc["status"] = to_string(eq.status);
  json fails = json::array();
  for (const auto& f : eq.hypothesis_failures) fails.push_back(property_report_to_json(f));
  doc["hypothesis_failures"] = std::move(fails);
  if (eq.status != CheckStatus::HypothesisRejected) {
    doc["path"] = points_json(S.L(), eq.points);
    doc["bounds_ok"] = eq.bounds_ok;
    doc["x_initial"] = S.L().coords(eq.x_initial);
    doc["x_bar"] = S.L().coords(eq.x_bar);
    if (eq.continuation >= 0) doc["continuation"] = S.L().coords(eq.continuation);
    write_path_csv(out, "solve_myopic_path.csv", S, eq.points);
  }
  out.emit(doc);
  return exit_code(eq.status);
}

int cmd_compare_horizons(const std::string& config, const Output& out) {
  mcs::Scenario sc = mcs::load_scenario_file(config);
  const mcs::DynamicScenario& S = need_dynamic(sc);
  mcs::TheoremReport rep = mcs::theorem6_check(S);
  json doc = theorem_report_to_json(rep);
  doc["command"] = "compare-horizons";
  if (rep.status != CheckStatus::HypothesisRejected) {
    mcs::EquilibriumSequence eq = mcs::equilibrium_sequence(S, mcs::EquilibriumMode::Monotone);
    const int x0 = mcs::resolve_x0(S);
    const mcs::PeriodTables T = mcs::build_tables(S);
    mcs::DynamicSolution sol = mcs::dp_solve(T, x0);
    mcs::Path fwd = mcs::sandwich_transform(T, S.L(), x0, sol.path, x0, eq.x_bar);
    const std::vector<int> me = eq.points;
    const std::vector<int> fw = fwd.reported(S.horizon.periods);
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < me.size() && i < fw.size(); ++i)
      rows.push_back(std::to_string(i + 1) + "," + csv_coords(S.L().coords(me[i])) + "," +
                     csv_coords(S.L().coords(fw[i])));
    out.write_csv("compare_horizons.csv",
                  "t," + coord_header("myopic_x", S.L().dims()) + "," +
                      coord_header("forward_x", S.L().dims()),
                  rows);
  }
  out.emit(doc);
  return exit_code(rep.status);
}

int cmd_verify(const std::string& theorem, int count, std::uint64_t seed, const Output& out) {
  json doc;
  doc["command"] = "verify";
  bool all_passed = true;
  if (theorem == "all") {
    json suites = json::array();
    for (const std::string& name : mcs::suite_names()) {
      mcs::SuiteReport rep = mcs::run_suite(name, count, seed);
      all_passed = all_passed && rep.violations == 0 && rep.hypothesis_rejections == 0;
      suites.push_back(rep.to_json());
    }
    doc["suites"] = std::move(suites);
  } else {
    mcs::SuiteReport rep = mcs::run_suite(theorem, count, seed);
    all_passed = rep.violations == 0 && rep.hypothesis_rejections == 0;
    doc["suite"] = rep.to_json();
  }
  doc["passed"] = all_passed;
  out.emit(doc);
  return all_passed ? 0 : 3;
}

int cmd_fixtures(const Output& out) {
  json doc;
  doc["command"] = "fixtures";
  bool all = true;
  json list = json::array();
  for (const mcs::Fixture& f : mcs::fixtures()) {
    mcs::TheoremReport rep = f.run();
    all = all && rep.holds();
    json row = theorem_report_to_json(rep);
    row["name"] = f.name;
    row["summary"] = f.summary;
    list.push_back(std::move(row));
  }
  doc["fixtures"] = std::move(list);
  doc["passed"] = all;
  out.emit(doc);
  return all ? 0 : 3;
}

int cmd_demo(const std::string& model, const Output& out) {
  json doc;
  doc["command"] = "demo";
  doc["model"] = model;

  if (model == "pricing") {
    mcs::PricingSpec spec;
    for (double p = 2.0; p <= 4.01; p += 0.25) spec.price_grid.push_back(p);
    spec.demand = "linear";
    spec.intercept = 10.0;
    spec.marginal_costs = {1.0, 2.0};
    spec.elasticities = {2.0, 2.0};
    spec.adjustment = mcs::CostFunction::separable({mcs::Cost1d::quadratic(2.0)});
    mcs::BuiltModel m = mcs::build_pricing(spec);
    mcs::TheoremReport rep = mcs::theorem4_check(*m.dynamic);
    doc["theorem4"] = theorem_report_to_json(rep);
    bool increasing = true;
    const auto& path = rep.paths.back().second;
    for (std::size_t i = 1; i < path.size(); ++i) increasing = increasing && path[i - 1] <= path[i];
    doc["verdicts"] = {{"price_path_increasing", increasing},
                       {"status", to_string(rep.status)}};
    out.emit(doc);
    return exit_code(rep.status);
  }

  if (model == "factor-demand") {
    mcs::FactorDemandSpec spec;
    spec.capital_grid = {0.5, 1.0, 1.5, 2.0};
    spec.labor_grid = {0.5, 1.0, 1.5, 2.0};
    spec.technology = "ces";
    spec.scale = 2.0;
    spec.rho = 2.0;
    spec.rental = 0.9;
    spec.wages = {1.2, 0.7};
    spec.substitutes = true;
    spec.adjustment = mcs::CostFunction::separable(
        {mcs::Cost1d::quadratic(0.8), mcs::Cost1d::quadratic(0.8)});
    mcs::BuiltModel m = mcs::build_factor_demand(spec);
    mcs::LeChatelierResult res = mcs::theorem2_select(m.problem);
    // Flip back to natural (k, l) coordinates for reporting.
    auto unflip = [&](int id) {
      mcs::Vec v = m.problem.L().coords(id);
      v[0] = -v[0];
      return v;
    };
    const mcs::Vec x0 = unflip(res.x_initial), xh = unflip(res.x_hat), xb = unflip(res.x_bar);
    doc["x_initial"] = x0;
    doc["x_hat_short_run"] = xh;
    doc["x_bar_long_run"] = xb;
    const bool labor_up = xh[1] >= x0[1] && xb[1] >= xh[1];
    const bool capital_down = xh[0] <= x0[0] && xb[0] <= xh[0];
    doc["verdicts"] = {{"labor_up", labor_up},
                       {"capital_down", capital_down},
                       {"status", to_string(res.status)}};
    out.emit(doc);
    if (res.status != CheckStatus::Holds) return exit_code(res.status);
    return labor_up && capital_down ? 0 : 3;
  }

  if (model == "labor") {
    mcs::LaborSupplySpec spec;
    spec.hours_grid = {0, 8, 16, 24, 32, 40};
    spec.wage = 1.0;
    spec.rate_initial = 0.5;
    spec.rate_new = 0.3;
    spec.disutility_scale = 0.012;
    spec.disutility_power = 2.0;
    spec.adjustment = mcs::CostFunction::separable({mcs::Cost1d::quadratic(0.01)});
    mcs::BuiltModel m = mcs::build_labor_supply(spec);
    mcs::TheoremReport rep = mcs::theorem4_check(*m.dynamic);
    doc["theorem4"] = theorem_report_to_json(rep);
    out.emit(doc);
    return exit_code(rep.status);
  }

  if (model == "investment") {
    mcs::InvestmentSpec spec;
    spec.capital_grid = {0, 1, 2, 3, 4, 5};
    spec.alpha = 0.5;
    spec.output_prices = {1.0, 1.0};
    spec.productivity = {1.0, 1.6};
    spec.rentals = {0.5, 0.5};
    spec.adjustment = mcs::CostFunction::separable({mcs::Cost1d::lumpy(0.05, 3.0)});
    mcs::BuiltModel m = mcs::build_investment(spec);
    mcs::SelectResult basic = mcs::theorem1_select(m.problem);
    mcs::LeChatelierResult lc = mcs::theorem2_select(m.problem);
    doc["theorem1_status"] = to_string(basic.status);
    doc["theorem2_status"] = to_string(lc.status);
    json gate = json::array();
    for (const auto& f : lc.hypothesis_failures) gate.push_back(property_report_to_json(f));
    doc["theorem2_gate"] = std::move(gate);
    const bool expected = basic.status == CheckStatus::Holds &&
                          lc.status == CheckStatus::HypothesisRejected;
    doc["verdicts"] = {{"basic_holds_lechatelier_gated", expected}};
    out.emit(doc);
    return expected ? 0 : 3;
  }

  if (model == "wishful") {
    mcs::WishfulSpec spec;
    spec.wealth = 1.0;
    spec.interest = 0.25;
    spec.consumption_points = 6;
    spec.outcomes = {0.0, 1.0, 2.0};
    spec.beliefs = {{0.5, 0.8, 1.0}, {0.3, 0.6, 1.0}, {0.2, 0.5, 1.0}, {0.4, 0.55, 1.0}};
    spec.realist_index = 0;
    spec.kl_scale = 0.2;
    mcs::WishfulModel m = mcs::build_wishful(spec);
    mcs::TheoremReport rep = mcs::wishful_check(m);
    doc["report"] = theorem_report_to_json(rep);
    out.emit(doc);
    return exit_code(rep.status);
  }

  throw mcs::ConfigError("demo", "unknown model '" + model +
                                     "' (pricing, factor-demand, labor, investment, wishful)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-lattice monotone comparative statics with adjustment costs"};
  app.require_subcommand(1);

  Output out;
  if (const char* env = std::getenv("MCS_OUT_DIR")) out.out_dir = env;
  int jobs = 1;
  app.add_option("--out", out.out_dir, "directory for CSV emissions");
  app.add_option("--jobs", jobs, "worker cap (the engine is deterministic regardless)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--pretty", out.pretty, "indent the JSON summary");

  std::string config, risk, mode = "caged", theorem = "all", model;
  bool unsafe = false;
  int count = 100;
  std::uint64_t seed = 1;

  CLI::App* props = app.add_subcommand("check-properties", "run every property decision procedure");
  props->add_option("config", config)->required();

  CLI::App* sstatic = app.add_subcommand("solve-static", "one-shot adjusted maximization");
  sstatic->add_option("config", config)->required();
  sstatic->add_flag("--unsafe", unsafe, "skip the hypothesis gate (counterexample mode)");
  sstatic->add_option("--risk", risk, "utility family when a lottery block is present");

  CLI::App* lech = app.add_subcommand("lechatelier", "short-run vs long-run comparison");
  lech->add_option("config", config)->required();
  lech->add_flag("--unsafe", unsafe);

  CLI::App* sdyn = app.add_subcommand("solve-dynamic", "forward-looking adjustment path");
  sdyn->add_option("config", config)->required();
  sdyn->add_option("--risk", risk);

  CLI::App* smyo = app.add_subcommand("solve-myopic", "short-lived-agent equilibrium sequence");
  smyo->add_option("config", config)->required();
  smyo->add_option("--mode", mode, "caged or monotone")->check(CLI::IsMember({"caged", "monotone"}));

  CLI::App* cmp = app.add_subcommand("compare-horizons", "myopic vs forward-looking paths");
  cmp->add_option("config", config)->required();

  CLI::App* verify = app.add_subcommand("verify", "theorem-oracle suites on generated instances");
  verify->add_option("theorem", theorem, "suite name or 'all'");
  verify->add_option("--count", count, "instances per suite");
  verify->add_option("--seed", seed, "generator seed");

  CLI::App* fix = app.add_subcommand("fixtures", "reproduce the registered counterexamples");

  CLI::App* demo = app.add_subcommand("demo", "built-in application models");
  demo->add_option("model", model)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (props->parsed()) return cmd_check_properties(config, out);
    if (sstatic->parsed()) return cmd_solve_static(config, unsafe, risk, out);
    if (lech->parsed()) return cmd_lechatelier(config, unsafe, out);
    if (sdyn->parsed()) return cmd_solve_dynamic(config, risk, out);
    if (smyo->parsed()) return cmd_solve_myopic(config, mode, out);
    if (cmp->parsed()) return cmd_compare_horizons(config, out);
    if (verify->parsed()) return cmd_verify(theorem, count, seed, out);
    if (fix->parsed()) return cmd_fixtures(out);
    if (demo->parsed()) return cmd_demo(model, out);
  } catch (const mcs::ConfigError& e) {
    std::cerr << "input error at " << e.path() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
