#include "mcs/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcs {

int DynamicScenario::theta_at(int t) const {
  return t <= prefix_len() ? theta_prefix[t - 1] : theta_tail;
}

void DynamicScenario::validate() const {
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("dynamic: discount factor must lie in (0, 1)");
  if (theta_prefix.size() != cost_prefix.size())
    throw std::invalid_argument("dynamic: parameter prefix has " +
                                std::to_string(theta_prefix.size()) + " periods but cost prefix has " +
                                std::to_string(cost_prefix.size()));
  const int T = poset().size();
  auto check_theta = [&](int th, const std::string& what) {
    if (th < 0 || th >= T)
      throw std::invalid_argument("dynamic: " + what + " parameter index " + std::to_string(th) +
                                  " is out of range");
  };
  check_theta(theta_initial, "initial");
  check_theta(theta_target, "target");
  check_theta(theta_tail, "tail");
  for (int th : theta_prefix) check_theta(th, "prefix");
  const int n = lattice->dims();
  for (int t = 1; t <= prefix_len() + 1; ++t) {
    const CostFunction& c = cost_at(t);
    if (c.dims() != n)
      throw std::invalid_argument("dynamic: period-" + std::to_string(t) +
                                  " cost has wrong dimension");
    if (!(c(Vec(n, 0.0)) < kInf))
      throw std::invalid_argument("dynamic: period-" + std::to_string(t) + " cost has C(0) = inf");
  }
  if (horizon.periods < 1) throw std::invalid_argument("dynamic: horizon must be >= 1");
  if (x0 && (*x0 < 0 || *x0 >= lattice->size()))
    throw std::invalid_argument("dynamic: initial point id is out of range");
}

int resolve_x0(const DynamicScenario& S) {
  ArgmaxSet fmax = argmax_over(S.lattice->all_ids(),
                               [&](int i) { return (*S.objective)(i, S.theta_initial); });
  if (S.x0) {
    if (!fmax.contains(*S.x0))
      throw std::invalid_argument("dynamic: supplied initial point " +
                                  seq_str(S.L().coords(*S.x0)) +
                                  " does not maximize F at the initial parameter");
    return *S.x0;
  }
  return fmax.points.front();
}

PeriodTables build_tables(const DynamicScenario& S) {
  PeriodTables T;
  const GridLattice& L = S.L();
  T.m = L.size();
  T.delta = S.delta;
  T.horizon = S.horizon;
  T.vi_tol = S.vi_tol;
  T.vi_cap = S.vi_cap;
  auto fill = [&](int theta, const CostFunction& C) {
    std::vector<double> r(static_cast<std::size_t>(T.m) * T.m);
    for (int from = 0; from < T.m; ++from)
      for (int to = 0; to < T.m; ++to) {
        const double c = C(vec_sub(L.coords(to), L.coords(from)));
        r[static_cast<std::size_t>(from) * T.m + to] =
            c < kInf ? (*S.objective)(to, theta) - c : -kInf;
      }
    return r;
  };
  for (int t = 1; t <= S.prefix_len(); ++t) T.prefix.push_back(fill(S.theta_at(t), S.cost_at(t)));
  T.tail = fill(S.theta_tail, S.cost_tail);
  return T;
}

std::vector<int> Path::reported(int horizon) const {
  std::vector<int> out = points;
  if (static_cast<int>(out.size()) > horizon) out.resize(horizon);
  while (continuation >= 0 && static_cast<int>(out.size()) < horizon) out.push_back(continuation);
  return out;
}

namespace {

struct Stationary {
  std::vector<double> V;
  std::vector<int> policy;
  double residual = 0;
  long iterations = 0;
};

// Exact discounted value of a deterministic policy: follow each orbit to a
// previously solved state or around its cycle.
std::vector<double> eval_policy(const std::vector<int>& pi, const std::vector<double>& r, int m,
                                double delta) {
  std::vector<double> V(m, 0.0);
  std::vector<char> state(m, 0);  // 0 new, 1 on current chain, 2 done
  std::vector<int> chain;
  auto reward = [&](int from) { return r[static_cast<std::size_t>(from) * m + pi[from]]; };
  for (int s0 = 0; s0 < m; ++s0) {
    if (state[s0] == 2) continue;
    chain.clear();
    int s = s0;
    while (state[s] == 0) {
      state[s] = 1;
      chain.push_back(s);
      s = pi[s];
    }
    if (state[s] == 1) {
      auto it = std::find(chain.begin(), chain.end(), s);
      const int k = static_cast<int>(chain.end() - it);
      double num = 0, disc = 1;
      for (auto c = it; c != chain.end(); ++c) {
        num += disc * reward(*c);
        disc *= delta;
      }
      V[*it] = num / (1.0 - std::pow(delta, k));
      state[*it] = 2;
      for (auto c = chain.end() - 1; c != it; --c) {
        V[*c] = reward(*c) + delta * V[pi[*c]];
        state[*c] = 2;
      }
      chain.erase(it, chain.end());
    }
    for (auto c = chain.rbegin(); c != chain.rend(); ++c) {
      V[*c] = reward(*c) + delta * V[pi[*c]];
      state[*c] = 2;
    }
  }
  return V;
}

Stationary solve_stationary(const std::vector<double>& r, int m, double delta, double tol,
                            long cap) {
  std::vector<double> V(m, 0.0), W(m);
  long it = 0;
  for (;;) {
    double diff = 0;
    for (int x = 0; x < m; ++x) {
      double best = -kInf;
      const double* row = &r[static_cast<std::size_t>(x) * m];
      for (int y = 0; y < m; ++y) {
        if (row[y] == -kInf) continue;
        const double v = row[y] + delta * V[y];
        if (v > best) best = v;
      }
      if (best == -kInf)
        throw std::runtime_error("dynamic: state " + std::to_string(x) +
                                 " has no feasible transition");
      W[x] = best;
      diff = std::max(diff, std::fabs(W[x] - V[x]));
    }
    V.swap(W);
    ++it;
    if (diff < tol) break;
    if (it >= cap)
      throw std::runtime_error("dynamic: value iteration did not converge within the iteration cap");
  }

  auto greedy = [&](const std::vector<double>& Vv) {
    std::vector<int> pi(m, -1);
    for (int x = 0; x < m; ++x) {
      double best = -kInf;
      const double* row = &r[static_cast<std::size_t>(x) * m];
      for (int y = 0; y < m; ++y) {
        if (row[y] == -kInf) continue;
        const double v = row[y] + delta * Vv[y];
        if (v > best) {
          best = v;
          pi[x] = y;
        }
      }
    }
    return pi;
  };

  // Policy-iteration polish: exact evaluation makes the Bellman residual
  // collapse to float noise instead of the value-iteration tolerance.
  std::vector<int> pi = greedy(V);
  for (int round = 0; round < 1000; ++round) {
    std::vector<double> Vpi = eval_policy(pi, r, m, delta);
    std::vector<int> next = greedy(Vpi);
    V = std::move(Vpi);
    if (next == pi) break;
    pi = std::move(next);
  }

  Stationary out;
  out.V = std::move(V);
  out.policy = std::move(pi);
  out.iterations = it;
  for (int x = 0; x < m; ++x) {
    double best = -kInf;
    const double* row = &r[static_cast<std::size_t>(x) * m];
    for (int y = 0; y < m; ++y)
      if (row[y] != -kInf) best = std::max(best, row[y] + delta * out.V[y]);
    out.residual = std::max(out.residual, std::fabs(best - out.V[x]));
  }
  return out;
}

int greedy_step(const std::vector<double>& r, int m, double delta, const std::vector<double>& Vnext,
                int from) {
  double best = -kInf;
  int arg = -1;
  const double* row = &r[static_cast<std::size_t>(from) * m];
  for (int y = 0; y < m; ++y) {
    if (row[y] == -kInf) continue;
    const double v = row[y] + delta * Vnext[y];
    if (v > best) {
      best = v;
      arg = y;
    }
  }
  if (arg < 0)
    throw std::runtime_error("dynamic: state " + std::to_string(from) +
                             " has no feasible transition");
  return arg;
}

}  // namespace

double path_value(const PeriodTables& T, int x0, const std::vector<int>& points) {
  double value = 0, disc = 1;
  int prev = x0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = T.payoff(static_cast<int>(i) + 1, prev, points[i]);
    if (r == -kInf) return -kInf;
    value += disc * r;
    disc *= T.delta;
    prev = points[i];
  }
  if (!T.horizon.is_finite()) {
    // Constant from the last entry onwards.
    const double stay = T.tail[static_cast<std::size_t>(prev) * T.m + prev];
    if (stay == -kInf) return -kInf;
    value += disc * stay / (1.0 - T.delta);
  }
  return value;
}

DynamicSolution dp_solve(const PeriodTables& T, int x0) {
  const int m = T.m;
  const int P = T.prefix_len();
  DynamicSolution sol;

  if (T.horizon.is_finite()) {
    const int K = T.horizon.periods;
    // W[t] = value from period t+1 on; W[K] = 0.
    std::vector<std::vector<double>> W(K + 1, std::vector<double>(m, 0.0));
    for (int t = K; t >= 1; --t) {
      const std::vector<double>& r = t <= P ? T.prefix[t - 1] : T.tail;
      for (int x = 0; x < m; ++x) {
        double best = -kInf;
        const double* row = &r[static_cast<std::size_t>(x) * m];
        for (int y = 0; y < m; ++y) {
          if (row[y] == -kInf) continue;
          const double v = row[y] + T.delta * W[t][y];
          if (v > best) best = v;
        }
        if (best == -kInf)
          throw std::runtime_error("dynamic: state " + std::to_string(x) +
                                   " has no feasible transition");
        W[t - 1][x] = best;
      }
    }
    int cur = x0;
    for (int t = 1; t <= K; ++t) {
      const std::vector<double>& r = t <= P ? T.prefix[t - 1] : T.tail;
      cur = greedy_step(r, m, T.delta, W[t], cur);
      sol.path.points.push_back(cur);
    }
    sol.path.continuation = -1;
    sol.path.value = W[0][x0];
    return sol;
  }

  Stationary st = solve_stationary(T.tail, m, T.delta, T.vi_tol, T.vi_cap);
  sol.stationary_value = st.V;
  sol.bellman_residual = st.residual;
  sol.vi_iterations = st.iterations;

  // Backward induction across the transient prefix; W[t] covers period t+1 on.
  std::vector<std::vector<double>> W(P + 1);
  W[P] = st.V;
  for (int t = P; t >= 1; --t) {
    W[t - 1].assign(m, -kInf);
    for (int x = 0; x < m; ++x) {
      double best = -kInf;
      const double* row = &T.prefix[t - 1][static_cast<std::size_t>(x) * m];
      for (int y = 0; y < m; ++y) {
        if (row[y] == -kInf) continue;
        const double v = row[y] + T.delta * W[t][y];
        if (v > best) best = v;
      }
      if (best == -kInf)
        throw std::runtime_error("dynamic: state " + std::to_string(x) +
                                 " has no feasible transition");
      W[t - 1][x] = best;
    }
  }

  int cur = x0;
  for (int t = 1; t <= P; ++t) {
    cur = greedy_step(T.prefix[t - 1], m, T.delta, W[t], cur);
    sol.path.points.push_back(cur);
  }
  std::vector<char> seen(m, 0);
  for (;;) {
    if (static_cast<int>(sol.path.points.size()) > P + m + 1)
      throw std::runtime_error("dynamic: stationary policy does not absorb");
    const int next = st.policy[cur];
    sol.path.points.push_back(next);
    if (next == cur) {
      sol.path.continuation = next;
      break;
    }
    if (seen[next])
      throw std::runtime_error(
          "dynamic: stationary policy cycles instead of absorbing; refusing to guess a continuation");
    seen[next] = 1;
    cur = next;
  }
  sol.path.value = path_value(T, x0, sol.path.points);
  return sol;
}

DynamicSolution solve_dynamic(const DynamicScenario& S) {
  S.validate();
  const PeriodTables T = build_tables(S);
  return dp_solve(T, resolve_x0(S));
}

namespace {

Path transformed(const PeriodTables& T, int x0, const Path& p, const std::vector<int>& pts) {
  Path q;
  q.points = pts;
  q.continuation = p.continuation >= 0 ? pts.back() : -1;
  q.value = path_value(T, x0, q.points);
  return q;
}

}  // namespace

Path sandwich_transform(const PeriodTables& T, const GridLattice& L, int x0, const Path& p,
                        int x_lo, int x_bar) {
  std::vector<int> pts;
  pts.reserve(p.points.size());
  for (int x : p.points) pts.push_back(L.meet(x_bar, L.join(x_lo, x)));
  return transformed(T, x0, p, pts);
}

Path sandwich_transform(const DynamicScenario& S, const Path& p, int x_lo, int x_bar) {
  return sandwich_transform(build_tables(S), S.L(), resolve_x0(S), p, x_lo, x_bar);
}

Path monotonize(const PeriodTables& T, const GridLattice& L, int x0, const Path& p) {
  std::vector<int> pts;
  pts.reserve(p.points.size());
  int acc = -1;
  for (int x : p.points) {
    acc = acc < 0 ? x : L.join(acc, x);
    pts.push_back(acc);
  }
  return transformed(T, x0, p, pts);
}

Path monotonize(const DynamicScenario& S, const Path& p) {
  return monotonize(build_tables(S), S.L(), resolve_x0(S), p);
}

BarSelection longrun_bar(const DynamicScenario& S, int x0) {
  const GridLattice& L = S.L();
  ArgmaxSet fmax =
      argmax_over(L.all_ids(), [&](int i) { return (*S.objective)(i, S.theta_target); });
  int top = fmax.points.front();
  for (int id : fmax.points) top = L.join(top, id);
  if (fmax.contains(top)) return {top, true};
  return {L.join(x0, fmax.points.front()), false};
}

namespace {

void theta_bound_failures(const DynamicScenario& S, std::vector<PropertyReport>& failures,
                          bool require_increasing, bool require_stationary_target) {
  const ParamPoset& P = S.poset();
  auto bad = [&](const std::string& what) {
    PropertyReport r;
    r.property = "theta_path_bounds";
    r.holds = false;
    r.detail = what;
    failures.push_back(std::move(r));
  };
  if (!P.leq(S.theta_initial, S.theta_target))
    bad("theta_initial is not below theta_target");
  for (int t = 1; t <= S.prefix_len() + 1; ++t) {
    const int th = S.theta_at(t);
    if (!P.leq(S.theta_initial, th) || !P.leq(th, S.theta_target)) {
      bad("period-" + std::to_string(t) + " parameter escapes [theta_initial, theta_target]");
      break;
    }
  }
  if (require_increasing) {
    for (int t = 1; t <= S.prefix_len(); ++t)
      if (!P.leq(S.theta_at(t), S.theta_at(t + 1))) {
        bad("parameter path is not increasing at period " + std::to_string(t));
        break;
      }
  }
  if (require_stationary_target) {
    bool stationary = S.prefix_len() == 0 && S.theta_tail == S.theta_target;
    for (int th : S.theta_prefix)
      if (th != S.theta_target) stationary = false;
    if (S.prefix_len() > 0) stationary = false;
    if (!stationary) {
      PropertyReport r;
      r.property = "time_invariance";
      r.holds = false;
      r.detail = "requires an empty transient prefix and tail parameter equal to theta_target";
      failures.push_back(std::move(r));
    }
  }
}

void cost_failures(const DynamicScenario& S, std::vector<PropertyReport>& failures,
                   bool need_separable, bool need_convex) {
  const DiffSet D = DiffSet::of(S.L());
  for (int t = 1; t <= S.prefix_len() + 1; ++t) {
    const CostFunction& C = S.cost_at(t);
    const std::string tag = t <= S.prefix_len() ? "period " + std::to_string(t) : "tail";
    PropertyReport c0 = check_cost_c0_finite(C, S.L().dims());
    if (!c0.holds) {
      c0.detail += " (" + tag + ")";
      failures.push_back(std::move(c0));
    }
    PropertyReport mono = check_cost_monotone(C, D, S.tol);
    if (!mono.holds) {
      mono.detail += " (" + tag + ")";
      failures.push_back(std::move(mono));
    }
    if (need_separable) {
      PropertyReport sep = check_cost_separable(C, D);
      if (!sep.holds) {
        sep.detail += " (" + tag + ")";
        failures.push_back(std::move(sep));
      }
    }
    if (need_convex) {
      PropertyReport cvx = check_cost_convex_per_dim(C, D, S.tol);
      if (!cvx.holds) {
        cvx.detail += " (" + tag + ")";
        failures.push_back(std::move(cvx));
      }
    }
  }
}

std::vector<Vec> coords_of(const GridLattice& L, const std::vector<int>& pts) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (int id : pts) out.push_back(L.coords(id));
  return out;
}

}  // namespace

TheoremReport theorem3_check(const DynamicScenario& S, std::optional<int> x_bar,
                             bool skip_hypotheses) {
  S.validate();
  TheoremReport rep;
  rep.theorem = "thm3";

  std::vector<PropertyReport> failures;
  PropertyReport qsm = check_objective_quasi_supermodular(*S.objective, S.tol);
  if (!qsm.holds) failures.push_back(std::move(qsm));
  PropertyReport scd = check_single_crossing_differences(*S.objective, false, S.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  cost_failures(S, failures, false, false);
  theta_bound_failures(S, failures, false, false);
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);

  const GridLattice& L = S.L();
  const int x0 = resolve_x0(S);
  int bar = x_bar ? *x_bar : longrun_bar(S, x0).x_bar;
  if (!L.leq(x0, bar))
    throw std::invalid_argument("thm3: the long-run point must lie above the initial choice");
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_bar", L.coords(bar));

  const PeriodTables T = build_tables(S);
  DynamicSolution sol = dp_solve(T, x0);
  Path sandwiched = sandwich_transform(T, L, x0, sol.path, x0, bar);
  rep.paths.emplace_back("solved", coords_of(L, sol.path.reported(S.horizon.periods)));
  rep.paths.emplace_back("sandwiched", coords_of(L, sandwiched.reported(S.horizon.periods)));

  const double scale = std::max(1.0, std::fabs(sol.path.value));
  const bool value_ok = std::fabs(sandwiched.value - sol.path.value) <= S.value_tol * scale;
  bool bounds_ok = true;
  for (int x : sandwiched.points)
    if (!L.leq(x0, x) || !L.leq(x, bar)) bounds_ok = false;
  if (sandwiched.continuation >= 0)
    bounds_ok = bounds_ok && L.leq(x0, sandwiched.continuation) &&
                L.leq(sandwiched.continuation, bar);

  if (!value_ok || !bounds_ok) {
    rep.status = CheckStatus::Violated;
    rep.detail = !value_ok ? "sandwich transform lost value: " + std::to_string(sol.path.value) +
                                 " -> " + std::to_string(sandwiched.value)
                           : "sandwiched path escapes [x_initial, x_bar]";
    return rep;
  }
  rep.detail = "sandwiched path is optimal and stays inside [x_initial, x_bar]";
  return rep;
}

TheoremReport theorem4_check(const DynamicScenario& S, bool skip_hypotheses) {
  S.validate();
  TheoremReport rep;
  rep.theorem = "thm4";

  std::vector<PropertyReport> failures;
  PropertyReport spm = check_objective_supermodular(*S.objective, S.tol);
  if (!spm.holds) failures.push_back(std::move(spm));
  PropertyReport scd = check_single_crossing_differences(*S.objective, false, S.tol);
  if (!scd.holds) failures.push_back(std::move(scd));
  cost_failures(S, failures, true, false);
  theta_bound_failures(S, failures, false, true);
  if (!skip_hypotheses && !failures.empty()) {
    rep.status = CheckStatus::HypothesisRejected;
    rep.hypothesis_failures = std::move(failures);
    return rep;
  }
  rep.hypothesis_failures = std::move(failures);
  rep.note("BCS holds automatically on a finite lattice");

  const GridLattice& L = S.L();
  const int x0 = resolve_x0(S);
  const int bar = longrun_bar(S, x0).x_bar;
  rep.add_point("x_initial", L.coords(x0));
  rep.add_point("x_bar", L.coords(bar));

  const PeriodTables T = build_tables(S);
  DynamicSolution sol = dp_solve(T, x0);
  Path sandwiched = sandwich_transform(T, L, x0, sol.path, x0, bar);
  Path mono = monotonize(T, L, x0, sandwiched);
  rep.paths.emplace_back("solved", coords_of(L, sol.path.reported(S.horizon.periods)));
  rep.paths.emplace_back("monotone", coords_of(L, mono.reported(S.horizon.periods)));

  const double scale = std::max(1.0, std::fabs(sol.path.value));
  const bool value_ok = std::fabs(mono.value - sol.path.value) <= S.value_tol * scale;
  bool bounds_ok = true;
  for (std::size_t i = 0; i < mono.points.size(); ++i) {
    if (!L.leq(x0, mono.points[i]) || !L.leq(mono.points[i], bar)) bounds_ok = false;
    if (i + 1 < mono.points.size() && !L.leq(mono.points[i], mono.points[i + 1])) bounds_ok = false;
  }

  if (!value_ok || !bounds_ok) {
    rep.status = CheckStatus::Violated;
    rep.detail = !value_ok ? "monotonization lost value: " + std::to_string(sol.path.value) +
                                 " -> " + std::to_string(mono.value)
                           : "monotonized path is not an increasing sandwich";
    return rep;
  }
  rep.detail = "monotonized path is optimal, increasing, and stays inside [x_initial, x_bar]";
  return rep;
}

}  // namespace mcs
