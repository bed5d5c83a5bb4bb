#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mcs/dynamic.hpp"

// Shared test oracles. Everything in here is deliberately written as a
// SECOND, independent route: plain loops over raw definitions, no reuse of the
// library's own argmax / order machinery.

namespace oracle {

inline mcs::LatticePtr grid(std::vector<mcs::Vec> axes) {
  return std::make_shared<const mcs::GridLattice>(mcs::GridLattice::product(std::move(axes)));
}

inline mcs::PosetPtr chain(int n) {
  return std::make_shared<const mcs::ParamPoset>(mcs::ParamPoset::chain(n));
}

// Independent full scan: max value then members attaining it.
inline std::pair<double, std::vector<int>> scan_argmax(int count,
                                                       const std::function<double(int)>& f) {
  double best = -mcs::kInf;
  for (int i = 0; i < count; ++i) {
    const double v = f(i);
    if (v > best) best = v;
  }
  std::vector<int> points;
  for (int i = 0; i < count; ++i)
    if (f(i) == best) points.push_back(i);
  return {best, points};
}

// Strong set order straight from the definition.
inline bool strong_geq_pairwise(const mcs::GridLattice& L, const std::vector<int>& X,
                                const std::vector<int>& Y) {
  auto member = [](const std::vector<int>& S, int id) {
    for (int s : S)
      if (s == id) return true;
    return false;
  };
  for (int x : X)
    for (int y : Y) {
      if (!member(X, L.join(x, y))) return false;
      if (!member(Y, L.meet(x, y))) return false;
    }
  return true;
}

// Every path of length `horizon` through the member ids, valued with the same
// backward accumulation the solver uses. Returns the best value.
inline double best_path_by_enumeration(const mcs::PeriodTables& T, int x0, int horizon) {
  const int m = T.m;
  double best = -mcs::kInf;
  std::vector<int> path(horizon, 0);
  for (;;) {
    double value = 0;
    for (int t = horizon; t >= 1; --t) {
      const int prev = t == 1 ? x0 : path[t - 2];
      const double r = T.payoff(t, prev, path[t - 1]);
      value = r == -mcs::kInf ? -mcs::kInf : r + T.delta * value;
      if (value == -mcs::kInf) break;
    }
    if (value > best) best = value;
    int d = horizon - 1;
    while (d >= 0 && ++path[d] == m) path[d--] = 0;
    if (d < 0) break;
  }
  return best;
}

}  // namespace oracle
