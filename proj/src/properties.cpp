#include "mcs/properties.hpp"

#include <algorithm>
#include <cmath>

namespace mcs {

namespace {

PropertyReport pass(std::string name) {
  PropertyReport r;
  r.property = std::move(name);
  r.holds = true;
  return r;
}

PropertyReport fail(std::string name, std::string detail) {
  PropertyReport r;
  r.property = std::move(name);
  r.holds = false;
  r.detail = std::move(detail);
  return r;
}

// eps' lies between 0 and eps: in each dimension, 0 <= eps'_i <= eps_i or
// 0 >= eps'_i >= eps_i.
bool between_zero_and(const Vec& mid, const Vec& eps) {
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const bool up = 0 <= mid[i] && mid[i] <= eps[i];
    const bool down = 0 >= mid[i] && mid[i] >= eps[i];
    if (!up && !down) return false;
  }
  return true;
}

Vec clamp_up(const Vec& eps) {  // eps ∨ 0
  Vec r(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) r[i] = std::max(eps[i], 0.0);
  return r;
}

Vec clamp_down(const Vec& eps) {  // eps ∧ 0
  Vec r(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) r[i] = std::min(eps[i], 0.0);
  return r;
}

}  // namespace

PropertyReport check_supermodular(const GridLattice& L, const MemberFn& f, double tol) {
  const int m = L.size();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const double lhs = f(a) + f(b);
      const double rhs = f(L.join(a, b)) + f(L.meet(a, b));
      if (lhs > rhs + tol) {
        PropertyReport r = fail("supermodular", "f(x) + f(y) > f(x∨y) + f(x∧y) at x=" +
                                                    seq_str(L.coords(a)) + ", y=" + seq_str(L.coords(b)));
        r.witness_vectors = {L.coords(a), L.coords(b)};
        return r;
      }
    }
  return pass("supermodular");
}

PropertyReport check_submodular(const GridLattice& L, const MemberFn& f, double tol) {
  PropertyReport r = check_supermodular(L, [&](int i) { return -f(i); }, tol);
  r.property = "submodular";
  if (!r.holds) r.detail = "f(x) + f(y) < f(x∨y) + f(x∧y) at the witness pair";
  return r;
}

PropertyReport check_quasi_supermodular(const GridLattice& L, const MemberFn& f, double tol) {
  const int m = L.size();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double d_meet = f(a) - f(L.meet(a, b));
      const double d_join = f(L.join(a, b)) - f(b);
      const bool weak_bad = d_meet >= -tol && d_join < -tol;
      const bool strict_bad = d_meet > tol && d_join <= tol;
      if (weak_bad || strict_bad) {
        PropertyReport r =
            fail("quasi_supermodular",
                 std::string(weak_bad ? "weak" : "strict") + " implication fails at x=" +
                     seq_str(L.coords(a)) + ", y=" + seq_str(L.coords(b)));
        r.witness_vectors = {L.coords(a), L.coords(b)};
        return r;
      }
    }
  return pass("quasi_supermodular");
}

namespace {

// Shared driver for difference-style objective checks over pairs x <= y and
// comparable parameter pairs.
template <typename Cond>
PropertyReport objective_pairs_check(const Objective& F, const std::string& name, Cond bad) {
  const GridLattice& L = F.lattice();
  const ParamPoset& P = F.poset();
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y) {
      if (x == y || !L.leq(x, y)) continue;
      for (int t1 = 0; t1 < P.size(); ++t1)
        for (int t2 = 0; t2 < P.size(); ++t2) {
          if (t1 == t2 || !P.leq(t1, t2)) continue;
          if (bad(x, y, t1, t2)) {
            PropertyReport r = fail(name, "violated at x=" + seq_str(L.coords(x)) +
                                              ", y=" + seq_str(L.coords(y)) + ", theta'=" +
                                              P.label(t1) + ", theta''=" + P.label(t2));
            r.witness_vectors = {L.coords(x), L.coords(y)};
            r.witness_thetas = {t1, t2};
            return r;
          }
        }
    }
  return pass(name);
}

}  // namespace

PropertyReport check_increasing_differences(const Objective& F, double tol) {
  return objective_pairs_check(F, "increasing_differences", [&](int x, int y, int t1, int t2) {
    const double d1 = F(y, t1) - F(x, t1);
    const double d2 = F(y, t2) - F(x, t2);
    return d2 < d1 - tol;
  });
}

PropertyReport check_single_crossing_differences(const Objective& F, bool strict, double tol) {
  if (!strict) {
    return objective_pairs_check(F, "single_crossing_differences",
                                 [&](int x, int y, int t1, int t2) {
                                   const double d1 = F(y, t1) - F(x, t1);
                                   const double d2 = F(y, t2) - F(x, t2);
                                   return (d1 >= -tol && d2 < -tol) || (d1 > tol && d2 <= tol);
                                 });
  }
  return objective_pairs_check(F, "strict_single_crossing_differences",
                               [&](int x, int y, int t1, int t2) {
                                 const double d1 = F(y, t1) - F(x, t1);
                                 const double d2 = F(y, t2) - F(x, t2);
                                 return d1 >= -tol && d2 <= tol;
                               });
}

PropertyReport check_log_increasing_differences(const Objective& F, bool strict, double tol) {
  const std::string name =
      strict ? "strict_log_increasing_differences" : "log_increasing_differences";
  for (int x = 0; x < F.members(); ++x)
    for (int t = 0; t < F.thetas(); ++t)
      if (!(F(x, t) > 0)) {
        PropertyReport r = fail(name, "objective is not strictly positive at x=" +
                                          seq_str(F.lattice().coords(x)) + ", theta=" +
                                          F.poset().label(t));
        r.witness_vectors = {F.lattice().coords(x)};
        r.witness_thetas = {t};
        return r;
      }
  return objective_pairs_check(F, name, [&](int x, int y, int t1, int t2) {
    const double d1 = std::log(F(y, t1)) - std::log(F(x, t1));
    const double d2 = std::log(F(y, t2)) - std::log(F(x, t2));
    return strict ? d2 <= d1 + tol : d2 < d1 - tol;
  });
}

PropertyReport check_objective_quasi_supermodular(const Objective& F, double tol) {
  for (int t = 0; t < F.thetas(); ++t) {
    PropertyReport r =
        check_quasi_supermodular(F.lattice(), [&](int i) { return F(i, t); }, tol);
    if (!r.holds) {
      r.property = "quasi_supermodular_in_x";
      r.detail += " (theta=" + F.poset().label(t) + ")";
      r.witness_thetas = {t};
      return r;
    }
  }
  return pass("quasi_supermodular_in_x");
}

PropertyReport check_objective_supermodular(const Objective& F, double tol) {
  for (int t = 0; t < F.thetas(); ++t) {
    PropertyReport r = check_supermodular(F.lattice(), [&](int i) { return F(i, t); }, tol);
    if (!r.holds) {
      r.property = "supermodular_in_x";
      r.detail += " (theta=" + F.poset().label(t) + ")";
      r.witness_thetas = {t};
      return r;
    }
  }
  return pass("supermodular_in_x");
}

PropertyReport check_cost_monotone(const CostFunction& C, const DiffSet& D, double tol) {
  std::vector<double> cv(D.all.size());
  for (std::size_t i = 0; i < D.all.size(); ++i) cv[i] = C(D.all[i]);
  for (std::size_t ie = 0; ie < D.all.size(); ++ie) {
    const Vec& eps = D.all[ie];
    const double c_eps = cv[ie];
    for (std::size_t im = 0; im < D.all.size(); ++im) {
      const Vec& mid = D.all[im];
      if (!between_zero_and(mid, eps)) continue;
      if (cv[im] > c_eps + tol) {
        PropertyReport r = fail("cost_monotone", "C(" + seq_str(mid) + ") > C(" + seq_str(eps) +
                                                     ") although the former is between 0 and the latter");
        r.witness_vectors = {eps, mid};
        return r;
      }
    }
  }
  return pass("cost_monotone");
}

PropertyReport check_cost_minimally_monotone(const CostFunction& C, const DiffSet& D, double tol) {
  for (const Vec& eps : D.all) {
    const double c_eps = C(eps);
    const Vec up = clamp_up(eps), down = clamp_down(eps);
    if (C(down) > c_eps + tol || C(up) > c_eps + tol) {
      PropertyReport r = fail("cost_minimally_monotone",
                              "cancelling adjustments raises cost at eps=" + seq_str(eps));
      r.witness_vectors = {eps, C(down) > c_eps + tol ? down : up};
      return r;
    }
  }
  return pass("cost_minimally_monotone");
}

PropertyReport check_cost_strictly_monotone(const CostFunction& C, const DiffSet& D, double tol) {
  std::vector<double> cv(D.all.size());
  for (std::size_t i = 0; i < D.all.size(); ++i) cv[i] = C(D.all[i]);
  for (std::size_t ie = 0; ie < D.all.size(); ++ie) {
    const Vec& eps = D.all[ie];
    const double c_eps = cv[ie];
    for (std::size_t im = 0; im < D.all.size(); ++im) {
      const Vec& mid = D.all[im];
      if (mid == eps || !between_zero_and(mid, eps)) continue;
      if (!(cv[im] < c_eps - tol)) {
        PropertyReport r =
            fail("cost_strictly_monotone", "C(" + seq_str(mid) + ") is not strictly below C(" +
                                               seq_str(eps) + ")");
        r.witness_vectors = {eps, mid};
        return r;
      }
    }
  }
  return pass("cost_strictly_monotone");
}

PropertyReport check_cost_strictly_minimally_monotone(const CostFunction& C, const DiffSet& D,
                                                      double tol) {
  for (const Vec& eps : D.all) {
    const double c_eps = C(eps);
    const Vec up = clamp_up(eps), down = clamp_down(eps);
    if (down != eps && !(C(down) < c_eps - tol)) {
      PropertyReport r = fail("cost_strictly_minimally_monotone",
                              "cancelling upward adjustments does not strictly reduce cost at eps=" +
                                  seq_str(eps));
      r.witness_vectors = {eps, down};
      return r;
    }
    if (up != eps && !(C(up) < c_eps - tol)) {
      PropertyReport r = fail("cost_strictly_minimally_monotone",
                              "cancelling downward adjustments does not strictly reduce cost at eps=" +
                                  seq_str(eps));
      r.witness_vectors = {eps, up};
      return r;
    }
  }
  return pass("cost_strictly_minimally_monotone");
}

PropertyReport check_cost_single_dipped(const CostFunction& C, const DiffSet& D, double tol) {
  if (C.dims() != 1)
    return fail("cost_single_dipped", "defined for one-dimensional costs only");
  const Vec& grid = D.per_dim[0];
  std::vector<double> v;
  v.reserve(grid.size());
  for (double e : grid) v.push_back(C({e}));
  const int n = static_cast<int>(v.size());
  int p = 0;  // longest non-increasing prefix: v[0] >= ... >= v[p]
  while (p + 1 < n && v[p + 1] <= v[p] + tol) ++p;
  int q = n - 1;  // longest non-decreasing suffix starts at q
  while (q > 0 && v[q - 1] <= v[q] + tol) --q;
  if (q > p) {
    PropertyReport r = fail("cost_single_dipped", "no split point: rises at " +
                                                      std::to_string(grid[p + 1]) + " then falls at " +
                                                      std::to_string(grid[q]));
    r.witness_vectors = {{grid[p + 1]}, {grid[q]}};
    return r;
  }
  const double c0 = C({0.0});
  for (double e : grid)
    if (C({e}) < c0 - tol) {
      PropertyReport r =
          fail("cost_single_dipped", "not minimized at zero: C(" + std::to_string(e) + ") < C(0)");
      r.witness_vectors = {{e}};
      return r;
    }
  return pass("cost_single_dipped");
}

PropertyReport check_cost_c0_finite(const CostFunction& C, int dims) {
  const Vec zero(dims, 0.0);
  if (!(C(zero) < kInf)) {
    PropertyReport r = fail("cost_zero_finite", "C(0) is infinite");
    r.witness_vectors = {zero};
    return r;
  }
  return pass("cost_zero_finite");
}

PropertyReport check_cost_separable(const CostFunction& C, const DiffSet& D, double tol) {
  if (C.is_separable() || C.dims() == 1) return pass("cost_additively_separable");
  std::size_t product = 1;
  for (const Vec& axis : D.per_dim) product *= axis.size();
  if (product != D.all.size())
    return fail("cost_additively_separable",
                "difference set is not a product grid; separability is undefined");
  const int n = C.dims();
  const double c0 = C(Vec(n, 0.0));
  if (!(c0 < kInf)) return fail("cost_additively_separable", "C(0) is infinite");
  for (const Vec& eps : D.all) {
    double sum = 0;
    for (int d = 0; d < n; ++d) {
      Vec basis(n, 0.0);
      basis[d] = eps[d];
      sum += C(basis);
    }
    const double expect = sum - (n - 1) * c0;
    const double actual = C(eps);
    const bool equal = (std::isinf(expect) && std::isinf(actual)) ||
                       std::fabs(expect - actual) <= tol * std::max(1.0, std::fabs(expect));
    if (!equal) {
      PropertyReport r = fail("cost_additively_separable",
                              "C(" + seq_str(eps) + ") differs from its separable reconstruction");
      r.witness_vectors = {eps};
      return r;
    }
  }
  return pass("cost_additively_separable");
}

PropertyReport check_cost_convex_per_dim(const CostFunction& C, const DiffSet& D, double tol) {
  const int n = C.dims();
  auto value = [&](int dim, double e) {
    if (C.is_separable()) return C.components()[dim](e);
    Vec basis(n, 0.0);
    basis[dim] = e;
    return C(basis);
  };
  if (!C.is_separable() && n > 1) {
    PropertyReport sep = check_cost_separable(C, D);
    if (!sep.holds) {
      sep.property = "cost_convex_per_dim";
      return sep;
    }
  }
  for (int dim = 0; dim < n; ++dim) {
    const Vec& grid = D.per_dim[dim];
    std::vector<double> v;
    for (double e : grid) v.push_back(value(dim, e));
    // Finite support must be contiguous; +inf is allowed only at the ends.
    int first = -1, last = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      if (std::isfinite(v[i])) {
        if (first < 0) first = i;
        last = i;
      }
    if (first < 0)
      return fail("cost_convex_per_dim", "dimension " + std::to_string(dim) + " is everywhere infinite");
    for (int i = first; i <= last; ++i)
      if (!std::isfinite(v[i])) {
        PropertyReport r = fail("cost_convex_per_dim",
                                "infinite cost inside the finite range of dimension " +
                                    std::to_string(dim) + " at " + std::to_string(grid[i]));
        r.witness_vectors = {{grid[i]}};
        return r;
      }
    for (int i = first + 1; i + 1 <= last; ++i) {
      const double left = (v[i] - v[i - 1]) * (grid[i + 1] - grid[i]);
      const double right = (v[i + 1] - v[i]) * (grid[i] - grid[i - 1]);
      if (left > right + tol) {
        PropertyReport r = fail("cost_convex_per_dim",
                                "slope decreases across " + std::to_string(grid[i]) +
                                    " in dimension " + std::to_string(dim));
        r.witness_vectors = {{grid[i - 1]}, {grid[i]}, {grid[i + 1]}};
        return r;
      }
    }
  }
  return pass("cost_convex_per_dim");
}

PropertyReport check_lemma_monotone_triples(const GridLattice& L, const CostFunction& C,
                                            double tol) {
  const int m = L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const double base = C(vec_sub(L.coords(x), L.coords(y)));
      for (int z = 0; z < m; ++z) {
        const double up = C(vec_sub(L.coords(L.join(z, x)), L.coords(L.join(z, y))));
        const double down = C(vec_sub(L.coords(L.meet(z, x)), L.coords(L.meet(z, y))));
        if (up > base + tol || down > base + tol) {
          PropertyReport r = fail("lemma_monotone_triples",
                                  "triple inequality fails at x=" + seq_str(L.coords(x)) + ", y=" +
                                      seq_str(L.coords(y)) + ", z=" + seq_str(L.coords(z)));
          r.witness_vectors = {L.coords(x), L.coords(y), L.coords(z)};
          return r;
        }
        // Corollary: z <= y gives C(z∨x - y) <= C(x - y); z >= y the dual.
        if (L.leq(z, y)) {
          if (C(vec_sub(L.coords(L.join(z, x)), L.coords(y))) > base + tol) {
            PropertyReport r = fail("lemma_monotone_triples",
                                    "corollary (z <= y) fails at x=" + seq_str(L.coords(x)) +
                                        ", y=" + seq_str(L.coords(y)) + ", z=" + seq_str(L.coords(z)));
            r.witness_vectors = {L.coords(x), L.coords(y), L.coords(z)};
            return r;
          }
        }
        if (L.leq(y, z)) {
          if (C(vec_sub(L.coords(L.meet(z, x)), L.coords(y))) > base + tol) {
            PropertyReport r = fail("lemma_monotone_triples",
                                    "corollary (z >= y) fails at x=" + seq_str(L.coords(x)) +
                                        ", y=" + seq_str(L.coords(y)) + ", z=" + seq_str(L.coords(z)));
            r.witness_vectors = {L.coords(x), L.coords(y), L.coords(z)};
            return r;
          }
        }
      }
    }
  return pass("lemma_monotone_triples");
}

PropertyReport check_cost_pairwise_exchange(const CostFunction& C, const GridLattice& L,
                                            double tol) {
  if (!C.is_separable() && C.dims() != 1)
    return fail("cost_pairwise_exchange", "requires a separable cost");
  for (int dim = 0; dim < C.dims(); ++dim) {
    auto c1 = [&](double e) {
      if (C.is_separable()) return C.components()[dim](e);
      return C({e});
    };
    const Vec& axis = L.axis(dim);
    for (double x : axis)
      for (double y : axis)
        for (double z : axis) {
          const double lhs = c1(std::max(y, z) - std::max(x, y)) + c1(std::min(y, z) - std::min(x, y));
          const double rhs = c1(y - x) + c1(z - y);
          if (lhs > rhs + tol) {
            PropertyReport r = fail("cost_pairwise_exchange",
                                    "exchange inequality fails in dimension " + std::to_string(dim) +
                                        " at x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                                        ", z=" + std::to_string(z));
            r.witness_vectors = {{x}, {y}, {z}};
            return r;
          }
        }
  }
  return pass("cost_pairwise_exchange");
}

}  // namespace mcs
