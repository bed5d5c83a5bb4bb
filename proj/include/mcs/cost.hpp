#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mcs/lattice.hpp"
#include "mcs/util.hpp"

namespace mcs {

/// One-dimensional adjustment cost component. Values live in [0, +inf];
/// +inf marks an infeasible adjustment.
class Cost1d {
 public:
  enum class Family { Zero, Quadratic, Fixed, FreeDisposal, BoxQuad, Lumpy, Table, Custom };

  static Cost1d zero();
  static Cost1d quadratic(double a);
  // k for eps != 0, 0 at eps = 0.
  static Cost1d fixed(double k);
  // a*eps^2 upward, free downward.
  static Cost1d free_disposal(double a);
  // a*eps^2 on [lo, hi] (lo <= 0 <= hi), +inf outside.
  static Cost1d box_quad(double a, double lo, double hi);
  // a*eps^2 on (-inf, 0] and [min_size, inf), +inf on (0, min_size).
  static Cost1d lumpy(double a, double min_size);
  static Cost1d table(std::map<double, double> values);
  static Cost1d custom(std::function<double(double)> fn, std::string name = "custom");

  double operator()(double eps) const;

  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  // Parameters, exposed for serialization.
  double a = 0, k = 0, lo = 0, hi = 0, min_size = 0;
  const std::map<double, double>& entries() const { return table_; }

 private:
  Family family_ = Family::Zero;
  std::string name_;
  std::map<double, double> table_;
  std::function<double(double)> fn_;
};

/// Adjustment cost C : ΔL -> [0, +inf]. Separable costs keep their
/// per-dimension structure so that separability-dependent checks (discrete
/// convexity, single-dippedness) can run per axis.
class CostFunction {
 public:
  enum class Kind { Separable, Euclidean, CobbDouglas, Table, Custom };

  static CostFunction separable(std::vector<Cost1d> components);
  static CostFunction zero(int dims);
  static CostFunction euclidean(int dims);
  static CostFunction cobb_douglas(Vec exponents);
  // Exact-match table over difference vectors; evaluation outside throws.
  static CostFunction table(int dims, std::vector<std::pair<Vec, double>> entries);
  static CostFunction custom(int dims, std::function<double(const Vec&)> fn,
                             std::string name = "custom");

  double operator()(const Vec& eps) const;
  int dims() const { return dims_; }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_separable() const { return kind_ == Kind::Separable; }
  const std::vector<Cost1d>& components() const { return comps_; }
  const Vec& exponents() const { return exponents_; }
  const std::vector<std::pair<Vec, double>>& entries() const { return table_; }

 private:
  int dims_ = 0;
  Kind kind_ = Kind::Separable;
  std::string name_;
  std::vector<Cost1d> comps_;
  Vec exponents_;
  std::vector<std::pair<Vec, double>> table_;  // sorted by eps
  std::function<double(const Vec&)> fn_;
};

/// The exact difference set ΔL = {x - y : x, y in L}, plus its per-dimension
/// projections. Vectors are lexicographically sorted and duplicate-free.
struct DiffSet {
  std::vector<Vec> all;
  std::vector<Vec> per_dim;

  bool contains(const Vec& eps) const;
  static DiffSet of(const GridLattice& L);
};

}  // namespace mcs
