#include "mcs/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcs {

Cost1d Cost1d::zero() {
  Cost1d c;
  c.family_ = Family::Zero;
  c.name_ = "zero";
  return c;
}

Cost1d Cost1d::quadratic(double a) {
  if (!(a >= 0)) throw std::invalid_argument("cost: quadratic coefficient must be >= 0");
  Cost1d c;
  c.family_ = Family::Quadratic;
  c.name_ = "quadratic";
  c.a = a;
  return c;
}

Cost1d Cost1d::fixed(double k) {
  if (!(k >= 0)) throw std::invalid_argument("cost: fixed cost must be >= 0");
  Cost1d c;
  c.family_ = Family::Fixed;
  c.name_ = "fixed";
  c.k = k;
  return c;
}

Cost1d Cost1d::free_disposal(double a) {
  if (!(a >= 0)) throw std::invalid_argument("cost: free-disposal coefficient must be >= 0");
  Cost1d c;
  c.family_ = Family::FreeDisposal;
  c.name_ = "free_disposal";
  c.a = a;
  return c;
}

Cost1d Cost1d::box_quad(double a, double lo, double hi) {
  if (!(a >= 0)) throw std::invalid_argument("cost: box coefficient must be >= 0");
  if (!(lo <= 0 && 0 <= hi)) throw std::invalid_argument("cost: box constraint must contain 0");
  Cost1d c;
  c.family_ = Family::BoxQuad;
  c.name_ = "box";
  c.a = a;
  c.lo = lo;
  c.hi = hi;
  return c;
}

Cost1d Cost1d::lumpy(double a, double min_size) {
  if (!(a >= 0)) throw std::invalid_argument("cost: lumpy coefficient must be >= 0");
  if (!(min_size > 0)) throw std::invalid_argument("cost: lumpy minimum size must be > 0");
  Cost1d c;
  c.family_ = Family::Lumpy;
  c.name_ = "lumpy";
  c.a = a;
  c.min_size = min_size;
  return c;
}

Cost1d Cost1d::table(std::map<double, double> values) {
  for (auto& [e, v] : values)
    if (std::isnan(v) || v < 0)
      throw std::invalid_argument("cost: table value at " + std::to_string(e) + " must be >= 0");
  Cost1d c;
  c.family_ = Family::Table;
  c.name_ = "table";
  c.table_ = std::move(values);
  return c;
}

Cost1d Cost1d::custom(std::function<double(double)> fn, std::string name) {
  Cost1d c;
  c.family_ = Family::Custom;
  c.name_ = std::move(name);
  c.fn_ = std::move(fn);
  return c;
}

double Cost1d::operator()(double eps) const {
  switch (family_) {
    case Family::Zero:
      return 0.0;
    case Family::Quadratic:
      return a * eps * eps;
    case Family::Fixed:
      return eps == 0 ? 0.0 : k;
    case Family::FreeDisposal:
      return eps >= 0 ? a * eps * eps : 0.0;
    case Family::BoxQuad:
      return (lo <= eps && eps <= hi) ? a * eps * eps : kInf;
    case Family::Lumpy:
      return (eps <= 0 || eps >= min_size) ? a * eps * eps : kInf;
    case Family::Table: {
      auto it = table_.find(eps);
      if (it == table_.end())
        throw std::out_of_range("cost: table has no entry at " + std::to_string(eps));
      return it->second;
    }
    case Family::Custom:
      return fn_(eps);
  }
  return kInf;
}

CostFunction CostFunction::separable(std::vector<Cost1d> components) {
  if (components.empty()) throw std::invalid_argument("cost: needs at least one dimension");
  CostFunction c;
  c.dims_ = static_cast<int>(components.size());
  c.kind_ = Kind::Separable;
  c.name_ = "separable";
  c.comps_ = std::move(components);
  return c;
}

CostFunction CostFunction::zero(int dims) {
  std::vector<Cost1d> comps(dims, Cost1d::zero());
  CostFunction c = separable(std::move(comps));
  c.name_ = "zero";
  return c;
}

CostFunction CostFunction::euclidean(int dims) {
  CostFunction c;
  c.dims_ = dims;
  c.kind_ = Kind::Euclidean;
  c.name_ = "euclidean";
  return c;
}

CostFunction CostFunction::cobb_douglas(Vec exponents) {
  for (double a : exponents)
    if (!(a > 0)) throw std::invalid_argument("cost: Cobb-Douglas exponents must be > 0");
  CostFunction c;
  c.dims_ = static_cast<int>(exponents.size());
  c.kind_ = Kind::CobbDouglas;
  c.name_ = "cobb_douglas";
  c.exponents_ = std::move(exponents);
  return c;
}

CostFunction CostFunction::table(int dims, std::vector<std::pair<Vec, double>> entries) {
  for (auto& [e, v] : entries) {
    if (static_cast<int>(e.size()) != dims)
      throw std::invalid_argument("cost: table entry " + seq_str(e) + " has wrong dimension");
    if (std::isnan(v) || v < 0)
      throw std::invalid_argument("cost: table value at " + seq_str(e) + " must be >= 0");
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("cost: duplicate table entry at " + seq_str(entries[i].first));
  CostFunction c;
  c.dims_ = dims;
  c.kind_ = Kind::Table;
  c.name_ = "table";
  c.table_ = std::move(entries);
  return c;
}

CostFunction CostFunction::custom(int dims, std::function<double(const Vec&)> fn, std::string name) {
  CostFunction c;
  c.dims_ = dims;
  c.kind_ = Kind::Custom;
  c.name_ = std::move(name);
  c.fn_ = std::move(fn);
  return c;
}

double CostFunction::operator()(const Vec& eps) const {
  if (static_cast<int>(eps.size()) != dims_)
    throw std::invalid_argument("cost: adjustment vector " + seq_str(eps) + " has wrong dimension");
  switch (kind_) {
    case Kind::Separable: {
      double total = 0;
      for (int d = 0; d < dims_; ++d) total += comps_[d](eps[d]);
      return total;
    }
    case Kind::Euclidean: {
      double s = 0;
      for (double e : eps) s += e * e;
      return std::sqrt(s);
    }
    case Kind::CobbDouglas: {
      double p = 1;
      for (int d = 0; d < dims_; ++d) p *= std::pow(std::fabs(eps[d]), exponents_[d]);
      return p;
    }
    case Kind::Table: {
      auto it = std::lower_bound(table_.begin(), table_.end(), eps,
                                 [](const auto& e, const Vec& q) { return e.first < q; });
      if (it == table_.end() || it->first != eps)
        throw std::out_of_range("cost: table has no entry at " + seq_str(eps));
      return it->second;
    }
    case Kind::Custom:
      return fn_(eps);
  }
  return kInf;
}

bool DiffSet::contains(const Vec& eps) const {
  return std::binary_search(all.begin(), all.end(), eps);
}

DiffSet DiffSet::of(const GridLattice& L) {
  DiffSet d;
  const int n = L.dims();
  const int m = L.size();
  d.per_dim.resize(n);
  std::vector<Vec> raw;
  raw.reserve(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) raw.push_back(vec_sub(L.coords(a), L.coords(b)));
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  d.all = std::move(raw);
  for (int dim = 0; dim < n; ++dim) {
    Vec vals;
    vals.reserve(d.all.size());
    for (const Vec& e : d.all) vals.push_back(e[dim]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    d.per_dim[dim] = std::move(vals);
  }
  return d;
}

}  // namespace mcs
