#include "mcs/objective.hpp"

#include <cmath>

namespace mcs {

Objective::Objective(LatticePtr lattice, PosetPtr poset, std::vector<double> values)
    : lattice_(std::move(lattice)),
      poset_(std::move(poset)),
      members_(lattice_->size()),
      thetas_(poset_->size()),
      values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(members_) * thetas_)
    throw std::invalid_argument("objective: table has " + std::to_string(values_.size()) +
                                " values, expected " + std::to_string(members_) + " x " +
                                std::to_string(thetas_));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("objective: non-finite value at flat index " + std::to_string(i));
}

Objective Objective::tabulate(LatticePtr lattice, PosetPtr poset,
                              const std::function<double(const Vec&, int)>& f) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(lattice->size()) * poset->size());
  for (int m = 0; m < lattice->size(); ++m)
    for (int t = 0; t < poset->size(); ++t) values.push_back(f(lattice->coords(m), t));
  return Objective(std::move(lattice), std::move(poset), std::move(values));
}

}  // namespace mcs
