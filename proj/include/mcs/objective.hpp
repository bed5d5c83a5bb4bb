#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "mcs/lattice.hpp"

namespace mcs {

/// Tabulated payoff F(x, theta) over a lattice and a parameter poset.
/// Values are finite by construction; a member is addressed by lattice id and
/// a parameter by poset index.
class Objective {
 public:
  Objective(LatticePtr lattice, PosetPtr poset, std::vector<double> values);

  static Objective tabulate(LatticePtr lattice, PosetPtr poset,
                            const std::function<double(const Vec&, int)>& f);

  double operator()(int member, int theta) const {
    return values_[static_cast<std::size_t>(member) * thetas_ + theta];
  }
  int members() const { return members_; }
  int thetas() const { return thetas_; }
  const GridLattice& lattice() const { return *lattice_; }
  const ParamPoset& poset() const { return *poset_; }
  LatticePtr lattice_ptr() const { return lattice_; }
  PosetPtr poset_ptr() const { return poset_; }
  const std::vector<double>& values() const { return values_; }

 private:
  LatticePtr lattice_;
  PosetPtr poset_;
  int members_ = 0, thetas_ = 0;
  std::vector<double> values_;  // row-major [member][theta]
};

using ObjectivePtr = std::shared_ptr<const Objective>;

}  // namespace mcs
