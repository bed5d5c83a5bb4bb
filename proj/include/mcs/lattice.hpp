#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcs/util.hpp"

namespace mcs {

/// Finite sublattice of an n-dimensional product grid.
///
/// Members are stored in lexicographic order of their axis indices; a member
/// is identified everywhere by its position in that order (its id). Axis
/// values are canonical doubles, so coordinate equality is exact and meet and
/// join (coordinatewise min/max) are exact index operations.
class GridLattice {
 public:
  // Full product grid over the given axes.
  static GridLattice product(std::vector<Vec> axes);
  // Masked sublattice: an explicit member list (axis indices). Construction
  // fails unless the member set is closed under coordinatewise min and max.
  static GridLattice from_members(std::vector<Vec> axes, std::vector<Idx> members);
  // Same, with members given as coordinate tuples that must lie on the axes.
  static GridLattice from_member_coords(std::vector<Vec> axes, const std::vector<Vec>& members);

  int dims() const { return static_cast<int>(axes_.size()); }
  int size() const { return static_cast<int>(members_.size()); }
  const Vec& axis(int d) const { return axes_[d]; }
  const std::vector<Vec>& axes() const { return axes_; }

  const Idx& index_of(int id) const { return members_[id]; }
  const Vec& coords(int id) const { return coords_[id]; }
  // Member id for the given axis indices, or -1 if not a member.
  int find(const Idx& idx) const;
  // Member id for exact coordinates; throws if not a member.
  int find_coords(const Vec& coords) const;

  int meet(int a, int b) const { return meet_[flat(a, b)]; }
  int join(int a, int b) const { return join_[flat(a, b)]; }
  bool leq(int a, int b) const { return leq_[flat(a, b)] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }

  // The box {x in L : lo <= x <= hi} as a standalone lattice (same axes).
  // Throws if lo is not <= hi or the box is empty.
  GridLattice box(int lo_id, int hi_id) const;
  // Member ids of the same box within this lattice.
  std::vector<int> box_ids(int lo_id, int hi_id) const;
  std::vector<int> all_ids() const;

  // Checks that a subset of members is itself closed under meet and join.
  // Returns the first violating pair if not.
  std::optional<std::pair<int, int>> sublattice_violation(std::span<const int> ids) const;

 private:
  GridLattice() = default;
  void finish();  // sorts members, caches coords and meet/join/leq tables
  std::size_t flat(int a, int b) const { return static_cast<std::size_t>(a) * members_.size() + b; }

  std::vector<Vec> axes_;
  std::vector<Idx> members_;  // lexicographically sorted
  std::vector<Vec> coords_;
  std::vector<int> meet_, join_;
  std::vector<unsigned char> leq_;
};

// X >= Y in the strong set order: for all x in X, y in Y, x∨y ∈ X and x∧y ∈ Y.
// Empty sets compare vacuously true.
bool strong_set_geq(const GridLattice& L, std::span<const int> X, std::span<const int> Y);

/// Finite partially ordered parameter set. Elements are opaque; an element is
/// identified by its index. The relation is verified to be a partial order at
/// construction (reflexivity is filled in automatically).
class ParamPoset {
 public:
  // Total order theta_0 < theta_1 < ... with the given display labels.
  static ParamPoset chain(std::vector<std::string> labels);
  static ParamPoset chain(int n);  // labels "0", "1", ...
  // Explicit relation: pairs (a, b) meaning a <= b.
  static ParamPoset from_pairs(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& leq_pairs);

  int size() const { return n_; }
  bool leq(int a, int b) const { return rel_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  const std::string& label(int i) const { return labels_[i]; }
  bool is_chain() const;

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<unsigned char> rel_;
};

using LatticePtr = std::shared_ptr<const GridLattice>;
using PosetPtr = std::shared_ptr<const ParamPoset>;

}  // namespace mcs
