#include "mcs/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mcs {

namespace {

void validate_axes(const std::vector<Vec>& axes) {
  if (axes.empty()) throw std::invalid_argument("lattice: needs at least one dimension");
  for (std::size_t d = 0; d < axes.size(); ++d) {
    const Vec& a = axes[d];
    if (a.empty())
      throw std::invalid_argument("lattice: axis " + std::to_string(d) + " is empty");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!std::isfinite(a[i]))
        throw std::invalid_argument("lattice: axis " + std::to_string(d) + " has a non-finite value");
      if (i > 0 && a[i] <= a[i - 1])
        throw std::invalid_argument("lattice: axis " + std::to_string(d) +
                                    " is not strictly increasing at position " + std::to_string(i));
    }
  }
}

}  // namespace

GridLattice GridLattice::product(std::vector<Vec> axes) {
  validate_axes(axes);
  GridLattice L;
  L.axes_ = std::move(axes);
  const int n = L.dims();
  Idx cur(n, 0);
  for (;;) {
    L.members_.push_back(cur);
    int d = n - 1;
    while (d >= 0) {
      if (++cur[d] < static_cast<int>(L.axes_[d].size())) break;
      cur[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  L.finish();
  return L;
}

GridLattice GridLattice::from_members(std::vector<Vec> axes, std::vector<Idx> members) {
  validate_axes(axes);
  if (members.empty()) throw std::invalid_argument("lattice: member set is empty");
  GridLattice L;
  L.axes_ = std::move(axes);
  const int n = L.dims();
  for (const Idx& m : members) {
    if (static_cast<int>(m.size()) != n)
      throw std::invalid_argument("lattice: member " + seq_str(m) + " has wrong dimension");
    for (int d = 0; d < n; ++d)
      if (m[d] < 0 || m[d] >= static_cast<int>(L.axes_[d].size()))
        throw std::invalid_argument("lattice: member " + seq_str(m) + " is off axis " + std::to_string(d));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  L.members_ = std::move(members);

  // Sublattice closure: every pairwise meet and join must be a member.
  const int m = L.size();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Idx mt = idx_min(L.members_[a], L.members_[b]);
      const Idx jn = idx_max(L.members_[a], L.members_[b]);
      auto present = [&](const Idx& q) {
        return std::binary_search(L.members_.begin(), L.members_.end(), q);
      };
      if (!present(mt))
        throw std::invalid_argument("lattice: not a sublattice: meet of " + seq_str(L.members_[a]) +
                                    " and " + seq_str(L.members_[b]) + " is missing");
      if (!present(jn))
        throw std::invalid_argument("lattice: not a sublattice: join of " + seq_str(L.members_[a]) +
                                    " and " + seq_str(L.members_[b]) + " is missing");
    }
  L.finish();
  return L;
}

GridLattice GridLattice::from_member_coords(std::vector<Vec> axes, const std::vector<Vec>& members) {
  validate_axes(axes);
  std::vector<Idx> idx_members;
  idx_members.reserve(members.size());
  for (const Vec& c : members) {
    if (c.size() != axes.size())
      throw std::invalid_argument("lattice: member " + seq_str(c) + " has wrong dimension");
    Idx idx(c.size());
    for (std::size_t d = 0; d < c.size(); ++d) {
      auto it = std::lower_bound(axes[d].begin(), axes[d].end(), c[d]);
      if (it == axes[d].end() || *it != c[d])
        throw std::invalid_argument("lattice: coordinate " + std::to_string(c[d]) +
                                    " of member " + seq_str(c) + " is not on axis " + std::to_string(d));
      idx[d] = static_cast<int>(it - axes[d].begin());
    }
    idx_members.push_back(std::move(idx));
  }
  return from_members(std::move(axes), std::move(idx_members));
}

void GridLattice::finish() {
  std::sort(members_.begin(), members_.end());
  const int m = size();
  const int n = dims();
  coords_.resize(m);
  for (int i = 0; i < m; ++i) {
    Vec c(n);
    for (int d = 0; d < n; ++d) c[d] = axes_[d][members_[i][d]];
    coords_[i] = std::move(c);
  }
  meet_.assign(static_cast<std::size_t>(m) * m, -1);
  join_.assign(static_cast<std::size_t>(m) * m, -1);
  leq_.assign(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      meet_[flat(a, b)] = find(idx_min(members_[a], members_[b]));
      join_[flat(a, b)] = find(idx_max(members_[a], members_[b]));
      leq_[flat(a, b)] = idx_leq(members_[a], members_[b]) ? 1 : 0;
    }
}

int GridLattice::find(const Idx& idx) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), idx);
  if (it == members_.end() || *it != idx) return -1;
  return static_cast<int>(it - members_.begin());
}

int GridLattice::find_coords(const Vec& coords) const {
  if (coords.size() != axes_.size())
    throw std::invalid_argument("lattice: point " + seq_str(coords) + " has wrong dimension");
  Idx idx(coords.size());
  for (std::size_t d = 0; d < coords.size(); ++d) {
    auto it = std::lower_bound(axes_[d].begin(), axes_[d].end(), coords[d]);
    if (it == axes_[d].end() || *it != coords[d])
      throw std::invalid_argument("lattice: point " + seq_str(coords) + " is not on axis " +
                                  std::to_string(d));
    idx[d] = static_cast<int>(it - axes_[d].begin());
  }
  int id = find(idx);
  if (id < 0) throw std::invalid_argument("lattice: point " + seq_str(coords) + " is not a member");
  return id;
}

std::vector<int> GridLattice::box_ids(int lo_id, int hi_id) const {
  if (!leq(lo_id, hi_id))
    throw std::invalid_argument("box: lower corner " + seq_str(coords(lo_id)) +
                                " is not below upper corner " + seq_str(coords(hi_id)));
  std::vector<int> ids;
  for (int i = 0; i < size(); ++i)
    if (leq(lo_id, i) && leq(i, hi_id)) ids.push_back(i);
  return ids;
}

std::vector<int> GridLattice::all_ids() const {
  std::vector<int> ids(size());
  for (int i = 0; i < size(); ++i) ids[i] = i;
  return ids;
}

GridLattice GridLattice::box(int lo_id, int hi_id) const {
  std::vector<int> ids = box_ids(lo_id, hi_id);
  if (ids.empty()) throw std::invalid_argument("box: empty result");
  std::vector<Idx> members;
  members.reserve(ids.size());
  for (int id : ids) members.push_back(members_[id]);
  return from_members(axes_, std::move(members));
}

std::optional<std::pair<int, int>> GridLattice::sublattice_violation(std::span<const int> ids) const {
  std::vector<unsigned char> in(size(), 0);
  for (int id : ids) in[id] = 1;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!in[meet(ids[i], ids[j])] || !in[join(ids[i], ids[j])])
        return std::make_pair(ids[i], ids[j]);
    }
  return std::nullopt;
}

bool strong_set_geq(const GridLattice& L, std::span<const int> X, std::span<const int> Y) {
  std::vector<unsigned char> in_x(L.size(), 0), in_y(L.size(), 0);
  for (int id : X) in_x[id] = 1;
  for (int id : Y) in_y[id] = 1;
  for (int x : X)
    for (int y : Y) {
      if (!in_x[L.join(x, y)]) return false;
      if (!in_y[L.meet(x, y)]) return false;
    }
  return true;
}

ParamPoset ParamPoset::chain(std::vector<std::string> labels) {
  ParamPoset p;
  p.n_ = static_cast<int>(labels.size());
  if (p.n_ == 0) throw std::invalid_argument("poset: needs at least one element");
  p.labels_ = std::move(labels);
  p.rel_.assign(static_cast<std::size_t>(p.n_) * p.n_, 0);
  for (int a = 0; a < p.n_; ++a)
    for (int b = a; b < p.n_; ++b) p.rel_[static_cast<std::size_t>(a) * p.n_ + b] = 1;
  return p;
}

ParamPoset ParamPoset::chain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return chain(std::move(labels));
}

ParamPoset ParamPoset::from_pairs(std::vector<std::string> labels,
                                  const std::vector<std::pair<int, int>>& leq_pairs) {
  ParamPoset p;
  p.n_ = static_cast<int>(labels.size());
  if (p.n_ == 0) throw std::invalid_argument("poset: needs at least one element");
  p.labels_ = std::move(labels);
  p.rel_.assign(static_cast<std::size_t>(p.n_) * p.n_, 0);
  for (int a = 0; a < p.n_; ++a) p.rel_[static_cast<std::size_t>(a) * p.n_ + a] = 1;
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || a >= p.n_ || b < 0 || b >= p.n_)
      throw std::invalid_argument("poset: relation pair (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") is out of range");
    p.rel_[static_cast<std::size_t>(a) * p.n_ + b] = 1;
  }
  for (int a = 0; a < p.n_; ++a)
    for (int b = 0; b < p.n_; ++b) {
      if (a != b && p.leq(a, b) && p.leq(b, a))
        throw std::invalid_argument("poset: relation is not antisymmetric on (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
      if (!p.leq(a, b)) continue;
      for (int c = 0; c < p.n_; ++c)
        if (p.leq(b, c) && !p.leq(a, c))
          throw std::invalid_argument("poset: relation is not transitive: (" + std::to_string(a) +
                                      ", " + std::to_string(b) + ") and (" + std::to_string(b) +
                                      ", " + std::to_string(c) + ") but not (" + std::to_string(a) +
                                      ", " + std::to_string(c) + ")");
    }
  return p;
}

bool ParamPoset::is_chain() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

}  // namespace mcs
