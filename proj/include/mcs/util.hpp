#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace mcs {

// Real coordinates of a lattice point (or an adjustment vector).
using Vec = std::vector<double>;
// Per-dimension axis indices of a lattice point.
using Idx = std::vector<int>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Product order on coordinate vectors: a <= b in every dimension.
inline bool vec_leq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool vec_lt(const Vec& a, const Vec& b) { return vec_leq(a, b) && a != b; }

inline Vec vec_min(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline Vec vec_max(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool idx_leq(const Idx& a, const Idx& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Idx idx_min(const Idx& a, const Idx& b) {
  Idx r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline Idx idx_max(const Idx& a, const Idx& b) {
  Idx r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

template <typename T>
std::string seq_str(const std::vector<T>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace mcs
