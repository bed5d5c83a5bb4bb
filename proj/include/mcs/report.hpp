#pragma once

#include <string>
#include <vector>

#include "mcs/util.hpp"

namespace mcs {

/// Outcome of one property decision procedure. A witness is present exactly
/// when the property fails and re-evaluates to a violation.
struct PropertyReport {
  std::string property;
  bool holds = false;
  std::string detail;                // human-readable witness description
  std::vector<Vec> witness_vectors;  // offending points or adjustment vectors
  std::vector<int> witness_thetas;   // offending parameter indices, if any
};

enum class CheckStatus { Holds, Violated, HypothesisRejected };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds:
      return "holds";
    case CheckStatus::Violated:
      return "violated";
    case CheckStatus::HypothesisRejected:
      return "hypothesis_rejected";
  }
  return "?";
}

/// Verdict plus witnesses for one theorem check on one instance.
struct TheoremReport {
  std::string theorem;
  CheckStatus status = CheckStatus::Holds;
  std::vector<PropertyReport> hypothesis_failures;
  // Named points of interest: x_lo, x_hat, x_bar, violating maximizers, ...
  std::vector<std::pair<std::string, Vec>> points;
  // Named paths (dynamic checks): solved, transformed, equilibrium, ...
  std::vector<std::pair<std::string, std::vector<Vec>>> paths;
  std::string detail;
  std::vector<std::string> notes;

  bool holds() const { return status == CheckStatus::Holds; }
  void add_point(std::string name, Vec p) { points.emplace_back(std::move(name), std::move(p)); }
  void note(std::string n) { notes.push_back(std::move(n)); }
};

}  // namespace mcs
