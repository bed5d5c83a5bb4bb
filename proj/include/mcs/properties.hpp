#pragma once

#include <functional>

#include "mcs/cost.hpp"
#include "mcs/lattice.hpp"
#include "mcs/objective.hpp"
#include "mcs/report.hpp"

namespace mcs {

// All checks are exhaustive over the finite instance and return the
// first-found, lowest-lexicographic witness on failure. `tol` loosens real
// comparisons for noisy user tabulations; the default 0 is exact.

// f is addressed by member id of L.
using MemberFn = std::function<double(int)>;

PropertyReport check_supermodular(const GridLattice& L, const MemberFn& f, double tol = 0.0);
PropertyReport check_submodular(const GridLattice& L, const MemberFn& f, double tol = 0.0);
PropertyReport check_quasi_supermodular(const GridLattice& L, const MemberFn& f, double tol = 0.0);

// Objective checks quantify over all comparable parameter pairs in the poset.
PropertyReport check_increasing_differences(const Objective& F, double tol = 0.0);
PropertyReport check_single_crossing_differences(const Objective& F, bool strict = false,
                                                 double tol = 0.0);
PropertyReport check_log_increasing_differences(const Objective& F, bool strict = false,
                                                double tol = 0.0);
// Quasi-supermodularity / supermodularity of F(., theta) for every theta.
PropertyReport check_objective_quasi_supermodular(const Objective& F, double tol = 0.0);
PropertyReport check_objective_supermodular(const Objective& F, double tol = 0.0);

// Cost monotonicity, in the "between 0 and eps" pairwise form over ΔL.
PropertyReport check_cost_monotone(const CostFunction& C, const DiffSet& D, double tol = 0.0);
PropertyReport check_cost_minimally_monotone(const CostFunction& C, const DiffSet& D,
                                             double tol = 0.0);
PropertyReport check_cost_strictly_monotone(const CostFunction& C, const DiffSet& D,
                                            double tol = 0.0);
PropertyReport check_cost_strictly_minimally_monotone(const CostFunction& C, const DiffSet& D,
                                                      double tol = 0.0);
// n = 1 only: single-dipped, and single-dipped with minimum at zero.
PropertyReport check_cost_single_dipped(const CostFunction& C, const DiffSet& D, double tol = 0.0);
PropertyReport check_cost_c0_finite(const CostFunction& C, int dims);

// Additive separability. Structurally separable costs hold by construction;
// otherwise the tabulated identity C(eps) = sum_i C(eps_i e_i) - (n-1) C(0)
// is tested over ΔL (which must be a product for the identity to make sense).
PropertyReport check_cost_separable(const CostFunction& C, const DiffSet& D, double tol = 1e-12);
// Per-dimension discrete convexity of a separable cost on its difference grid.
PropertyReport check_cost_convex_per_dim(const CostFunction& C, const DiffSet& D, double tol = 0.0);

// App. C lemma: for monotone C and lattice points x, y, z,
//   C(z∨x - z∨y) <= C(x - y) >= C(z∧x - z∧y),
// plus the corollary specializations for z <= y and z >= y.
PropertyReport check_lemma_monotone_triples(const GridLattice& L, const CostFunction& C,
                                            double tol = 0.0);

// App. H scalar inequality for a separable cost with single-dipped components
// minimized at zero: C_i(y∨z - x∨y) + C_i(y∧z - x∧y) <= C_i(y - x) + C_i(z - y)
// for scalars x, y, z drawn from one axis.
PropertyReport check_cost_pairwise_exchange(const CostFunction& C, const GridLattice& L,
                                            double tol = 0.0);

}  // namespace mcs
