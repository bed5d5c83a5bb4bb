#pragma once

#include <cstdint>

#include "mcs/config.hpp"

namespace mcs {

/// Deterministic, platform-independent generator state. Doubles come from the
/// top 53 bits of a splitmix-seeded xorshift stream, so identical seeds give
/// identical instances everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int range(int lo, int hi);             // inclusive bounds
  bool chance(double p);

 private:
  std::uint64_t state_;
};

enum class ObjectiveFamily { SupermodularLinear, LogDemand, QuasiTransform };
enum class CostFamily {
  SeparableDipped,
  SeparableStrict,
  ConvexSeparable,
  Euclidean,
  CobbDouglas,
  Fixed,
  FreeDisposal,
  Lumpy,
  BoxConstraint,
  Zero
};

enum class ThetaPathShape { None, Stationary, Caged, Increasing };

/// Requested instance shape. Defaults match the desk-scale envelope:
/// dimension <= 3, axes <= 5 points, parameter chains <= 4, delta 0.9, H 40.
struct GenProfile {
  ObjectiveFamily objective = ObjectiveFamily::SupermodularLinear;
  CostFamily cost = CostFamily::SeparableDipped;
  int max_dims = 3;
  int max_axis = 5;
  int min_axis = 2;
  int max_chain = 4;
  bool strict_theta_shift = false;  // force theta_initial < theta_new
  // Dynamic extras.
  ThetaPathShape path = ThetaPathShape::None;
  int max_prefix = 5;
  double delta = 0.9;
  int horizon = 40;
  bool finite_horizon = false;
  // LogDemand instances are one-dimensional by construction.
  int rejection_budget = 64;
};

/// A generated conforming instance; the certificates were re-checked before
/// emission.
struct Instance {
  StaticProblem problem;
  std::optional<DynamicScenario> dynamic;
  std::vector<PropertyReport> certificates;
  std::uint64_t seed = 0;
};

Instance generate(std::uint64_t seed, const GenProfile& profile);

// Per-state lotteries for the primed suites.
CostLottery generate_lottery(Rng& rng, int dims, const DiffSet& D, bool need_full_monotone);

/// Aggregated result of one theorem-oracle suite.
struct SuiteReport {
  std::string theorem;
  int count = 0;
  std::uint64_t seed = 0;
  int violations = 0;
  int hypothesis_rejections = 0;  // should stay 0: generators emit conforming instances
  std::vector<std::string> failures;        // per-instance diagnostics
  std::vector<nlohmann::json> repro;        // serialized violating instances
  nlohmann::json to_json() const;
};

// Known suite names: thm1, thm1star, prop1a, prop1b, thm2, prop3, thm3, thm4,
// thm5, thm6, thm1prime, thm2prime, thm3prime.
SuiteReport run_suite(const std::string& theorem, int count, std::uint64_t seed);
const std::vector<std::string>& suite_names();

/// Executable transcriptions of the paper's counterexamples, with their
/// expected outcomes asserted by run().
struct Fixture {
  std::string name;
  std::string summary;
  // Runs the fixture; returns a report whose status must be Holds, meaning
  // the fixture reproduced its expected (counter)behavior exactly.
  TheoremReport (*run)();
};
const std::vector<Fixture>& fixtures();

}  // namespace mcs
