#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gradmap/flow.hpp"
#include "gradmap/report.hpp"
#include "gradmap/scenario.hpp"

namespace gradmap {

struct SuiteOptions {
  /// Multiplies every sample count (minimum 1 per count). 1 is the full size.
  double scale = 1.0;
};

/// Every suite name known to run_suite.
std::vector<std::string> suite_names();

/// Runs one suite on a scenario. Throws UnknownSuite if the suite is not
/// registered for the scenario. Deterministic in (scenario, suite, seed, options)
/// apart from the timing block.
RunReport run_suite(const Scenario& scenario, const std::string& suite, std::uint64_t seed,
                    const SuiteOptions& options = {});

/// Flow options carrying the scenario's tangent projector.
FlowOptions scenario_flow_options(const Scenario& scenario);

struct ComponentAnalysis {
  CriticalComponent component;
  int tangent_dim = 0;          // real dimension of the K-orbit through the representative
  RVector transverse_eigenvalues;
  double tangent_hessian_norm = 0.0;  // |Hess f| restricted to the component tangent
  int index = 0;                // number of negative transverse eigenvalues
  int euler = 0;                // circle fixed points lying in the component
};

struct TwoOrbitMorseReport {
  std::vector<ComponentAnalysis> components;  // ascending f
  int euler_total = 0;                        // circle fixed points on X
  int min_members = 0;
  int min_same = 0;
  int min_different = 0;
  int min_inconclusive = 0;
  double min_max_orbit_distance = 0.0;
};

/// Critical components of f, their transverse Hessians, K-orbit structure of
/// the minimum and Euler characteristics by circle localization. Throws
/// ComponentCountMismatch unless exactly two components are found.
TwoOrbitMorseReport two_orbit_morse_analysis(const Scenario& scenario, std::uint64_t seed, int seed_count = 32);

/// Single-scenario suites with their own entry points.
RunReport coisotropic_suite(const Scenario& scenario, std::uint64_t seed, const SuiteOptions& options = {});
RunReport unique_closed_orbit_suite(const Scenario& scenario, std::uint64_t seed, const SuiteOptions& options = {});
RunReport abelian_from_nonabelian_suite(const Scenario& scenario, std::uint64_t seed,
                                        const SuiteOptions& options = {});

}  // namespace gradmap
