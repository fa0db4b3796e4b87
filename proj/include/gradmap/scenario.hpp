#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gradmap/flow.hpp"
#include "gradmap/lie.hpp"
#include "gradmap/projective.hpp"

namespace gradmap {

/// A group acting on X inside P(C^n), with the samplers and closed-form data
/// the suites need.
struct Scenario {
  Scenario(std::string name_, std::string description_, CompatibleGroup group_, AbelianSubalgebra abelian_)
      : name(std::move(name_)),
        description(std::move(description_)),
        group(std::move(group_)),
        abelian(std::move(abelian_)) {}

  std::string name;
  std::string description;
  CompatibleGroup group;
  AbelianSubalgebra abelian;

  /// X != P(C^n): samples, flows and tangent spaces go through the constraint.
  bool constrained = false;
  std::function<double(const ProjectivePoint&)> constraint_residual;
  TangentProjector projector;

  PointSampler sample;                // FS-like sample of X
  PointSampler sample_spread;         // heavy-tailed amplitudes; reaches near the fixed points
  PointSampler sample_ambient;        // P(C^n)
  PointSampler sample_ambient_spread;
  PointSampler sample_closed_orbit;   // empty unless a closed orbit is declared

  std::vector<ProjectivePoint> critical_points;   // closed-form critical points of f
  std::vector<ProjectivePoint> ness_base_points;
  std::vector<std::string> suites;
  nlohmann::json expected = nlohmann::json::object();

  int n() const { return group.n(); }
  bool has_suite(const std::string& suite) const;
};

/// Built-in scenario names, in registry order.
std::vector<std::string> scenario_names();

/// Builds a registered scenario. `n` selects the dimension of torus-pn
/// (2, 3 or 4; default 3) and is ignored elsewhere. Throws UnknownScenario.
Scenario make_scenario(const std::string& name, int n = 0);

/// Scenario from a JSON description:
/// {"name", "group": {...}, "abelian_basis": [...], "projective_dim": n,
///  "constraint": "none" | "real", "expected": {...}}.
Scenario scenario_from_config(const nlohmann::json& cfg);

/// The sl(2, C) image in gl(3, C) under Sym^2, in the orthonormal basis
/// e1^2, sqrt2 e1 e2, e2^2 (as a real basis of 6 matrices).
std::vector<CMatrix> sym2_sl2c_basis();
/// Point [a^2, sqrt2 a b, b^2] of the Veronese conic.
ProjectivePoint veronese_point(cplx a, cplx b);

/// Heavy-tailed sample: complex (or real) Gaussian coordinates with
/// log-normal amplitudes of spread `sigma`.
ProjectivePoint sample_spread_point(int n, Rng& rng, bool real, double sigma = 4.0);
/// FS-uniform real point of RP^{n-1}.
ProjectivePoint sample_real_point(int n, Rng& rng);

/// 1 - |v^T v| for the unit representative: zero iff [v] is a real point.
double real_point_residual(const ProjectivePoint& x);
/// Tangent projector of RP^{n-1} inside P(C^n).
CVector project_real_tangent(const CVector& v, const CVector& w);

}  // namespace gradmap
