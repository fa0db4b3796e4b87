#pragma once

#include <string>

#include <json.hpp>

#include "gradmap/convex.hpp"
#include "gradmap/core.hpp"
#include "gradmap/lie.hpp"
#include "gradmap/projective.hpp"

namespace gradmap {

using json = nlohmann::json;

/// Complex matrices serialize as row arrays of [re, im] pairs; plain numbers
/// are accepted on input.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json vector_to_json(const RVector& v);
RVector real_vector_from_json(const json& j);

/// A point as an array of [re, im] pairs (plain numbers accepted on input).
json point_to_json(const ProjectivePoint& x);
ProjectivePoint point_from_json(const json& j);

/// {"dim": d, "vertices": [[...], ...]}
json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const json& j);

/// {"kind": "RealSpecialLinear" | ... | "Custom", "n": n, "basis": [...]}
json group_to_json(const CompatibleGroup& g);
CompatibleGroup group_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace gradmap
