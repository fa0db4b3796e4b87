#include "gradmap/io.hpp"

#include <fstream>

namespace gradmap {

namespace {

cplx entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
  throw Error(ErrorCode::InvalidArgument, "expected a number or a [re, im] pair");
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorCode::InvalidArgument, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json vector_to_json(const RVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

RVector real_vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json point_to_json(const ProjectivePoint& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.rep().size(); ++i) out.push_back({x.rep()[i].real(), x.rep()[i].imag()});
  return out;
}

ProjectivePoint point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "point must be a nonempty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = entry_from_json(j[i]);
  return ProjectivePoint(v);
}

json polytope_to_json(const Polytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json(v));
  return {{"dim", p.dim()}, {"vertices", verts}};
}

Polytope polytope_from_json(const json& j) {
  std::vector<RVector> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(real_vector_from_json(v));
  return Polytope(std::move(verts));
}

json group_to_json(const CompatibleGroup& g) {
  json out = {{"kind", to_string(g.kind())}, {"n", g.n()}, {"label", g.label()}};
  if (g.kind() == GroupKind::Custom) {
    json basis = json::array();
    for (const auto& m : g.lie_algebra_basis()) basis.push_back(matrix_to_json(m));
    out["basis"] = basis;
  }
  return out;
}

CompatibleGroup group_from_json(const json& j) {
  const GroupKind kind = group_kind_from_string(j.at("kind").get<std::string>());
  const int n = j.at("n").get<int>();
  switch (kind) {
    case GroupKind::FullComplex: return CompatibleGroup::full_complex(n);
    case GroupKind::RealGeneralLinear: return CompatibleGroup::real_general_linear(n);
    case GroupKind::RealSpecialLinear: return CompatibleGroup::real_special_linear(n);
    case GroupKind::PositiveDiagonalTorus: return CompatibleGroup::positive_diagonal_torus(n);
    case GroupKind::Custom: break;
  }
  std::vector<CMatrix> basis;
  for (const auto& m : j.at("basis")) basis.push_back(matrix_from_json(m));
  return CompatibleGroup::custom(n, basis, j.value("label", std::string("custom")));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace gradmap
