#include "gradmap/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "gradmap/io.hpp"

namespace gradmap {

bool Scenario::has_suite(const std::string& suite) const {
  return std::find(suites.begin(), suites.end(), suite) != suites.end();
}

std::vector<std::string> scenario_names() {
  return {"sl2r-p1", "torus-pn", "two-orbit-p2", "rpn-coisotropic", "gl2r-unique-closed"};
}

ProjectivePoint sample_spread_point(int n, Rng& rng, bool real, double sigma) {
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double amp = std::exp(sigma * rng.normal());
    const double re = rng.normal();
    const double im = real ? 0.0 : rng.normal();
    v[i] = amp * cplx(re, im);
  }
  return ProjectivePoint(v);
}

ProjectivePoint sample_real_point(int n, Rng& rng) {
  return ProjectivePoint(rng.real_gaussian(n).cast<cplx>());
}

double real_point_residual(const ProjectivePoint& x) {
  const CVector& v = x.rep();
  return std::max(0.0, 1.0 - std::abs(cplx((v.transpose() * v)(0, 0))));
}

CVector project_real_tangent(const CVector& v, const CVector& w) {
  const cplx vtv = (v.transpose() * v)(0, 0);
  const cplx phase = std::polar(1.0, -0.5 * std::arg(vtv));  // phase * v is real
  const RVector r = (phase * v).real();
  RVector rw = (phase * w).real();
  rw -= r.dot(rw) / r.squaredNorm() * r;
  return rw.cast<cplx>() / phase;
}

std::vector<CMatrix> sym2_sl2c_basis() {
  // isometric embedding of Sym^2 C^2 into C^2 (x) C^2
  RMatrix s = RMatrix::Zero(4, 3);
  s(0, 0) = 1.0;
  s(1, 1) = s(2, 1) = 1.0 / std::sqrt(2.0);
  s(3, 2) = 1.0;
  auto rho = [&s](const CMatrix& a) {
    const CMatrix id = CMatrix::Identity(2, 2);
    CMatrix kron = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        kron.block(2 * i, 2 * j, 2, 2) += a(i, j) * id;
        kron.block(2 * i, 2 * j, 2, 2) += id(i, j) * a;
      }
    return CMatrix(s.transpose().cast<cplx>() * kron * s.cast<cplx>());
  };
  CMatrix h = CMatrix::Zero(2, 2), e = CMatrix::Zero(2, 2), f = CMatrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  e(0, 1) = 1.0;
  f(1, 0) = 1.0;
  std::vector<CMatrix> out;
  for (const CMatrix& a : {h, e, f}) {
    out.push_back(rho(a));
    out.push_back(rho(kI * a));
  }
  return out;
}

ProjectivePoint veronese_point(cplx a, cplx b) {
  CVector v(3);
  v << a * a, std::sqrt(2.0) * a * b, b * b;
  return ProjectivePoint(v);
}

namespace {

CVector vec(std::initializer_list<cplx> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

ProjectivePoint coordinate_point(int n, int j) {
  CVector e = CVector::Zero(n);
  e[j] = 1.0;
  return ProjectivePoint(e);
}

void set_ambient_samplers(Scenario& s) {
  const int n = s.n();
  s.sample_ambient = [n](Rng& rng) { return sample_uniform(n, rng); };
  s.sample_ambient_spread = [n](Rng& rng) { return sample_spread_point(n, rng, false); };
  if (!s.sample) s.sample = s.sample_ambient;
  if (!s.sample_spread) s.sample_spread = s.sample_ambient_spread;
  if (!s.constraint_residual) s.constraint_residual = [](const ProjectivePoint&) { return 0.0; };
}

void make_real_constrained(Scenario& s) {
  const int n = s.n();
  s.constrained = true;
  s.constraint_residual = real_point_residual;
  s.projector = project_real_tangent;
  s.sample = [n](Rng& rng) { return sample_real_point(n, rng); };
  s.sample_spread = [n](Rng& rng) { return sample_spread_point(n, rng, true); };
}

Scenario sl2r_p1() {
  const auto g = CompatibleGroup::real_special_linear(2);
  Scenario s{"sl2r-p1", "SL(2,R) on P(C^2); zero fiber {[(e1 +- i e2)/sqrt2]}", g, AbelianSubalgebra::diagonal(g)};
  s.sample_closed_orbit = [](Rng& rng) { return sample_real_point(2, rng); };
  s.critical_points = {coordinate_point(2, 0), ProjectivePoint(vec({1.0, kI})), ProjectivePoint(vec({1.0, -kI})),
                       ProjectivePoint(vec({0.6, 0.8}))};
  s.ness_base_points = {coordinate_point(2, 0), ProjectivePoint(vec({1.0, 0.5 * kI}))};
  s.suites = {"moment-identity", "gradient-identity", "hessian",    "flow-convergence", "group-lift",
              "ness",            "kempf-ness",        "intertwining", "retraction",     "abelian-from-nonabelian"};
  s.expected = {{"zero_fiber", {point_to_json(ProjectivePoint(vec({1.0, kI}))),
                                point_to_json(ProjectivePoint(vec({1.0, -kI})))}},
                {"max_f", 1.0 / 16.0}};
  set_ambient_samplers(s);
  return s;
}

Scenario torus_pn(int n) {
  if (n == 0) n = 3;
  if (n < 2 || n > 4) throw Error(ErrorCode::InvalidArgument, "torus-pn supports n in {2, 3, 4}");
  const auto g = CompatibleGroup::positive_diagonal_torus(n);
  Scenario s{"torus-pn", "positive diagonal torus on P(C^" + std::to_string(n) + ")", g,
             AbelianSubalgebra::diagonal(g)};
  for (int j = 0; j < n; ++j) s.critical_points.push_back(coordinate_point(n, j));
  s.critical_points.push_back(ProjectivePoint(CVector::Ones(n)));
  s.ness_base_points = {ProjectivePoint(CVector::Ones(n))};
  s.suites = {"abelian-polytope", "gradient-identity", "hessian", "census"};
  json verts = json::array();
  for (int j = 0; j < n; ++j) {
    RVector v = RVector::Zero(n);
    v[j] = 0.5;
    verts.push_back(vector_to_json(v));
  }
  s.expected = {{"polytope_vertices", verts}};
  set_ambient_samplers(s);
  return s;
}

Scenario two_orbit_p2() {
  const auto g = CompatibleGroup::custom(3, sym2_sl2c_basis(), "Sym2 SL(2,C)");
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 0) = 1.0 / std::sqrt(2.0);
  h(2, 2) = -1.0 / std::sqrt(2.0);
  Scenario s{"two-orbit-p2", "SL(2,C) on P(Sym^2 C^2): Veronese conic (closed) and its complement (open)", g,
             AbelianSubalgebra::custom(g, {h})};
  s.sample_closed_orbit = [](Rng& rng) {
    const CVector ab = rng.complex_gaussian(2);
    return veronese_point(ab[0], ab[1]);
  };
  s.critical_points = {coordinate_point(3, 0), coordinate_point(3, 1), coordinate_point(3, 2),
                       veronese_point(1.0, 1.0)};
  s.ness_base_points = {veronese_point(1.0, 1.0), ProjectivePoint(vec({1.0, cplx(0.3, 0.2), 0.5 * kI}))};
  s.suites = {"gradient-identity", "hessian", "flow-convergence", "group-lift", "ness", "stratification",
              "two-orbit-morse", "unique-closed-orbit"};
  s.expected = {{"critical_components", 2}, {"euler", {{"total", 3}, {"max", 2}, {"min", 1}}}};
  set_ambient_samplers(s);
  return s;
}

Scenario rpn_coisotropic() {
  const auto g = CompatibleGroup::positive_diagonal_torus(3);
  Scenario s{"rpn-coisotropic", "RP^2 inside P(C^3) with the positive diagonal torus", g,
             AbelianSubalgebra::diagonal(g)};
  make_real_constrained(s);
  for (int j = 0; j < 3; ++j) s.critical_points.push_back(coordinate_point(3, j));
  s.suites = {"coisotropic"};
  s.expected = {{"tangent_rank", 4}};
  set_ambient_samplers(s);
  return s;
}

Scenario gl2r_unique_closed() {
  const auto g = CompatibleGroup::real_general_linear(2);
  Scenario s{"gl2r-unique-closed", "GL(2,R) on P(C^2); unique closed orbit RP^1", g, AbelianSubalgebra::diagonal(g)};
  s.sample_closed_orbit = [](Rng& rng) { return sample_real_point(2, rng); };
  s.critical_points = {coordinate_point(2, 0), ProjectivePoint(vec({1.0, kI}))};
  s.ness_base_points = {coordinate_point(2, 0), ProjectivePoint(vec({1.0, 0.5 * kI}))};
  s.suites = {"unique-closed-orbit", "kostant", "sharp-convexity", "ness"};
  set_ambient_samplers(s);
  return s;
}

}  // namespace

Scenario make_scenario(const std::string& name, int n) {
  if (name == "sl2r-p1") return sl2r_p1();
  if (name == "torus-pn") return torus_pn(n);
  if (name == "two-orbit-p2") return two_orbit_p2();
  if (name == "rpn-coisotropic") return rpn_coisotropic();
  if (name == "gl2r-unique-closed") return gl2r_unique_closed();
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

Scenario scenario_from_config(const nlohmann::json& cfg) {
  const CompatibleGroup g = group_from_json(cfg.at("group"));
  if (cfg.contains("projective_dim") && cfg.at("projective_dim").get<int>() != g.n())
    throw Error(ErrorCode::InvalidArgument, "projective_dim does not match the group");
  std::vector<CMatrix> abasis;
  if (cfg.contains("abelian_basis"))
    for (const auto& m : cfg.at("abelian_basis")) abasis.push_back(matrix_from_json(m));
  AbelianSubalgebra a = abasis.empty() ? AbelianSubalgebra::diagonal(g) : AbelianSubalgebra::custom(g, abasis);
  Scenario s{cfg.value("name", std::string("custom")), cfg.value("description", std::string()), g, a};
  const std::string constraint = cfg.value("constraint", std::string("none"));
  if (constraint == "real")
    make_real_constrained(s);
  else if (constraint != "none")
    throw Error(ErrorCode::InvalidArgument, "unknown constraint '" + constraint + "'");
  if (cfg.contains("critical_points"))
    for (const auto& p : cfg.at("critical_points")) s.critical_points.push_back(point_from_json(p));
  if (cfg.contains("ness_base_points"))
    for (const auto& p : cfg.at("ness_base_points")) s.ness_base_points.push_back(point_from_json(p));
  if (cfg.contains("suites"))
    s.suites = cfg.at("suites").get<std::vector<std::string>>();
  else
    s.suites = {"gradient-identity", "flow-convergence", "ness"};
  if (cfg.contains("expected")) s.expected = cfg.at("expected");
  set_ambient_samplers(s);
  return s;
}

}  // namespace gradmap
