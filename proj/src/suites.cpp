#include "gradmap/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include <unsupported/Eigen/MatrixFunctions>

#include "gradmap/convex.hpp"
#include "gradmap/io.hpp"
#include "gradmap/kempf_ness.hpp"
#include "gradmap/parallel.hpp"

namespace gradmap {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int scaled(int count, const SuiteOptions& o) {
  return std::max(1, static_cast<int>(std::lround(count * o.scale)));
}

CheckResult inconclusive(std::string name, double value, double threshold, const char* relation, json details) {
  CheckResult c;
  c.name = std::move(name);
  c.verdict = Verdict::Inconclusive;
  c.value = value;
  c.threshold = threshold;
  c.relation = relation;
  c.details = std::move(details);
  return c;
}

CVector random_unit_horizontal(const ProjectivePoint& x, Rng& rng) {
  CVector w = TangentVector::horizontal(x, rng.complex_gaussian(x.dim())).vec();
  return w / w.norm();
}

CMatrix random_antihermitian(int n, Rng& rng) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return 0.5 * (m - m.adjoint());
}

CMatrix random_p_unit(const CompatibleGroup& g, Rng& rng) {
  const RVector c = rng.real_gaussian(g.dim_p());
  return g.from_p_coords(c / c.norm());
}

double max_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

json point_list(const std::vector<RVector>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(vector_to_json(p));
  return out;
}

// ---------------------------------------------------------------------------

void moment_identity(RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int trials = scaled(1000, o);
  constexpr double h = 1e-5;
  std::vector<double> res(static_cast<std::size_t>(trials));
  parallel_for(res.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const int n = 2 + static_cast<int>(i % 3);
    const CMatrix xi = random_antihermitian(n, rng);
    const ProjectivePoint x = sample_uniform(n, rng);
    const TangentVector w(x, random_unit_horizontal(x, rng));
    const double fd =
        (moment_component(geodesic(w, h), xi) - moment_component(geodesic(w, -h), xi)) / (2.0 * h);
    res[i] = std::abs(fd - kahler_form(fundamental_field(xi, x), w));
  });
  rep.set_parameter("moment_trials", trials);
  rep.add(check_below("moment_identity", max_of(res), 1e-6, {{"trials", trials}, {"dims", {2, 3, 4}}, {"fd_step", h}}));
}

void gradient_identity(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int trials = scaled(1000, o);
  constexpr double h = 1e-5;
  std::vector<double> res(static_cast<std::size_t>(trials));
  parallel_for(res.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x = s.sample(rng);
    const TangentVector w(x, random_unit_horizontal(x, rng));
    const double fd = (norm_square(s.group, geodesic(w, h)) - norm_square(s.group, geodesic(w, -h))) / (2.0 * h);
    res[i] = std::abs(fd - fs_inner(grad_norm_square(s.group, x), w));
  });
  rep.set_parameter("gradient_trials", trials);
  rep.add(check_below("gradient_identity", max_of(res), 1e-6, {{"trials", trials}, {"fd_step", h}}));
}

void hessian_suite(const Scenario& s, RunReport& rep, std::uint64_t seed) {
  rep.add(check_at_least("critical_points", static_cast<double>(s.critical_points.size()), 3.0));
  double worst = 0.0;
  json per_point = json::array();
  for (std::size_t i = 0; i < s.critical_points.size(); ++i) {
    const ProjectivePoint& x = s.critical_points[i];
    const TangentOperator fd = hessian_f(s.group, x);
    const RMatrix d = dmu_matrix(s.group, x, fd.frame);
    const TangentOperator lin = field_linearization(gradient_map(s.group, x), x);
    const RMatrix analytic = d.transpose() * d + lin.matrix;
    double err = (fd.matrix - analytic).cwiseAbs().maxCoeff();
    Rng rng(derive_seed(seed, i));
    for (int k = 0; k < 20; ++k) {
      const CVector w = random_unit_horizontal(x, rng);
      const double q = (d * fd.to_coeffs(w)).squaredNorm() + lin.quadratic_form(w);
      err = std::max(err, std::abs(fd.quadratic_form(w) - q));
    }
    worst = std::max(worst, err);
    const HessianSignature sig = signature(fd.eigenvalues());
    per_point.push_back({{"point", point_to_json(x)},
                         {"residual", err},
                         {"signature", {sig.negative, sig.zero, sig.positive}}});
  }
  rep.add(check_below("hessian_formula", worst, 1e-5, {{"points", per_point}}));
}

void flow_convergence(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int runs = scaled(200, o);
  const FlowOptions opts = scenario_flow_options(s);
  struct Row {
    bool converged = false, lyapunov = true, tail = true, gamma = true;
    double grad = 0, min_decrease = 0, bound = -INFINITY, arc = -INFINITY, t_end = 0, psi = 0;
    std::string error;
  };
  std::vector<Row> rows(static_cast<std::size_t>(runs));
  parallel_for(rows.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x0 = s.sample(rng);
    Row& r = rows[i];
    try {
      const Trajectory tr = integrate_flow(s.group, x0, opts);
      r.converged = tr.converged();
      r.grad = tr.grad_norms.back();
      r.min_decrease = tr.min_decrease;
      r.t_end = tr.times.back();
      if (!r.converged) return;
      try {
        const LojasiewiczReport lj = lojasiewicz_diagnostics(tr);
        r.bound = lj.bound_residual;
        r.arc = lj.arc_residual;
        r.psi = lj.psi_fit;
        r.gamma = lj.gamma_ok;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientTail) throw;
        r.tail = false;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LyapunovViolation) throw;
      r.lyapunov = false;
      r.error = e.what();
    }
  });
  int unconverged = 0, violations = 0, short_tails = 0, gamma_bad = 0;
  double grad = 0, min_dec = INFINITY, bound = -INFINITY, arc = -INFINITY, t_max = 0, psi_min = INFINITY;
  for (const auto& r : rows) {
    if (!r.lyapunov) {
      ++violations;
      continue;
    }
    if (!r.converged) ++unconverged;
    if (!r.tail) ++short_tails;
    if (!r.gamma) ++gamma_bad;
    grad = std::max(grad, r.grad);
    min_dec = std::min(min_dec, r.min_decrease);
    bound = std::max(bound, r.bound);
    arc = std::max(arc, r.arc);
    t_max = std::max(t_max, r.t_end);
    if (r.converged && r.tail) psi_min = std::min(psi_min, r.psi);
  }
  rep.set_parameter("flow_runs", runs);
  rep.add(check_equal("converged", runs - unconverged - violations, runs,
                      {{"max_final_grad", grad}, {"eps_grad", opts.eps_grad}, {"max_time", t_max},
                       {"t_max", opts.t_max}}));
  rep.add(check_equal("lyapunov_violations", violations, 0, {{"slack", opts.lyapunov_slack}}));
  rep.add(check_at_least("monotone_f", min_dec, -opts.lyapunov_slack));
  rep.add(check_equal("lojasiewicz_tail_available", short_tails, 0));
  rep.add(check_at_most("lojasiewicz_bound", bound, 1e-10, {{"min_psi", psi_min}}));
  rep.add(check_at_most("arc_length_bound", arc, 1e-9));
  rep.add(check_equal("lojasiewicz_gamma", gamma_bad, 0, {{"accepted_range", {0.45, 1.0}}}));
}

bool traceless_algebra(const CompatibleGroup& g) {
  for (const auto& m : g.lie_algebra_basis())
    if (std::abs(m.trace()) > 1e-12) return false;
  return true;
}

void group_lift_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int runs = scaled(50, o);
  const FlowOptions opts = scenario_flow_options(s);
  std::vector<double> drift(static_cast<std::size_t>(runs)), det(static_cast<std::size_t>(runs));
  parallel_for(drift.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x0 = s.sample(rng);
    const Trajectory tr = integrate_flow(s.group, x0, opts);
    const GroupLift lift = group_lift(s.group, x0, tr, std::numeric_limits<double>::infinity(), opts);
    drift[i] = lift.max_drift;
    det[i] = lift.max_det_error;
  });
  rep.set_parameter("lift_runs", runs);
  rep.add(check_below("group_lift_drift", max_of(drift), 1e-6, {{"runs", runs}}));
  if (traceless_algebra(s.group))
    rep.add(check_below("group_lift_determinant", max_of(det), 1e-9));
}

void ness_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int samples = scaled(50, o);
  const FlowOptions opts = scenario_flow_options(s);
  rep.set_parameter("ness_samples", samples);
  for (std::size_t b = 0; b < s.ness_base_points.size(); ++b) {
    const NessReport nr = ness_uniqueness_experiment(s.group, s.ness_base_points[b], samples, derive_seed(seed, b), opts);
    const std::string tag = "[" + std::to_string(b) + "]";
    const json base = {{"base_point", point_to_json(s.ness_base_points[b])}};
    rep.add(check_equal("ness_converged" + tag, nr.unconverged, 0, base));
    rep.add(check_below("ness_f_spread" + tag, nr.f_spread, 1e-7));
    rep.add(check_below("ness_spectrum_spread" + tag, nr.spectrum_spread, 1e-6));
    rep.add(check_equal("ness_different" + tag, nr.different, 0,
                        {{"same", nr.same}, {"inconclusive", nr.inconclusive},
                         {"max_orbit_distance", nr.max_orbit_distance}}));
    rep.add(check_below("ness_inconclusive_fraction" + tag, static_cast<double>(nr.inconclusive) / samples, 0.05));
  }
}

// ---------------------------------------------------------------------------
// Kempf-Ness

double phi_along(const ProjectivePoint& x, const CMatrix& g, const CMatrix& xi, double t) {
  return kn_phi(x, g * hermitian_exp(t * xi));
}

void kempf_ness_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const CompatibleGroup& G = s.group;
  const int triples = scaled(100, o);
  struct Row {
    double cocycle = 0, kinv = 0, first = 0, second_min = INFINITY, convex_min = INFINITY, second_fd = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(triples));
  parallel_for(rows.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x = s.sample(rng);
    const CMatrix g = G.sample_g(rng, 2.0);
    const CMatrix h = G.sample_g(rng, 2.0);
    const CMatrix k = G.sample_k(rng);
    Row& r = rows[i];
    r.cocycle = std::abs(kn_value(x, h * g) - kn_value(x, g) - kn_value(act(g, x), h));
    r.kinv = std::abs(kn_value(x, k * g) - kn_value(x, g));

    const CMatrix xi = random_p_unit(G, rng);
    const KnDerivatives an = kn_derivatives(G, x, g, xi);
    auto d1 = [&](double step) {
      return (phi_along(x, g, xi, step) - phi_along(x, g, xi, -step)) / (2.0 * step);
    };
    const double first_fd = (4.0 * d1(5e-4) - d1(1e-3)) / 3.0;
    r.first = std::abs(first_fd - an.first);

    const double p0 = phi_along(x, g, xi, 0.0);
    auto d2 = [&](double step) {
      return (phi_along(x, g, xi, step) - 2.0 * p0 + phi_along(x, g, xi, -step)) / (step * step);
    };
    const double second_fd = (4.0 * d2(5e-3) - d2(1e-2)) / 3.0;
    r.second_fd = std::abs(second_fd - an.second);
    r.second_min = an.second;
    for (double step : {0.05, 0.5, 2.0})
      r.convex_min = std::min(r.convex_min, phi_along(x, g, xi, step) - 2.0 * p0 + phi_along(x, g, xi, -step));
  });
  double cocycle = 0, kinv = 0, first = 0, second_min = INFINITY, convex_min = INFINITY, second_fd = 0;
  for (const auto& r : rows) {
    cocycle = std::max(cocycle, r.cocycle);
    kinv = std::max(kinv, r.kinv);
    first = std::max(first, r.first);
    second_min = std::min(second_min, r.second_min);
    convex_min = std::min(convex_min, r.convex_min);
    second_fd = std::max(second_fd, r.second_fd);
  }
  rep.set_parameter("kn_triples", triples);
  rep.add(check_below("kn_cocycle", cocycle, 1e-10));
  rep.add(check_below("kn_k_invariance", kinv, 1e-10));
  rep.add(check_below("kn_first_derivative", first, 1e-8));
  rep.add(check_at_least("kn_second_derivative", std::min(second_min, convex_min), -1e-10,
                         {{"min_analytic", second_min}, {"min_second_difference", convex_min}}));
  rep.add(check_below("kn_second_derivative_fd", second_fd, 1e-6));

  // rho monotonicity on paired flows
  const int pairs = scaled(5, o);
  const FlowOptions fo = scenario_flow_options(s);
  std::vector<double> increase(static_cast<std::size_t>(pairs));
  parallel_for(increase.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed ^ 0x5eedULL, i));
    const ProjectivePoint x = s.sample(rng);
    const CMatrix g0 = G.sample_g(rng, 1.5);
    const CMatrix h0 = G.sample_g(rng, 1.5);
    increase[i] = paired_flow_distance_monotonicity(G, x, g0, h0, 10.0, 200, fo).max_increase;
  });
  rep.add(check_below("rho_monotonicity", max_of(increase), 1e-8, {{"pairs", pairs}}));

  // Morse-Bott structure and infimum at a base point whose orbit meets the zero fiber
  Rng rng(derive_seed(seed, 0xb0b));
  const ProjectivePoint x = s.ness_base_points.empty() ? s.sample(rng) : s.ness_base_points.back();
  MorseBottReport mb;
  try {
    mb = kn_morse_bott_probe(G, x, 400.0, fo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCriticalPointFound) throw;
    rep.add(inconclusive("kn_morse_bott", NAN, 1e-4, "<", {{"reason", e.what()}}));
    return;
  }
  rep.add(check_below("kn_morse_bott", mb.agree ? mb.max_angle : INFINITY, 1e-4,
                      {{"kernel_dim", mb.kernel_dim}, {"stabilizer_dim", mb.stabilizer_dim},
                       {"min_positive", mb.min_positive}}));

  // grid infimum over a radius-5 geodesic ball (a 2-plane section through the critical coset)
  const double lim = kn_phi(x, mb.critical_element);
  std::vector<CMatrix> plane;
  if (G.dim_p() <= 2) {
    plane = G.p_basis();
  } else {
    const CMatrix eta = G.project_p(0.5 * hermitian_log(mb.critical_element * mb.critical_element.adjoint()));
    CMatrix e1 = eta.norm() > 1e-12 ? CMatrix(eta / eta.norm()) : random_p_unit(G, rng);
    CMatrix e2 = random_p_unit(G, rng);
    e2 -= inner(e2, e1) * e1;
    plane = {e1, e2 / e2.norm()};
  }
  constexpr double radius = 5.0, step = 1e-2;
  const int m = static_cast<int>(std::lround(radius / step));
  std::vector<double> row_min(static_cast<std::size_t>(2 * m + 1), INFINITY);
  parallel_for(row_min.size(), [&](std::size_t r) {
    const double a = (static_cast<int>(r) - m) * step;
    for (int c = -m; c <= m; ++c) {
      const double b = c * step;
      if (a * a + b * b > radius * radius) continue;
      CMatrix xi = a * plane[0];
      if (plane.size() > 1) xi += b * plane[1];
      else if (c != 0) continue;
      row_min[r] = std::min(row_min[r], kn_phi(x, hermitian_exp(xi)));
    }
  });
  const double grid_min = *std::min_element(row_min.begin(), row_min.end());
  rep.add(check_below("kn_infimum", lim - grid_min, 1e-4,
                      {{"limit", lim}, {"grid_min", grid_min}, {"radius", radius}, {"step", step},
                       {"plane_dim", plane.size()}}));
}

void intertwining_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int runs = scaled(20, o);
  const FlowOptions fo = scenario_flow_options(s);
  std::vector<double> coupling(static_cast<std::size_t>(runs)), increase(static_cast<std::size_t>(runs));
  parallel_for(coupling.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x = s.sample(rng);
    const CMatrix g0 = s.group.sample_g(rng, 1.5);
    const KnPath path = kn_flow(s.group, x, g0, 20.0, 200, std::numeric_limits<double>::infinity(), fo);
    coupling[i] = path.coupling_residual;
    increase[i] = path.max_phi_increase;
  });
  rep.set_parameter("intertwining_runs", runs);
  rep.add(check_below("shadow_coupling", max_of(coupling), 1e-6, {{"runs", runs}, {"t_end", 20.0}}));
  rep.add(check_at_most("phi_nonincreasing", max_of(increase), 1e-10));
}

// ---------------------------------------------------------------------------
// Strata

void stratification_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int seeds = scaled(500, o);
  const FlowOptions fo = scenario_flow_options(s);
  struct Row {
    std::optional<StratumLabel> label;
    bool midpoint_ok = true;
  };
  std::vector<Row> rows(static_cast<std::size_t>(seeds));
  const int closed = s.sample_closed_orbit ? seeds / 2 : 0;
  parallel_for(rows.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const bool on_closed = static_cast<int>(i) < closed;
    const ProjectivePoint x = on_closed ? s.sample_closed_orbit(rng) : s.sample(rng);
    try {
      const Trajectory tr = integrate_flow(s.group, x, fo);
      if (!tr.converged()) return;
      const StratumLabel lab{chamber_label(s.abelian, tr.limit_beta), norm_square(s.group, *tr.limit)};
      rows[i].label = lab;
      if (!on_closed && i % 10 == 0) {
        const ProjectivePoint mid(tr.states[tr.states.size() / 2]);
        rows[i].midpoint_ok = same_label(classify_stratum(s.abelian, mid, fo), lab);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCriticalPointFound) throw;
    }
  });
  std::vector<StratumLabel> labels;
  int unconverged = 0, midpoint_bad = 0;
  for (const auto& r : rows) {
    if (!r.midpoint_ok) ++midpoint_bad;
    if (!r.label) {
      ++unconverged;
      continue;
    }
    if (std::none_of(labels.begin(), labels.end(), [&](const StratumLabel& l) { return same_label(l, *r.label); }))
      labels.push_back(*r.label);
  }
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.f_value < b.f_value; });
  json lab_json = json::array();
  for (const auto& l : labels) lab_json.push_back({{"beta_plus", vector_to_json(l.beta_plus)}, {"f", l.f_value}});
  rep.set_parameter("strat_seeds", seeds);
  rep.set_parameter("strat_closed_orbit_seeds", closed);
  rep.add(check_equal("strata_unconverged", unconverged, 0));
  if (s.expected.contains("critical_components"))
    rep.add(check_equal("stratum_labels", static_cast<double>(labels.size()),
                        s.expected.at("critical_components").get<double>(), {{"labels", lab_json}}));
  else
    rep.add(inconclusive("stratum_labels", static_cast<double>(labels.size()), NAN, "==",
                         {{"labels", lab_json}, {"reason", "no expected count declared"}}));
  rep.add(check_equal("label_constant_along_flow", midpoint_bad, 0));

  ComponentSearchOptions co;
  co.seed_count = 16;
  co.rng_seed = derive_seed(seed, 0xc0);
  co.flow = fo;
  co.sampler = s.sample;
  const auto comps = find_critical_components(s.group, co);
  const int probes = scaled(100, o);
  const OpennessReport open = min_stratum_openness_check(s.abelian, comps.front(), probes, 1e-3,
                                                         derive_seed(seed, 0x0e), fo);
  rep.add(check_equal("min_stratum_open", open.fraction(), 1.0, {{"probes", open.probes}, {"radius", 1e-3}}));
  if (comps.size() >= 2) {
    const OpennessReport top = min_stratum_openness_check(s.abelian, comps.back(), scaled(20, o), 1e-3,
                                                          derive_seed(seed, 0x0f), fo);
    rep.add(check_below("max_stratum_not_open", top.fraction(), 1.0, {{"probes", top.probes}}));
  }
}

void retraction_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int n = scaled(100, o);
  const RetractionReport r = retraction_check(s.group, n, seed, scenario_flow_options(s), s.sample);
  rep.set_parameter("retraction_samples", n);
  rep.add(check_equal("retraction_converged", r.unconverged, 0));
  rep.add(check_below("retraction_limit_in_zero_fiber", r.max_limit_mu, 1e-8));
  rep.add(check_below("retraction_equivariance", r.max_equivariance_error, 1e-6));
  rep.add(check_below("retraction_fixes_zero_fiber", r.max_fixed_motion, 1e-8));
}

void census_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  if (!s.abelian.is_diagonal()) throw Error(ErrorCode::UnsupportedKind, "census needs a diagonal abelian subalgebra");
  const int n = s.n();
  RVector d(n);
  for (int j = 0; j < n; ++j) d[j] = n - 1 - j - 0.5 * (n - 1);
  const CMatrix beta = s.abelian.from_diag(d);
  const int seeds = scaled(1000, o);
  const CensusReport c = unstable_manifold_census(s.group, beta, seeds, seed);
  int index_bad = 0;
  for (std::size_t j = 0; j < c.components.size(); ++j)
    if (c.components[j].index != 2 * (n - 1 - static_cast<int>(j)) || c.components[j].dim != 0) ++index_bad;
  rep.set_parameter("census_seeds", seeds);
  rep.add(check_equal("census_components", static_cast<double>(c.components.size()), n));
  rep.add(check_equal("census_unassigned", c.unassigned, 0));
  rep.add(check_equal("census_open_component", c.open_component, 0));
  rep.add(check_equal("census_open_basin", c.components.empty() ? 0 : c.components[0].basin_count, seeds));
  rep.add(check_equal("census_indices", index_bad, 0));
}

// ---------------------------------------------------------------------------
// Two-orbit Morse-Bott structure

void two_orbit_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int seed_count = std::max(8, scaled(32, o));
  rep.set_parameter("component_seeds", seed_count);
  TwoOrbitMorseReport r;
  try {
    r = two_orbit_morse_analysis(s, seed, seed_count);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ComponentCountMismatch) throw;
    rep.add(check_equal("component_count", NAN, 2, {{"error", e.what()}}));
    return;
  }
  rep.add(check_equal("component_count", static_cast<double>(r.components.size()), 2));
  const ComponentAnalysis& mn = r.components.front();
  const ComponentAnalysis& mx = r.components.back();
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"f", c.component.f_value},
                     {"representative", point_to_json(c.component.representative)},
                     {"tangent_dim", c.tangent_dim},
                     {"transverse_eigenvalues", vector_to_json(c.transverse_eigenvalues)},
                     {"index", c.index},
                     {"euler", c.euler},
                     {"members", c.component.members.size()}});
  rep.add(check_below("max_transverse_negative", mx.transverse_eigenvalues.maxCoeff(), -1e-6, {{"components", comps}}));
  rep.add(check_at_least("min_transverse_positive", mn.transverse_eigenvalues.minCoeff(), 1e-6));
  rep.add(check_below("hessian_kernel_is_tangent", std::max(mn.tangent_hessian_norm, mx.tangent_hessian_norm), 1e-5));

  const json orbit = {{"members", r.min_members}, {"same", r.min_same}, {"inconclusive", r.min_inconclusive},
                      {"max_distance", r.min_max_orbit_distance}};
  if (r.min_different > 0)
    rep.add(check_equal("min_single_k_orbit", r.min_different, 0, orbit));
  else if (r.min_inconclusive > 0)
    rep.add(inconclusive("min_single_k_orbit", r.min_inconclusive, 0, "==", orbit));
  else
    rep.add(check_equal("min_single_k_orbit", r.min_different, 0, orbit));

  const int sum = mn.euler + mx.euler;
  rep.add(check_equal("euler_additivity", r.euler_total - sum, 0,
                      {{"total", r.euler_total}, {"max", mx.euler}, {"min", mn.euler}}));
  if (s.expected.contains("euler")) {
    const json& e = s.expected.at("euler");
    const int mism = (r.euler_total != e.at("total").get<int>()) + (mx.euler != e.at("max").get<int>()) +
                     (mn.euler != e.at("min").get<int>());
    rep.add(check_equal("euler_expected", mism, 0, {{"expected", e}}));
  }
  rep.add(check_equal("even_indices", (mn.index % 2) + (mx.index % 2), 0, {{"max_index", mx.index}, {"min_index", mn.index}}));
}

// ---------------------------------------------------------------------------
// Convexity suites

Polytope hull_of(const std::vector<RVector>& pts) { return convex_hull(pts).polytope; }

void abelian_polytope_suite(const Scenario& s, RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int samples = scaled(10000, o);
  std::vector<RVector> img(static_cast<std::size_t>(samples));
  parallel_for(img.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    img[i] = gradient_map_abelian(s.abelian, s.sample_spread(rng));
  });
  const FixedPointPolytope ref = fixed_point_polytope(s.abelian);
  const Polytope hull = hull_of(img);
  const PolytopeComparison cmp = polytope_equal_by_support(hull, ref.polytope, 1e-3);
  int outside = 0;
  for (const auto& p : img) outside += !contains(ref.polytope, p, 1e-9);
  rep.set_parameter("polytope_samples", samples);
  rep.add(check_below("polytope_hausdorff", cmp.hausdorff, 1e-2, {{"reference_vertices", point_list(ref.polytope.vertices())}}));
  rep.add(check_equal("polytope_equal_by_support", cmp.equal ? 1 : 0, 1,
                      {{"slack", 1e-3}, {"max_support_gap", cmp.max_support_gap},
                       {"sample_hull_vertices", hull.size()}}));
  rep.add(check_equal("samples_inside_fixed_point_polytope", outside, 0));
}

void kostant_suite(RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const auto g = CompatibleGroup::real_general_linear(3);
  Rng rng(derive_seed(seed, 0));
  const CMatrix x = g.from_p_coords(rng.real_gaussian(g.dim_p()));
  const int samples = scaled(10000, o);
  const KostantReport k = kostant_projection_probe(g, x, samples, derive_seed(seed, 1));
  rep.set_parameter("kostant_samples", samples);
  rep.add(check_equal("kostant_majorization", k.majorization_failures, 0,
                      {{"worst_margin", k.worst_margin}, {"spectrum", vector_to_json(sorted_spectrum(x))}}));
  rep.add(check_equal("kostant_vertex_count", static_cast<double>(k.vertices.size()), 6));
  rep.add(check_below("kostant_vertices_reached", k.max_vertex_distance, 1e-3));
}

std::vector<std::pair<std::string, Polytope>> sharp_fixtures() {
  auto v = [](double a, double b, double c) {
    RVector r(3);
    r << a, b, c;
    return r;
  };
  return {{"segment", Polytope({v(2, 0, -2), v(1, 0, -1)})},
          {"triangle", Polytope({v(2, 0, -2), v(1, 1, -2), v(2, -1, -1)})}};
}

void sharp_convexity_suite(RunReport& rep, std::uint64_t seed, const SuiteOptions& o) {
  const int pairs = scaled(1000, o);
  constexpr double resolution = 0.05, slack = 1e-9;
  rep.set_parameter("sharp_pairs", pairs);
  rep.set_parameter("sharp_resolution", resolution);
  std::size_t idx = 0;
  for (const auto& [name, s] : sharp_fixtures()) {
    const SharpBody body(s, resolution);
    const ConvexityReport cr = sharp_convexity_report(body, pairs, derive_seed(seed, idx++), slack);
    rep.add(check_equal("sharp_midpoints[" + name + "]", cr.violations, 0,
                        {{"pairs", cr.pairs}, {"worst_margin", cr.worst_margin}, {"slack", slack}}));
    // S# against the hull of W ext(S) on random points of the sum-zero plane
    const Polytope hull = body.sampled_body();
    Rng rng(derive_seed(seed, 100 + idx));
    int disagree = 0, boundary = 0, inside = 0;
    const int probes = scaled(1000, o);
    for (int k = 0; k < probes; ++k) {
      RVector x(3);
      x[0] = rng.uniform(-2.5, 2.5);
      x[1] = rng.uniform(-2.5, 2.5);
      x[2] = -x[0] - x[1];
      // the margin is <= 0 everywhere and ~0 inside; only points just outside either body are ambiguous
      const double m = body.margin(x);
      const double dist = nearest_point(hull, x).distance;
      if ((m < -1e-9 && m > -1e-6) || (dist > 1e-9 && dist < 1e-6)) {
        ++boundary;
        continue;
      }
      disagree += (m >= -1e-9) != (dist <= 1e-9);
      inside += dist <= 1e-9;
    }
    rep.add(check_equal("sharp_matches_hull[" + name + "]", disagree, 0, {{"probes", probes}, {"inside", inside}, {"near_boundary", boundary}}));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

FlowOptions scenario_flow_options(const Scenario& scenario) {
  FlowOptions o;
  o.projector = scenario.projector;
  return o;
}

TwoOrbitMorseReport two_orbit_morse_analysis(const Scenario& s, std::uint64_t seed, int seed_count) {
  ComponentSearchOptions co;
  co.seed_count = seed_count;
  co.rng_seed = seed;
  co.ascent = true;
  co.flow = scenario_flow_options(s);
  co.sampler = s.sample;
  const auto comps = find_critical_components(s.group, co);
  if (comps.size() != 2)
    throw Error(ErrorCode::ComponentCountMismatch, "found " + std::to_string(comps.size()) + " critical components");

  TwoOrbitMorseReport out;
  for (const auto& c : comps) {
    ComponentAnalysis a{c, 0, RVector(), 0.0, 0, 0};
    const ProjectivePoint& x = c.representative;
    const TangentOperator h = hessian_f(s.group, x);
    const RMatrix tangent = orth(orbit_directions(s.group.k_basis(), x, h.frame), 1e-8);
    a.tangent_dim = static_cast<int>(tangent.cols());
    const RMatrix normal = null_space(tangent.transpose(), 1e-10);
    const RMatrix ht = normal.transpose() * h.matrix * normal;
    a.transverse_eigenvalues = Eigen::SelfAdjointEigenSolver<RMatrix>(ht).eigenvalues();
    a.tangent_hessian_norm = tangent.cols() ? (tangent.transpose() * h.matrix * tangent).norm() : 0.0;
    a.index = static_cast<int>((a.transverse_eigenvalues.array() < -1e-6).count());
    out.components.push_back(std::move(a));
  }

  // Euler characteristics by localization on a circle in K with isolated fixed points
  const CMatrix h0 = s.abelian.basis().front();
  if (s.group.algebra_residual(kI * h0) < 1e-9) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h0);
    const RVector ev = es.eigenvalues();
    bool isolated = true;
    for (Eigen::Index i = 1; i < ev.size(); ++i) isolated &= ev[i] - ev[i - 1] > 1e-9;
    if (isolated) {
      out.euler_total = static_cast<int>(ev.size());
      Rng rng(derive_seed(seed, 0xe1));
      for (Eigen::Index j = 0; j < ev.size(); ++j) {
        const ProjectivePoint z(es.eigenvectors().col(j));
        for (auto& a : out.components) {
          if (std::abs(norm_square(s.group, z) - a.component.f_value) > 1e-8) continue;
          if (k_orbit_distance(s.group, a.component.representative, z, 20, rng).distance < 1e-7) ++a.euler;
        }
      }
    } else {
      out.euler_total = -1;
    }
  } else {
    out.euler_total = -1;
  }

  // the minimum is a single K-orbit
  const CriticalComponent& mn = comps.front();
  Rng rng(derive_seed(seed, 0x0b));
  for (const auto& m : mn.members) {
    ++out.min_members;
    const double d = k_orbit_distance(s.group, mn.representative, m, 20, rng).distance;
    out.min_max_orbit_distance = std::max(out.min_max_orbit_distance, d);
    if (d < 1e-5)
      ++out.min_same;
    else
      ++out.min_inconclusive;  // invariants agree by construction of the cluster
  }
  return out;
}

RunReport coisotropic_suite(const Scenario& s, std::uint64_t seed, const SuiteOptions& o) {
  RunReport rep(s.name, "coisotropic", seed);
  if (!s.constrained) throw Error(ErrorCode::InvalidArgument, "coisotropic suite needs a constrained scenario");
  const int n = s.n();
  const CompatibleGroup& G = s.group;

  // samplers respect the constraint and the projector is an orthogonal projection
  const int points = scaled(100, o);
  std::vector<double> residual(static_cast<std::size_t>(points)), proj_err(static_cast<std::size_t>(points));
  std::vector<int> rank(static_cast<std::size_t>(points));
  parallel_for(rank.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const ProjectivePoint x = s.sample(rng);
    residual[i] = std::max(s.constraint_residual(x), s.constraint_residual(s.sample_spread(rng)));
    const CVector& v = x.rep();
    const CVector a = random_unit_horizontal(x, rng), b = random_unit_horizontal(x, rng);
    const CVector pa = s.projector(v, a), pb = s.projector(v, b);
    const double idem = (s.projector(v, pa) - pa).norm();
    const double sym = std::abs(pa.dot(b).real() - a.dot(pb).real());
    proj_err[i] = std::max(idem, sym);
    const auto frame = tangent_frame(x);
    RMatrix span(2 * n, 2 * static_cast<Eigen::Index>(frame.size()));
    for (std::size_t k = 0; k < frame.size(); ++k) {
      const CVector t = s.projector(v, frame[k]);
      span.col(static_cast<Eigen::Index>(2 * k)) = realify(t);
      span.col(static_cast<Eigen::Index>(2 * k + 1)) = realify(CVector(kI * t));
    }
    rank[i] = static_cast<int>(orth(span, 1e-9).cols());
  });
  int rank_bad = 0;
  for (int r : rank) rank_bad += r != 2 * (n - 1);
  rep.set_parameter("coisotropic_points", points);
  rep.add(check_below("constraint_residual", max_of(residual), 1e-10));
  rep.add(check_below("projector_orthogonal", max_of(proj_err), 1e-10));
  rep.add(check_equal("tangent_sum_rank", rank_bad, 0, {{"expected_rank", 2 * (n - 1)}, {"points", points}}));

  // max of mu_a^xi over X vs over Z, sampled and polished by the ascent flow exp(t xi)
  auto polish = [&](const ProjectivePoint& x, const CMatrix& xi) {
    RVector d = xi.diagonal().real();
    const double top = d.maxCoeff();
    const double t = 400.0 / std::max(1e-12, d.maxCoeff() - d.minCoeff());
    CVector v = x.rep();
    for (int j = 0; j < n; ++j) v[j] *= std::exp(t * (d[j] - top));
    return ProjectivePoint(v);
  };
  const int directions = scaled(30, o), per_dir = scaled(500, o);
  std::vector<double> gap(static_cast<std::size_t>(directions)), exact_gap(static_cast<std::size_t>(directions));
  parallel_for(gap.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed ^ 0xa11ULL, i));
    const CMatrix xi = s.abelian.from_coords(rng.real_gaussian(s.abelian.dim()));
    auto best = [&](const PointSampler& sampler) {
      std::vector<std::pair<double, ProjectivePoint>> vals;
      for (int k = 0; k < per_dir; ++k) {
        const ProjectivePoint p = sampler(rng);
        vals.emplace_back(gradient_component(G, p, xi), p);
      }
      std::partial_sort(vals.begin(), vals.begin() + std::min<std::ptrdiff_t>(5, per_dir), vals.end(),
                        [](const auto& a, const auto& b) { return a.first > b.first; });
      double m = vals.front().first;
      for (int k = 0; k < std::min(5, per_dir); ++k) m = std::max(m, gradient_component(G, polish(vals[k].second, xi), xi));
      return m;
    };
    const double mx = best(s.sample), mz = best(s.sample_ambient);
    gap[i] = std::abs(mx - mz);
    // closed form: half the largest eigenvalue of xi
    exact_gap[i] = std::abs(mx - 0.5 * sorted_spectrum(xi)[0]);
  });
  rep.add(check_below("max_over_X_equals_max_over_Z", max_of(gap), 1e-3,
                      {{"directions", directions}, {"max_gap_to_closed_form", max_of(exact_gap)}}));

  // hull of mu_a(X) equals the fixed-point polytope
  const int samples = scaled(20000, o);
  std::vector<RVector> img(static_cast<std::size_t>(samples));
  parallel_for(img.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed ^ 0x4011ULL, i));
    img[i] = gradient_map_abelian(s.abelian, s.sample_spread(rng));
  });
  const FixedPointPolytope ref = fixed_point_polytope(s.abelian);
  const PolytopeComparison cmp = polytope_equal_by_support(hull_of(img), ref.polytope, 1e-3);
  rep.set_parameter("coisotropic_samples", samples);
  rep.add(check_equal("image_equals_fixed_point_polytope", cmp.equal ? 1 : 0, 1,
                      {{"hausdorff", cmp.hausdorff}, {"slack", 1e-3}}));

  // density: A-orbit closures of generic points already fill mu_a(X)
  const int probes = scaled(200, o);
  std::vector<int> full(static_cast<std::size_t>(probes));
  parallel_for(full.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed ^ 0xde5ULL, i));
    const ProjectivePoint x = s.sample(rng);
    std::vector<RVector> pts{gradient_map_abelian(s.abelian, x)};
    for (int k = 0; k < 30; ++k) {
      const CMatrix xi = s.abelian.from_coords(rng.real_gaussian(s.abelian.dim()));
      pts.push_back(gradient_map_abelian(s.abelian, polish(x, xi)));
      pts.push_back(gradient_map_abelian(s.abelian, polish(x, CMatrix(-xi))));
    }
    full[i] = polytope_equal_by_support(hull_of(pts), ref.polytope, 1e-3).equal ? 1 : 0;
  });
  int hits = 0;
  for (int f : full) hits += f;
  rep.add(check_at_least("orbit_closure_density", static_cast<double>(hits) / probes, 0.95, {{"probes", probes}}));
  return rep;
}

RunReport unique_closed_orbit_suite(const Scenario& s, std::uint64_t seed, const SuiteOptions& o) {
  RunReport rep(s.name, "unique-closed-orbit", seed);
  if (!s.sample_closed_orbit) throw Error(ErrorCode::InvalidArgument, "scenario declares no closed orbit");
  const int samples = scaled(10000, o);
  // half the samples are pushed along exp(t beta), beta in a, which preserves every G-orbit
  auto push = [&](const ProjectivePoint& x, Rng& rng) {
    const CMatrix beta = s.abelian.from_coords(rng.real_gaussian(s.abelian.dim()));
    const double t = 8.0 * std::abs(rng.normal()) / beta.norm();
    return act(hermitian_exp(t * beta), x);
  };
  std::vector<RVector> closed(static_cast<std::size_t>(samples)), ambient(static_cast<std::size_t>(samples));
  parallel_for(closed.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    ProjectivePoint c = s.sample_closed_orbit(rng);
    ProjectivePoint z = i % 2 ? s.sample_ambient_spread(rng) : s.sample_ambient(rng);
    if (i % 2) {
      c = push(c, rng);
      z = push(z, rng);
    }
    closed[i] = gradient_map_abelian(s.abelian, c);
    ambient[i] = gradient_map_abelian(s.abelian, z);
  });
  const Polytope hc = hull_of(closed), ha = hull_of(ambient);
  const PolytopeComparison cmp = polytope_equal_by_support(hc, ha, 1e-3);
  rep.set_parameter("closed_orbit_samples", samples);
  rep.add(check_equal("closed_orbit_image_equals_ambient", cmp.equal ? 1 : 0, 1,
                      {{"hausdorff", cmp.hausdorff}, {"slack", 1e-3}, {"closed_vertices", point_list(hc.vertices())},
                       {"ambient_vertices", point_list(ha.vertices())}}));

  // Y = argmax of mu_p^beta is invariant under exp(g^{beta+})
  const int betas = scaled(20, o);
  std::vector<double> drop(static_cast<std::size_t>(betas));
  parallel_for(drop.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed ^ 0x7ULL, i));
    const CMatrix beta = s.abelian.from_coords(rng.real_gaussian(s.abelian.dim()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(beta);
    const RVector ev = es.eigenvalues();
    const double top = ev[ev.size() - 1];
    std::vector<Eigen::Index> top_idx;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
      if (top - ev[j] < 1e-9) top_idx.push_back(j);
    const auto par = ad_eigendecomposition(s.group, beta).parabolic();
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CVector y = CVector::Zero(s.n());
      for (Eigen::Index j : top_idx) y += cplx(rng.normal(), rng.normal()) * es.eigenvectors().col(j);
      CMatrix r = CMatrix::Zero(s.n(), s.n());
      for (const auto& b : par) r += rng.normal() * b;
      r /= std::max(1e-12, r.norm());
      for (double t : {0.5, 1.0, 2.0}) {
        const ProjectivePoint moved = act(CMatrix(t * r).exp(), ProjectivePoint(y));
        worst = std::max(worst, 0.5 * top - gradient_component(s.group, moved, beta));
      }
    }
    drop[i] = worst;
  });
  rep.add(check_below("argmax_set_invariance", max_of(drop), 1e-6, {{"betas", betas}}));
  return rep;
}

RunReport abelian_from_nonabelian_suite(const Scenario& s, std::uint64_t seed, const SuiteOptions& o) {
  RunReport rep(s.name, "abelian-from-nonabelian", seed);
  if (!s.abelian.is_diagonal() || s.abelian.weyl() != WeylType::Permutation)
    throw Error(ErrorCode::UnsupportedKind, "needs a diagonal abelian subalgebra with permutation Weyl group");
  const int samples = scaled(2000, o);
  constexpr double resolution = 1e-2;
  std::vector<RVector> spectra(static_cast<std::size_t>(samples)), diag(static_cast<std::size_t>(samples));
  parallel_for(spectra.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const CMatrix mu = gradient_map(s.group, s.sample(rng));
    spectra[i] = chamber_label(s.abelian, mu);
    diag[i] = s.abelian.diag_coords(mu);
  });
  const SharpBody body(hull_of(spectra), resolution);
  const Polytope image = hull_of(diag);

  int outside = 0;
  double worst = 0.0;
  for (const auto& d : diag) {
    const double m = body.margin(d);
    worst = std::min(worst, m);
    outside += m < -1e-9;
  }
  rep.set_parameter("afn_samples", samples);
  rep.set_parameter("afn_resolution", resolution);
  rep.add(check_equal("samples_in_sharp_body", outside, 0, {{"worst_margin", worst}}));

  // membership agreement on random points of the trace plane
  const int n = s.n();
  double trace = 0.0;
  RVector lo = diag.front(), hi = diag.front();
  for (const auto& d : diag) {
    trace += d.sum() / samples;
    lo = lo.cwiseMin(d);
    hi = hi.cwiseMax(d);
  }
  const RVector pad = RVector::Constant(n, 0.25 * (hi - lo).maxCoeff() + 1e-3);
  lo -= pad;
  hi += pad;
  Rng rng(derive_seed(seed, 0xa9));
  const int probes = scaled(2000, o);
  int agree = 0, near = 0;
  json mismatches = json::array();
  for (int k = 0; k < probes; ++k) {
    RVector x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.uniform(lo[j], hi[j]);
    x.array() -= (x.sum() - trace) / n;
    const double m = body.margin(x);
    const bool in_body = m >= -1e-9;
    const bool in_image = contains(image, x, 1e-9);
    if (in_body == in_image) {
      ++agree;
    } else {
      near += std::abs(m) < 2.0 * resolution;
      if (mismatches.size() < 10) mismatches.push_back({{"point", vector_to_json(x)}, {"margin", m}});
    }
  }
  const double frac = static_cast<double>(agree) / probes;
  const json details = {{"probes", probes}, {"mismatches", mismatches}, {"near_boundary", near}};
  if (frac < 0.99 && near == probes - agree)
    rep.add(inconclusive("membership_agreement", frac, 0.99, ">=", details));
  else
    rep.add(check_at_least("membership_agreement", frac, 0.99, details));
  return rep;
}

std::vector<std::string> suite_names() {
  return {"moment-identity", "gradient-identity", "hessian",           "flow-convergence",
          "group-lift",      "ness",              "kempf-ness",        "intertwining",
          "stratification",  "retraction",        "two-orbit-morse",   "census",
          "abelian-polytope", "kostant",          "sharp-convexity",   "abelian-from-nonabelian",
          "coisotropic",     "unique-closed-orbit"};
}

RunReport run_suite(const Scenario& s, const std::string& suite, std::uint64_t seed, const SuiteOptions& o) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + suite + "'");
  if (!s.has_suite(suite))
    throw Error(ErrorCode::UnknownSuite, "suite '" + suite + "' is not available for scenario '" + s.name + "'");

  const auto start = Clock::now();
  RunReport rep(s.name, suite, seed);
  if (suite == "coisotropic") rep = coisotropic_suite(s, seed, o);
  else if (suite == "unique-closed-orbit") rep = unique_closed_orbit_suite(s, seed, o);
  else if (suite == "abelian-from-nonabelian") rep = abelian_from_nonabelian_suite(s, seed, o);
  else if (suite == "moment-identity") moment_identity(rep, seed, o);
  else if (suite == "gradient-identity") gradient_identity(s, rep, seed, o);
  else if (suite == "hessian") hessian_suite(s, rep, seed);
  else if (suite == "flow-convergence") flow_convergence(s, rep, seed, o);
  else if (suite == "group-lift") group_lift_suite(s, rep, seed, o);
  else if (suite == "ness") ness_suite(s, rep, seed, o);
  else if (suite == "kempf-ness") kempf_ness_suite(s, rep, seed, o);
  else if (suite == "intertwining") intertwining_suite(s, rep, seed, o);
  else if (suite == "stratification") stratification_suite(s, rep, seed, o);
  else if (suite == "retraction") retraction_suite(s, rep, seed, o);
  else if (suite == "two-orbit-morse") two_orbit_suite(s, rep, seed, o);
  else if (suite == "census") census_suite(s, rep, seed, o);
  else if (suite == "abelian-polytope") abelian_polytope_suite(s, rep, seed, o);
  else if (suite == "kostant") kostant_suite(rep, seed, o);
  else if (suite == "sharp-convexity") sharp_convexity_suite(rep, seed, o);
  rep.set_parameter("scale", o.scale);
  rep.set_parameter("n", s.n());
  rep.set_timing("total_seconds", seconds_since(start));
  return rep;
}

}  // namespace gradmap
