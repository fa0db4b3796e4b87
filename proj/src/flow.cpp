#include "gradmap/flow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "gradmap/ode.hpp"
#include "gradmap/parallel.hpp"

namespace gradmap {

namespace {

OdeOptions ode_options(const FlowOptions& opts) {
  OdeOptions o;
  o.rtol = opts.rtol;
  o.atol = opts.atol;
  o.max_step = opts.max_step;
  return o;
}

void renormalize(RVector& y) {
  const double n = y.norm();
  if (n > 0) y /= n;
}

OdeRhs make_rhs(const CompatibleGroup& group, const FlowOptions& opts) {
  const double sign = opts.direction >= 0 ? 1.0 : -1.0;
  return [&group, &opts, sign](double, const RVector& y, RVector& dy) {
    CVector v = unrealify(y);
    v /= v.norm();
    dy = sign * realify(flow_field(group, v, opts.projector));
  };
}

double max_abs_diff(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return (a - b).cwiseAbs().maxCoeff();
}

/// Slope of the least-squares line through (x_i, y_i).
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

ProjectivePoint sample_uniform(int n, Rng& rng) { return ProjectivePoint(rng.complex_gaussian(n)); }

CVector flow_field(const CompatibleGroup& group, const CVector& v, const TangentProjector& projector) {
  const ProjectivePoint x(v);
  CVector w = -fundamental_field(gradient_map(group, x), x).vec();
  if (projector) w = projector(x.rep(), w);
  return w;
}

Trajectory integrate_flow(const CompatibleGroup& group, const ProjectivePoint& x0, const FlowOptions& opts) {
  Trajectory traj;
  traj.min_decrease = std::numeric_limits<double>::infinity();
  const double sign = opts.direction >= 0 ? 1.0 : -1.0;
  int below = 0;
  bool converged = false;

  auto observe = [&](double t, const RVector& y, const RVector& dy) {
    const CVector v = unrealify(y);
    const ProjectivePoint x(v);
    const double f = norm_square(group, x);
    const double g = dy.norm();
    if (!traj.f_values.empty()) {
      const double dec = sign * (traj.f_values.back() - f);
      traj.min_decrease = std::min(traj.min_decrease, dec);
      if (dec < -opts.lyapunov_slack)
        throw Error(ErrorCode::LyapunovViolation, "f moved against the flow by " + std::to_string(-dec));
    }
    traj.times.push_back(t);
    traj.states.push_back(x.rep());
    traj.f_values.push_back(f);
    traj.grad_norms.push_back(g);
    below = g < opts.eps_grad ? below + 1 : 0;
    if (below >= opts.sustain_steps) {
      converged = true;
      return false;
    }
    return true;
  };

  integrate_adaptive(make_rhs(group, opts), realify(x0.rep()), 0.0, opts.t_max, ode_options(opts), renormalize,
                     observe);
  if (traj.f_values.size() < 2) traj.min_decrease = 0.0;
  if (converged) {
    traj.limit = traj.terminal();
    traj.limit_beta = gradient_map(group, *traj.limit);
  }
  return traj;
}

ProjectivePoint flow_to_time(const CompatibleGroup& group, const ProjectivePoint& x0, double t,
                             const FlowOptions& opts) {
  if (t <= 0) return x0;
  const OdeResult res =
      integrate_adaptive(make_rhs(group, opts), realify(x0.rep()), 0.0, t, ode_options(opts), renormalize);
  return ProjectivePoint(unrealify(res.y));
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << std::setprecision(17) << "t,f,grad_norm";
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  for (Eigen::Index j = 0; j < n; ++j) out << ",re" << j << ",im" << j;
  out << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << traj.times[k] << ',' << traj.f_values[k] << ',' << traj.grad_norms[k];
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << traj.states[k][j].real() << ',' << traj.states[k][j].imag();
    out << '\n';
  }
}

GroupLift group_lift(const CompatibleGroup& group, const ProjectivePoint& x0, const Trajectory& traj,
                     double drift_tol, const FlowOptions& opts) {
  const Eigen::Index n = group.n();
  const double sign = opts.direction >= 0 ? 1.0 : -1.0;
  const Eigen::Index nv = 2 * n;

  // state = (v, g), both realified
  OdeRhs rhs = [&](double, const RVector& y, RVector& dy) {
    CVector v = unrealify(RVector(y.head(nv)));
    v /= v.norm();
    const CMatrix g = unrealify(RVector(y.tail(y.size() - nv)), n, n);
    const ProjectivePoint x(v);
    const CMatrix beta = gradient_map(group, x);
    dy.resize(y.size());
    dy.head(nv) = sign * realify(CVector(-fundamental_field(beta, x).vec()));
    dy.tail(y.size() - nv) = sign * realify(CMatrix(g * beta));
  };
  OdeProjector project = [nv](RVector& y) {
    const double nrm = y.head(nv).norm();
    if (nrm > 0) y.head(nv) /= nrm;
  };

  RVector y(nv + 2 * n * n);
  y.head(nv) = realify(x0.rep());
  y.tail(2 * n * n) = realify(CMatrix(CMatrix::Identity(n, n)));

  GroupLift lift;
  OdeOptions o = ode_options(opts);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (k > 0) {
      const double dt = traj.times[k] - traj.times[k - 1];
      o.initial_step = dt;
      y = integrate_adaptive(rhs, y, traj.times[k - 1], traj.times[k], o, project).y;
    }
    const CMatrix g = unrealify(RVector(y.tail(2 * n * n)), n, n);
    const ProjectivePoint shadow(g.partialPivLu().solve(x0.rep()));
    lift.max_drift = std::max(lift.max_drift, fs_distance(shadow, ProjectivePoint(traj.states[k])));
    lift.max_det_error = std::max(lift.max_det_error, std::abs(g.determinant() - 1.0));
    lift.elements.push_back(g);
  }
  if (lift.max_drift > drift_tol)
    throw Error(ErrorCode::DriftExceeded, "group lift drift " + std::to_string(lift.max_drift));
  return lift;
}

LojasiewiczReport lojasiewicz_diagnostics(const Trajectory& traj) {
  if (traj.times.empty()) throw Error(ErrorCode::InsufficientTail, "empty trajectory");
  const ProjectivePoint xinf = traj.limit ? *traj.limit : traj.terminal();
  const std::size_t m = traj.times.size();

  LojasiewiczReport rep;
  rep.min_decrease = traj.min_decrease;

  // T: the gradient stays below 1e-3 from here on
  std::size_t first = 0;
  for (std::size_t k = m; k-- > 0;)
    if (traj.grad_norms[k] >= 1e-3) {
      first = std::min(k + 1, m - 1);
      break;
    }
  rep.T = traj.times[first];
  const double t_end = traj.times.back();
  const double t_start = rep.T + (t_end - rep.T) / 100.0;

  std::vector<double> dist(m);
  for (std::size_t k = 0; k < m; ++k) dist[k] = fs_distance(ProjectivePoint(traj.states[k]), xinf);

  std::vector<std::size_t> tail;
  for (std::size_t k = first; k < m; ++k)
    if (traj.times[k] > rep.T && traj.times[k] >= t_start && dist[k] >= 1e-12) tail.push_back(k);
  rep.tail_samples = static_cast<int>(tail.size());
  if (tail.size() < 50)
    throw Error(ErrorCode::InsufficientTail, std::to_string(tail.size()) + " tail samples");

  // fit on the leading part of the tail, check the bound on all of it
  const std::size_t fit_count = (tail.size() * 3) / 5;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < fit_count; ++i) {
    lx.push_back(std::log(traj.times[tail[i]] - rep.T));
    ly.push_back(std::log(dist[tail[i]]));
  }
  rep.psi_fit = std::max(-ls_slope(lx, ly), 1e-3);
  double c = 0.0;
  for (std::size_t i = 0; i < fit_count; ++i)
    c = std::max(c, dist[tail[i]] * std::pow(traj.times[tail[i]] - rep.T, rep.psi_fit));
  rep.C_fit = c;
  rep.bound_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t k : tail)
    rep.bound_residual =
        std::max(rep.bound_residual, dist[k] - rep.C_fit / std::pow(traj.times[k] - rep.T, rep.psi_fit));

  double remaining = 0.0;
  rep.arc_residual = dist[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    remaining += fs_distance(ProjectivePoint(traj.states[k]), ProjectivePoint(traj.states[k + 1]));
    rep.arc_residual = std::max(rep.arc_residual, dist[k] - remaining);
  }

  const double finf = traj.f_values.back();
  const double f_floor = 1e-13 * std::max(1.0, std::abs(finf));
  std::vector<double> gx, gy;
  for (std::size_t k = first; k < m; ++k) {
    const double df = std::abs(traj.f_values[k] - finf);
    if (df > f_floor && traj.grad_norms[k] > 1e-12) {
      gx.push_back(std::log(df));
      gy.push_back(std::log(traj.grad_norms[k]));
    }
  }
  if (gx.size() >= 10) {
    rep.gamma_fit = ls_slope(gx, gy);
    rep.gamma_ok = *rep.gamma_fit >= 0.45 && *rep.gamma_fit < 1.0;
  }
  return rep;
}

std::vector<CriticalComponent> find_critical_components(const CompatibleGroup& group,
                                                        const ComponentSearchOptions& opts) {
  const std::size_t seeds = static_cast<std::size_t>(opts.seed_count);
  const std::size_t jobs = opts.ascent ? 2 * seeds : seeds;
  std::vector<std::optional<ProjectivePoint>> limits(jobs);

  parallel_for(jobs, [&](std::size_t j) {
    const std::size_t i = j % seeds;
    Rng rng(derive_seed(opts.rng_seed, i));
    const ProjectivePoint x0 = opts.sampler ? opts.sampler(rng) : sample_uniform(group.n(), rng);
    FlowOptions fo = opts.flow;
    fo.direction = j < seeds ? 1 : -1;
    const Trajectory traj = integrate_flow(group, x0, fo);
    if (traj.limit) limits[j] = *traj.limit;
  });

  std::vector<CriticalComponent> comps;
  for (const auto& lim : limits) {
    if (!lim) continue;
    const CMatrix beta = gradient_map(group, *lim);
    const double f = 0.5 * inner(beta, beta);
    const RVector spec = sorted_spectrum(beta);
    bool placed = false;
    for (auto& c : comps) {
      if (std::abs(c.f_value - f) < opts.f_tol && max_abs_diff(c.spectrum, spec) < opts.spectrum_tol) {
        c.members.push_back(*lim);
        placed = true;
        break;
      }
    }
    if (!placed) {
      CriticalComponent c{*lim, f, spec, {}, {}, {*lim}};
      comps.push_back(std::move(c));
    }
  }
  for (auto& c : comps) {
    const TangentOperator h = hessian_f(group, c.representative);
    c.hessian_eigenvalues = h.eigenvalues();
    c.hessian_signature = signature(c.hessian_eigenvalues);
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const CriticalComponent& a, const CriticalComponent& b) { return a.f_value < b.f_value; });
  return comps;
}

bool same_label(const StratumLabel& a, const StratumLabel& b, double tol) {
  return max_abs_diff(a.beta_plus, b.beta_plus) < tol && std::abs(a.f_value - b.f_value) < tol;
}

StratumLabel classify_stratum(const AbelianSubalgebra& a, const ProjectivePoint& x, const FlowOptions& opts) {
  const Trajectory traj = integrate_flow(a.parent(), x, opts);
  if (!traj.limit) throw Error(ErrorCode::NoCriticalPointFound, "flow did not converge by t_max");
  StratumLabel label;
  label.beta_plus = chamber_label(a, traj.limit_beta);
  label.f_value = 0.5 * inner(traj.limit_beta, traj.limit_beta);
  return label;
}

OpennessReport min_stratum_openness_check(const AbelianSubalgebra& a, const CriticalComponent& component,
                                          int n_probe, double radius, std::uint64_t rng_seed,
                                          const FlowOptions& opts) {
  const StratumLabel reference = classify_stratum(a, component.representative, opts);
  std::vector<int> same(static_cast<std::size_t>(n_probe), 0);
  parallel_for(same.size(), [&](std::size_t i) {
    Rng rng(derive_seed(rng_seed, i));
    const ProjectivePoint& base = component.members[i % component.members.size()];
    TangentVector w = TangentVector::horizontal(base, rng.complex_gaussian(base.dim()));
    w = TangentVector(base, w.vec() / w.norm());
    const ProjectivePoint probe = geodesic(w, radius);
    same[i] = same_label(classify_stratum(a, probe, opts), reference) ? 1 : 0;
  });
  OpennessReport rep;
  rep.probes = n_probe;
  for (int s : same) rep.same_label += s;
  return rep;
}

RetractionReport retraction_check(const CompatibleGroup& group, int n_samples, std::uint64_t rng_seed,
                                  const FlowOptions& opts, const PointSampler& sampler) {
  struct Row {
    double mu = 0, equi = 0, fixed = 0;
    bool ok = true;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n_samples));
  parallel_for(rows.size(), [&](std::size_t i) {
    Rng rng(derive_seed(rng_seed, i));
    const ProjectivePoint p = sampler ? sampler(rng) : sample_uniform(group.n(), rng);
    const CMatrix k = group.sample_k(rng);
    const Trajectory tp = integrate_flow(group, p, opts);
    const Trajectory tk = integrate_flow(group, act(k, p), opts);
    if (!tp.limit || !tk.limit) {
      rows[i].ok = false;
      return;
    }
    rows[i].mu = frob(tp.limit_beta);
    rows[i].equi = fs_distance(*tk.limit, act(k, *tp.limit));
    const Trajectory again = integrate_flow(group, *tp.limit, opts);
    rows[i].fixed = fs_distance(again.terminal(), *tp.limit);
  });
  RetractionReport rep;
  rep.samples = n_samples;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++rep.unconverged;
      continue;
    }
    rep.max_limit_mu = std::max(rep.max_limit_mu, r.mu);
    rep.max_equivariance_error = std::max(rep.max_equivariance_error, r.equi);
    rep.max_fixed_motion = std::max(rep.max_fixed_motion, r.fixed);
  }
  return rep;
}

KOrbitDistance k_orbit_distance(const CompatibleGroup& group, const ProjectivePoint& x, const ProjectivePoint& y,
                                int restarts, Rng& rng) {
  const CVector& v = x.rep();
  const CVector& u = y.rep();
  const auto& basis = group.k_basis();
  const Eigen::Index nk = static_cast<Eigen::Index>(basis.size());

  auto residual = [&](const CMatrix& k) {
    const CVector kv = k * v;
    return CVector(kv - u * u.dot(kv));
  };

  KOrbitDistance best{fs_distance(x, y), CMatrix::Identity(x.dim(), x.dim())};
  if (nk == 0) return best;

  for (int r = 0; r < std::max(1, restarts) && best.distance > 1e-13; ++r) {
    CMatrix k = r == 0 ? CMatrix(CMatrix::Identity(x.dim(), x.dim())) : group.sample_k(rng);
    CVector res = residual(k);
    double rn = res.norm();
    for (int it = 0; it < 100 && rn > 1e-15; ++it) {
      RMatrix jac(2 * v.size(), nk);
      const CVector kv = k * v;
      for (Eigen::Index i = 0; i < nk; ++i) {
        const CVector d = basis[static_cast<std::size_t>(i)] * kv;
        jac.col(i) = realify(CVector(d - u * u.dot(d)));
      }
      const RVector step = jac.completeOrthogonalDecomposition().solve(-realify(res));
      bool improved = false;
      for (double s = 1.0; s > 1e-6; s *= 0.5) {
        const CMatrix trial = group.exp_k(s * step) * k;
        const CVector tr = residual(trial);
        if (tr.norm() < rn) {
          k = trial;
          res = tr;
          improved = rn - tr.norm() > 1e-16;
          rn = tr.norm();
          break;
        }
      }
      if (!improved) break;
    }
    const double d = fs_distance(act(k, x), y);
    if (d < best.distance) best = {d, k};
  }
  return best;
}

const char* to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::Same: return "same";
    case OrbitVerdict::Different: return "different";
    case OrbitVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

NessReport ness_uniqueness_experiment(const CompatibleGroup& group, const ProjectivePoint& x0, int n_group_samples,
                                      std::uint64_t rng_seed, const FlowOptions& opts) {
  std::vector<std::optional<ProjectivePoint>> limits(static_cast<std::size_t>(n_group_samples));
  parallel_for(limits.size(), [&](std::size_t i) {
    Rng rng(derive_seed(rng_seed, i));
    const CMatrix g = group.sample_g(rng, 2.0);
    const Trajectory traj = integrate_flow(group, act(g, x0), opts);
    if (traj.limit) limits[i] = *traj.limit;
  });

  NessReport rep;
  rep.samples = n_group_samples;
  std::vector<ProjectivePoint> found;
  std::vector<RVector> spectra;
  for (const auto& l : limits) {
    if (!l) {
      ++rep.unconverged;
      continue;
    }
    found.push_back(*l);
    const CMatrix beta = gradient_map(group, *l);
    rep.limit_f.push_back(0.5 * inner(beta, beta));
    spectra.push_back(sorted_spectrum(beta));
  }
  if (found.empty()) return rep;
  const auto [fmin, fmax] = std::minmax_element(rep.limit_f.begin(), rep.limit_f.end());
  rep.f_spread = *fmax - *fmin;
  for (std::size_t i = 0; i < spectra.size(); ++i)
    for (std::size_t j = i + 1; j < spectra.size(); ++j)
      rep.spectrum_spread = std::max(rep.spectrum_spread, max_abs_diff(spectra[i], spectra[j]));

  std::vector<double> dist(found.size(), 0.0);
  parallel_for(found.size(), [&](std::size_t i) {
    if (i == 0) return;
    Rng rng(derive_seed(rng_seed ^ 0x5eedULL, i));
    dist[i] = k_orbit_distance(group, found[i], found[0], 20, rng).distance;
  });
  rep.same = 1;
  for (std::size_t i = 1; i < found.size(); ++i) {
    rep.max_orbit_distance = std::max(rep.max_orbit_distance, dist[i]);
    const bool invariants_differ =
        std::abs(rep.limit_f[i] - rep.limit_f[0]) > 1e-7 || max_abs_diff(spectra[i], spectra[0]) > 1e-6;
    if (dist[i] < 1e-5)
      ++rep.same;
    else if (invariants_differ)
      ++rep.different;
    else
      ++rep.inconclusive;
  }
  return rep;
}

CensusReport unstable_manifold_census(const CompatibleGroup& group, const CMatrix& beta, int seed_count,
                                      std::uint64_t rng_seed) {
  const int n = group.n();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (beta + beta.adjoint()));
  const RVector& ev = es.eigenvalues();  // ascending

  // eigenspaces, descending eigenvalue
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (!groups.empty() && std::abs(ev[groups.back().front()] - ev[i]) < 1e-9)
      groups.back().push_back(i);
    else
      groups.push_back({i});
  }

  CensusReport rep;
  rep.seeds = seed_count;
  for (const auto& g : groups) {
    CensusComponent c{ev[g.front()], 2 * (static_cast<int>(g.size()) - 1), 0,
                      ProjectivePoint(es.eigenvectors().col(g.front())), 0};
    const TangentOperator h = hessian_mu_beta(group, beta, c.representative);
    c.index = signature(h.eigenvalues()).negative;
    rep.components.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < rep.components.size(); ++i)
    if (rep.components[i].index + rep.components[i].dim == 2 * (n - 1)) rep.open_component = static_cast<int>(i);

  for (int s = 0; s < seed_count; ++s) {
    Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(s)));
    const CVector v = sample_uniform(n, rng).rep();
    bool assigned = false;
    for (std::size_t c = 0; c < groups.size() && !assigned; ++c) {
      double weight = 0.0;
      for (Eigen::Index idx : groups[c]) weight += std::norm(es.eigenvectors().col(idx).dot(v));
      if (std::sqrt(weight) > 1e-12) {
        ++rep.components[c].basin_count;
        assigned = true;
      }
    }
    if (!assigned) ++rep.unassigned;
  }
  return rep;
}

}  // namespace gradmap
