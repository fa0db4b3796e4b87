#include "gradmap/convex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace gradmap {

Polytope::Polytope(std::vector<RVector> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::InvalidArgument, "polytope needs at least one vertex");
  dim_ = static_cast<int>(vertices_.front().size());
  for (const auto& v : vertices_)
    if (v.size() != dim_) throw Error(ErrorCode::InvalidArgument, "vertex dimension mismatch");
}

RMatrix Polytope::matrix() const {
  RMatrix m(dim_, static_cast<Eigen::Index>(vertices_.size()));
  for (std::size_t j = 0; j < vertices_.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vertices_[j];
  return m;
}

NearestPoint nearest_point(const RMatrix& points, const RVector& target) {
  const Eigen::Index m = points.cols();
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty point set");
  if (points.rows() != target.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const RMatrix p = points.colwise() - target;
  const RVector sq = p.colwise().squaredNorm();
  const double scale = std::max(sq.maxCoeff(), 1e-300);

  Eigen::Index j0 = 0;
  sq.minCoeff(&j0);
  std::vector<Eigen::Index> active{j0};
  std::vector<double> lam{1.0};
  RVector x = p.col(j0);

  auto combine = [&] {
    RVector out = RVector::Zero(p.rows());
    for (std::size_t i = 0; i < active.size(); ++i) out += lam[i] * p.col(active[i]);
    return out;
  };

  const int max_major = static_cast<int>(10 * (m + p.rows()) + 100);
  for (int major = 0; major < max_major; ++major) {
    Eigen::Index j = 0;
    const RVector dots = p.transpose() * x;
    dots.minCoeff(&j);
    if (x.squaredNorm() - dots[j] <= 1e-14 * scale) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lam.push_back(0.0);

    for (int minor = 0; minor < 200; ++minor) {
      const Eigen::Index k = static_cast<Eigen::Index>(active.size());
      RMatrix b(p.rows(), k);
      for (Eigen::Index i = 0; i < k; ++i) b.col(i) = p.col(active[static_cast<std::size_t>(i)]);
      RMatrix kkt = RMatrix::Zero(k + 1, k + 1);
      kkt.topLeftCorner(k, k) = b.transpose() * b;
      kkt.block(0, k, k, 1).setOnes();
      kkt.block(k, 0, 1, k).setOnes();
      RVector rhs = RVector::Zero(k + 1);
      rhs[k] = 1.0;
      const RVector alpha = kkt.completeOrthogonalDecomposition().solve(rhs).head(k);
      if (alpha.minCoeff() > 1e-14) {
        for (Eigen::Index i = 0; i < k; ++i) lam[static_cast<std::size_t>(i)] = alpha[i];
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        const double li = lam[static_cast<std::size_t>(i)];
        if (alpha[i] <= 1e-14 && li - alpha[i] > 0) theta = std::min(theta, li / (li - alpha[i]));
      }
      for (Eigen::Index i = 0; i < k; ++i) {
        double& li = lam[static_cast<std::size_t>(i)];
        li += theta * (alpha[i] - li);
      }
      // drop the points whose weight reached zero (at least one)
      std::size_t argmin = 0;
      for (std::size_t i = 1; i < lam.size(); ++i)
        if (lam[i] < lam[argmin]) argmin = i;
      std::vector<Eigen::Index> keep_idx;
      std::vector<double> keep_lam;
      for (std::size_t i = 0; i < lam.size(); ++i)
        if (lam[i] > 1e-14 && i != argmin) {
          keep_idx.push_back(active[i]);
          keep_lam.push_back(lam[i]);
        }
      if (keep_idx.empty()) {
        keep_idx.push_back(active[argmin]);
        keep_lam.push_back(1.0);
      }
      const double total = std::accumulate(keep_lam.begin(), keep_lam.end(), 0.0);
      for (double& l : keep_lam) l /= total;
      active = std::move(keep_idx);
      lam = std::move(keep_lam);
    }
    x = combine();
  }

  NearestPoint np;
  np.weights = RVector::Zero(m);
  for (std::size_t i = 0; i < active.size(); ++i) np.weights[active[i]] = lam[i];
  np.point = target + x;
  np.distance = x.norm();
  return np;
}

NearestPoint nearest_point(const Polytope& poly, const RVector& target) {
  return nearest_point(poly.matrix(), target);
}

bool contains(const Polytope& poly, const RVector& x, double tol) { return nearest_point(poly, x).distance <= tol; }

double support_function(const Polytope& poly, const RVector& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : poly.vertices()) best = std::max(best, v.dot(u));
  return best;
}

Polytope exposed_face(const Polytope& poly, const RVector& u, double tol) {
  if (u.norm() == 0.0) throw Error(ErrorCode::ZeroDirection, "exposed face needs a nonzero direction");
  const double h = support_function(poly, u);
  std::vector<RVector> face;
  for (const auto& v : poly.vertices())
    if (v.dot(u) >= h - tol * std::max(1.0, std::abs(h))) face.push_back(v);
  return Polytope(std::move(face));
}

HullResult convex_hull(const std::vector<RVector>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "convex_hull of no points");
  const Eigen::Index d = points.front().size();
  const std::size_t count = points.size();
  RMatrix diff(d, static_cast<Eigen::Index>(count));
  RVector mean = RVector::Zero(d);
  for (const auto& p : points) {
    if (p.size() != d) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    mean += p;
  }
  mean /= static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) diff.col(static_cast<Eigen::Index>(i)) = points[i] - mean;

  HullResult res;
  res.origin = mean;
  Eigen::JacobiSVD<RMatrix> svd(diff, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > 1e-9 * std::max(s[0], 1e-300) && s[rank] > 1e-300) ++rank;
  res.affine_dim = static_cast<int>(rank);
  res.affine_basis = svd.matrixU().leftCols(rank);
  res.degenerate = rank < d;

  if (rank == 0) {
    res.vertex_indices = {0};
    res.polytope = Polytope({points[0]});
    return res;
  }

  const RMatrix q = res.affine_basis.transpose() * diff;  // rank x count
  const double scale = std::max(1.0, q.colwise().norm().maxCoeff());

  auto lex_greater = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < rank; ++r) {
      if (q(r, a) > q(r, b)) return true;
      if (q(r, a) < q(r, b)) return false;
    }
    return false;
  };
  auto extreme_along = [&](const RVector& u) {
    const RVector vals = q.transpose() * u;
    const double top = vals.maxCoeff();
    const double band = 1e-12 * scale * u.norm();
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
      if (vals[i] >= top - band && (best < 0 || lex_greater(i, best))) best = i;
    return best;
  };

  std::vector<Eigen::Index> ext;
  {
    Eigen::Index first = 0;
    for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(count); ++i)
      if (lex_greater(i, first)) first = i;
    ext.push_back(first);
  }
  auto ext_matrix = [&] {
    RMatrix m(rank, static_cast<Eigen::Index>(ext.size()));
    for (std::size_t j = 0; j < ext.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = q.col(ext[j]);
    return m;
  };

  RMatrix em = ext_matrix();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(count); ++i) {
    for (int guard = 0; guard < static_cast<int>(count) + 1; ++guard) {
      const RVector qi = q.col(i);
      const NearestPoint np = nearest_point(em, qi);
      if (np.distance <= tol * scale) break;
      const RVector u = qi - np.point;
      Eigen::Index j = extreme_along(u);
      if (std::find(ext.begin(), ext.end(), j) != ext.end()) j = i;
      ext.push_back(j);
      em = ext_matrix();
      if (j == i) break;
    }
  }
  std::sort(ext.begin(), ext.end());
  ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
  std::vector<RVector> verts;
  for (Eigen::Index j : ext) {
    res.vertex_indices.push_back(static_cast<std::size_t>(j));
    verts.push_back(points[static_cast<std::size_t>(j)]);
  }
  res.polytope = Polytope(std::move(verts));
  return res;
}

PolytopeComparison polytope_equal_by_support(const Polytope& c1, const Polytope& c2, double slack) {
  if (c1.dim() != c2.dim()) throw Error(ErrorCode::InvalidArgument, "polytopes live in different dimensions");
  PolytopeComparison cmp;
  std::vector<RVector> directions;
  auto sweep = [&](const Polytope& from, const Polytope& into, double sign) {
    for (const auto& v : from.vertices()) {
      const NearestPoint np = nearest_point(into, v);
      cmp.hausdorff = std::max(cmp.hausdorff, np.distance);
      if (np.distance > 0) directions.push_back((v - np.point) / np.distance);
      if (np.distance > slack && !cmp.witness) {
        const RVector u = (v - np.point) / np.distance;
        cmp.witness = u;
        cmp.witness_gap = sign * (support_function(from, u) - support_function(into, u));
      }
    }
  };
  sweep(c2, c1, 1.0);   // vertices of C2 outside C1: h_2(u) > h_1(u)
  sweep(c1, c2, -1.0);  // vertices of C1 outside C2: h_2(u) < h_1(u)
  for (const auto* p : {&c1, &c2})
    for (const auto& v : p->vertices())
      if (v.norm() > 0) directions.push_back(v / v.norm());
  for (const auto& u : directions)
    cmp.max_support_gap = std::max(cmp.max_support_gap, std::abs(support_function(c1, u) - support_function(c2, u)));
  cmp.equal = cmp.hausdorff <= slack;
  return cmp;
}

double hausdorff_distance(const Polytope& a, const Polytope& b) {
  double h = 0.0;
  for (const auto& v : a.vertices()) h = std::max(h, nearest_point(b, v).distance);
  for (const auto& v : b.vertices()) h = std::max(h, nearest_point(a, v).distance);
  return h;
}

Polytope permutohedron(const RVector& lambda) {
  std::vector<double> c(lambda.data(), lambda.data() + lambda.size());
  std::sort(c.begin(), c.end());
  std::vector<RVector> pts;
  do {
    pts.push_back(Eigen::Map<const RVector>(c.data(), static_cast<Eigen::Index>(c.size())));
  } while (std::next_permutation(c.begin(), c.end()));
  return convex_hull(pts).polytope;
}

Polytope weyl_polytope(const AbelianSubalgebra& a, const RVector& lambda) {
  switch (a.weyl()) {
    case WeylType::Trivial: return Polytope({lambda});
    case WeylType::Permutation: return convex_hull(weyl_orbit(a, lambda)).polytope;
    case WeylType::Unsupported: break;
  }
  throw Error(ErrorCode::UnsupportedKind, "Weyl group not available for this abelian subalgebra");
}

namespace {

RVector sorted_desc(const RVector& x) {
  RVector s = x;
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

/// Top-k partial sums (k = 1..n) of a vector sorted in decreasing order.
RVector partial_sums(const RVector& sorted) {
  RVector out(sorted.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sorted.size(); ++i) out[i] = (acc += sorted[i]);
  return out;
}

}  // namespace

double majorization_margin(const RVector& x, const RVector& lambda) {
  if (x.size() != lambda.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const RVector sx = partial_sums(sorted_desc(x));
  const RVector sl = partial_sums(sorted_desc(lambda));
  const Eigen::Index n = x.size();
  double margin = -std::abs(sx[n - 1] - sl[n - 1]);
  for (Eigen::Index k = 0; k + 1 < n; ++k) margin = std::min(margin, sl[k] - sx[k]);
  return margin;
}

bool majorization_membership(const RVector& x, const RVector& lambda, double tol) {
  if (x.size() != lambda.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (std::abs(x.sum() - lambda.sum()) > 1e-9 * std::max(1.0, lambda.cwiseAbs().sum()))
    throw Error(ErrorCode::SumMismatch, "coordinate sums differ");
  return majorization_margin(x, lambda) >= -tol;
}

SharpBody::SharpBody(Polytope s, double resolution) : s_(std::move(s)), resolution_(resolution) {
  if (s_.empty()) throw Error(ErrorCode::InvalidArgument, "empty generator set");
  if (!(resolution > 0)) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  for (const auto& v : s_.vertices())
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i)
      if (v[i] < v[i + 1] - 1e-12) throw Error(ErrorCode::ChamberViolation, "generator outside the positive chamber");

  const int m = static_cast<int>(s_.size());
  int steps = std::max(1, static_cast<int>(std::ceil(1.0 / resolution)));
  auto grid_size = [m](int nsteps) {
    // C(nsteps + m - 1, m - 1)
    double c = 1.0;
    for (int i = 1; i < m; ++i) c = c * (nsteps + i) / i;
    return c;
  };
  while (steps > 1 && grid_size(steps) > 2e5) steps /= 2;

  std::vector<int> comp(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == m - 1) {
      comp[static_cast<std::size_t>(idx)] = left;
      RVector w(m);
      for (int i = 0; i < m; ++i) w[i] = static_cast<double>(comp[static_cast<std::size_t>(i)]) / steps;
      RVector lam = RVector::Zero(s_.dim());
      for (int i = 0; i < m; ++i) lam += w[i] * s_.vertices()[static_cast<std::size_t>(i)];
      grid_weights_.push_back(w);
      grid_.push_back(lam);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      comp[static_cast<std::size_t>(idx)] = c;
      rec(idx + 1, left - c);
    }
  };
  rec(0, steps);
}

double SharpBody::margin(const RVector& x, RVector* best_lambda) const {
  double best = -std::numeric_limits<double>::infinity();
  RVector arg;
  for (const auto& lam : grid_) {
    const double mg = majorization_margin(x, lam);
    if (mg > best) {
      best = mg;
      arg = lam;
    }
  }

  // Exact refinement: on the chamber, top-k sums are linear in the barycentric
  // weights, so the best margin is a small LP. Solve it by vertex enumeration.
  const auto& verts = s_.vertices();
  const int m = static_cast<int>(verts.size());
  const Eigen::Index n = x.size();
  const RVector px = partial_sums(sorted_desc(x));
  // rows: a^T (w, t) <= b
  std::vector<RVector> rows;
  std::vector<double> rhs;
  auto add_row = [&](const RVector& a, double b) {
    rows.push_back(a);
    rhs.push_back(b);
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    RVector a(m + 1);
    for (int i = 0; i < m; ++i) a[i] = -partial_sums(verts[static_cast<std::size_t>(i)])[k];
    a[m] = 1.0;
    if (k + 1 < n) {
      add_row(a, -px[k]);  // t <= S_k(lambda) - S_k(x)
    } else {
      add_row(a, -px[k]);  // t <= sum(lambda) - sum(x)
      RVector b = -a;
      b[m] = 1.0;
      add_row(b, px[k]);   // t <= sum(x) - sum(lambda)
    }
  }
  for (int i = 0; i < m; ++i) {
    RVector a = RVector::Zero(m + 1);
    a[i] = -1.0;
    add_row(a, 0.0);
  }
  const int r = static_cast<int>(rows.size());
  double combos = 1.0;
  for (int i = 1; i <= m; ++i) combos = combos * (r - m + i) / i;
  if (combos <= 2e5) {
    std::vector<int> pick(static_cast<std::size_t>(m));
    std::iota(pick.begin(), pick.end(), 0);
    RMatrix sys(m + 1, m + 1);
    RVector sys_rhs(m + 1);
    for (;;) {
      for (int i = 0; i < m; ++i) {
        sys.row(i) = rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].transpose();
        sys_rhs[i] = rhs[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
      }
      sys.row(m).setZero();
      sys.row(m).head(m).setOnes();
      sys_rhs[m] = 1.0;
      Eigen::FullPivLU<RMatrix> lu(sys);
      if (lu.isInvertible()) {
        const RVector sol = lu.solve(sys_rhs);
        bool feasible = true;
        for (int q = 0; q < r && feasible; ++q)
          feasible = rows[static_cast<std::size_t>(q)].dot(sol) <= rhs[static_cast<std::size_t>(q)] + 1e-12;
        if (feasible && sol[m] > best) {
          RVector lam = RVector::Zero(s_.dim());
          for (int i = 0; i < m; ++i) lam += std::max(0.0, sol[i]) * verts[static_cast<std::size_t>(i)];
          const double mg = majorization_margin(x, lam);
          if (mg > best) {
            best = mg;
            arg = lam;
          }
        }
      }
      // next combination
      int i = m - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == r - m + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (best_lambda) *best_lambda = arg;
  return best;
}

Polytope SharpBody::sampled_body() const {
  std::vector<RVector> pts;
  for (const auto& v : s_.vertices()) {
    const Polytope p = permutohedron(v);
    pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
  }
  return convex_hull(pts).polytope;
}

RVector SharpBody::sample_member(Rng& rng) const {
  auto dirichlet = [&rng](std::size_t k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = -std::log(1.0 - rng.uniform()));
    for (auto& x : w) x /= total;
    return w;
  };
  const auto ws = dirichlet(s_.size());
  RVector lam = RVector::Zero(s_.dim());
  for (std::size_t i = 0; i < ws.size(); ++i) lam += ws[i] * s_.vertices()[i];
  std::vector<double> c(lam.data(), lam.data() + lam.size());
  std::sort(c.begin(), c.end());
  std::vector<RVector> perms;
  do {
    perms.push_back(Eigen::Map<const RVector>(c.data(), static_cast<Eigen::Index>(c.size())));
  } while (std::next_permutation(c.begin(), c.end()));
  const auto wp = dirichlet(perms.size());
  RVector out = RVector::Zero(s_.dim());
  for (std::size_t i = 0; i < perms.size(); ++i) out += wp[i] * perms[i];
  return out;
}

ConvexityReport sharp_convexity_report(const SharpBody& body, int pairs, std::uint64_t rng_seed, double slack) {
  ConvexityReport rep;
  rep.pairs = pairs;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int p = 0; p < pairs; ++p) {
    Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(p)));
    const RVector a = body.sample_member(rng);
    const RVector b = body.sample_member(rng);
    const double mg = body.margin(0.5 * (a + b));
    rep.worst_margin = std::min(rep.worst_margin, mg);
    if (mg < -slack) ++rep.violations;
  }
  return rep;
}

KostantReport kostant_projection_probe(const CompatibleGroup& group, const CMatrix& x, int n_samples,
                                       std::uint64_t rng_seed) {
  const CMatrix h = 0.5 * (x + x.adjoint());
  const RVector lambda = sorted_spectrum(h);
  const Eigen::Index n = h.rows();
  auto diag_of = [&](const CMatrix& k) { return RVector((k * h * k.adjoint()).diagonal().real()); };

  KostantReport rep;
  rep.samples = n_samples;
  rep.worst_margin = std::numeric_limits<double>::infinity();

  std::vector<double> c(lambda.data(), lambda.data() + n);
  std::sort(c.begin(), c.end());
  do {
    const RVector v = Eigen::Map<const RVector>(c.data(), n);
    bool dup = false;
    for (const auto& w : rep.vertices) dup = dup || (w - v).norm() < 1e-12;
    if (!dup) rep.vertices.push_back(v);
  } while (std::next_permutation(c.begin(), c.end()));

  std::vector<double> best_dist(rep.vertices.size(), std::numeric_limits<double>::infinity());
  std::vector<CMatrix> best_k(rep.vertices.size(), CMatrix::Identity(n, n));
  Rng rng(rng_seed);
  for (int s = 0; s < n_samples; ++s) {
    const CMatrix k = group.sample_k(rng);
    const RVector d = diag_of(k);
    const double mg = majorization_margin(d, lambda);
    rep.worst_margin = std::min(rep.worst_margin, mg);
    if (!majorization_membership(d, lambda)) ++rep.majorization_failures;
    for (std::size_t v = 0; v < rep.vertices.size(); ++v) {
      const double dist = (d - rep.vertices[v]).norm();
      if (dist < best_dist[v]) {
        best_dist[v] = dist;
        best_k[v] = k;
      }
    }
  }

  // Levenberg-Marquardt over K towards each vertex
  const auto& basis = group.k_basis();
  const Eigen::Index nk = static_cast<Eigen::Index>(basis.size());
  for (std::size_t v = 0; v < rep.vertices.size(); ++v) {
    CMatrix k = best_k[v];
    RVector res = diag_of(k) - rep.vertices[v];
    double mu = 1e-3;
    for (int it = 0; it < 300 && res.norm() > 1e-12 && nk > 0; ++it) {
      const CMatrix y = k * h * k.adjoint();
      RMatrix jac(n, nk);
      for (Eigen::Index i = 0; i < nk; ++i)
        jac.col(i) = bracket(basis[static_cast<std::size_t>(i)], y).diagonal().real();
      const RMatrix jtj = jac.transpose() * jac;
      const RVector g = jac.transpose() * res;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        const RVector step = (jtj + mu * RMatrix::Identity(nk, nk)).ldlt().solve(-g);
        const CMatrix trial = group.exp_k(step) * k;
        const RVector tr = diag_of(trial) - rep.vertices[v];
        if (tr.norm() < res.norm()) {
          k = trial;
          res = tr;
          mu = std::max(mu / 3.0, 1e-12);
          improved = true;
          break;
        }
        mu *= 4.0;
      }
      if (!improved) break;
    }
    rep.vertex_distances.push_back(res.norm());
    rep.max_vertex_distance = std::max(rep.max_vertex_distance, res.norm());
  }
  return rep;
}

FixedPointPolytope fixed_point_polytope(const AbelianSubalgebra& a) {
  if (!a.is_diagonal()) throw Error(ErrorCode::UnsupportedKind, "fixed points need a diagonal abelian subalgebra");
  const int n = a.parent().n();
  std::vector<RVector> weights;
  for (int j = 0; j < n; ++j) {
    RVector w(a.dim());
    for (int k = 0; k < a.dim(); ++k) w[k] = a.basis()[static_cast<std::size_t>(k)](j, j).real();
    weights.push_back(w);
  }
  FixedPointPolytope out;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    if (used[static_cast<std::size_t>(j)]) continue;
    for (int l = j + 1; l < n; ++l)
      if ((weights[static_cast<std::size_t>(j)] - weights[static_cast<std::size_t>(l)]).norm() < 1e-12) {
        used[static_cast<std::size_t>(l)] = true;
        out.isolated = false;
      }
    CVector e = CVector::Zero(n);
    e[j] = 1.0;
    const ProjectivePoint z(e);
    out.fixed_points.push_back(z);
    out.images.push_back(gradient_map_abelian(a, z));
  }
  out.polytope = convex_hull(out.images).polytope;
  return out;
}

}  // namespace gradmap
