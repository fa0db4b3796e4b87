#pragma once

#include <cmath>

#include "gradmap/core.hpp"
#include "gradmap/projective.hpp"

namespace testing {

using namespace gradmap;

inline CMatrix real_diag(std::initializer_list<double> d) {
  RVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.cast<cplx>().asDiagonal();
}

inline ProjectivePoint point(std::initializer_list<cplx> c) {
  CVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (cplx x : c) v(i++) = x;
  return ProjectivePoint(v);
}

inline ProjectivePoint basis_point(int n, int j) {
  CVector v = CVector::Zero(n);
  v(j) = 1.0;
  return ProjectivePoint(v);
}

/// Random horizontal tangent vector at x.
inline CVector random_tangent(const ProjectivePoint& x, Rng& rng) {
  return TangentVector::horizontal(x, rng.complex_gaussian(x.dim())).vec();
}

/// Curve t -> [v + t w] evaluated through a scalar function, central difference.
template <class F>
double central_difference(const ProjectivePoint& x, const CVector& w, F&& fn, double h = 1e-5) {
  const double plus = fn(ProjectivePoint(x.rep() + h * w));
  const double minus = fn(ProjectivePoint(x.rep() - h * w));
  return (plus - minus) / (2.0 * h);
}

}  // namespace testing
