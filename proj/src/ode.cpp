#include "gradmap/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gradmap {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_adaptive(const OdeRhs& rhs, RVector y, double t, double t_end, const OdeOptions& opts,
                             const OdeProjector& project, const OdeObserver& observe) {
  const Eigen::Index n = y.size();
  RVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  OdeResult res;

  if (project) project(y);
  rhs(t, y, k1);
  if (observe && !observe(t, y, k1)) {
    res.t = t;
    res.y = y;
    res.stopped_by_observer = true;
    return res;
  }

  // slivers below this width left by rounding are absorbed into the last step
  const double span_tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(t), std::abs(t_end)});
  double h = std::min(opts.initial_step, opts.max_step);
  while (t_end - t > span_tol) {
    h = std::min(h, opts.max_step);
    const bool last = h >= t_end - t - span_tol;
    if (last) h = t_end - t;
    if (h < opts.min_step) throw Error(ErrorCode::StepUnderflow, "step " + std::to_string(h) + " at t=" + std::to_string(t));

    ytmp = y + h * a21 * k1;
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      norm = std::max(norm, std::abs(err[i]) / sc);
    }

    if (norm <= 1.0) {
      t = last ? t_end : t + h;
      y = ynew;
      ++res.accepted;
      if (project) {
        project(y);
        rhs(t, y, k1);
      } else {
        k1 = k7;
      }
      if (observe && !observe(t, y, k1)) {
        res.stopped_by_observer = true;
        break;
      }
      const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      ++res.rejected;
      h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 0.9);
    }
  }
  res.t = t;
  res.y = y;
  return res;
}

RVector hermite_interpolate(double t0, const RVector& y0, const RVector& d0, double t1, const RVector& y1,
                            const RVector& d1, double t) {
  const double h = t1 - t0;
  if (h <= 0.0) return y0;
  const double s = (t - t0) / h;
  const double h00 = 2 * s * s * s - 3 * s * s + 1;
  const double h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s;
  const double h11 = s * s * s - s * s;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

}  // namespace gradmap
