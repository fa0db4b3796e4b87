#pragma once

#include <functional>

#include "gradmap/core.hpp"

namespace gradmap {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  double max_step = 0.1;
};

using OdeRhs = std::function<void(double t, const RVector& y, RVector& dydt)>;
/// Applied to the state after every accepted step (e.g. renormalization).
using OdeProjector = std::function<void(RVector& y)>;
/// Called at the initial point and after every accepted step. Returning
/// false stops the integration.
using OdeObserver = std::function<bool(double t, const RVector& y, const RVector& dydt)>;

struct OdeResult {
  double t = 0.0;
  RVector y;
  long accepted = 0;
  long rejected = 0;
  bool stopped_by_observer = false;
};

/// Dormand-Prince 5(4) with an embedded error estimate and a PI-free
/// standard step controller. Throws StepUnderflow when the controller asks
/// for a step below `min_step`.
OdeResult integrate_adaptive(const OdeRhs& rhs, RVector y0, double t0, double t_end, const OdeOptions& opts,
                             const OdeProjector& project = {}, const OdeObserver& observe = {});

/// Cubic Hermite interpolation between two stored samples.
RVector hermite_interpolate(double t0, const RVector& y0, const RVector& d0, double t1, const RVector& y1,
                            const RVector& d1, double t);

}  // namespace gradmap
