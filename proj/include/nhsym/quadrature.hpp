#pragma once

#include "nhsym/common.hpp"

#include <functional>
#include <vector>

namespace nhsym::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b] to an absolute tolerance. The worst
// interval is bisected until the summed error estimate is below abs_tol or
// max_intervals is reached; the caller decides whether a miss is fatal.
Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals = 4000);

// As above but with user-supplied initial breakpoints (ascending, spanning
// the domain). Used to pre-split at truncation radii and oscillation periods.
Result integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints, double abs_tol,
                          int max_intervals = 4000);

// Oscillatory power-law tail  T = ∫_Y^∞ e^{i xi y} y^{-s} dy  (xi > 0, s > 1)
// by the integration-by-parts asymptotic series. Requires xi*Y large enough
// that the series reaches abs_tol; *ok reports success and the remainder
// bound is added to *error_bound.
Complex power_tail_oscillatory(double xi, double s, double Y, double abs_tol, bool* ok,
                               double* error_bound);

}  // namespace nhsym::quad
