#include "nhsym/truncation.hpp"

#include <cmath>

namespace nhsym {

namespace {

// C-infinity step that is 1 at t=0 and 0 at t=1.
double smooth_step_down(double t) {
    auto h = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double a = h(1.0 - t);
    const double b = h(t);
    return a / (a + b);
}

}  // namespace

double TruncationSpec::chi_radial(double rho) const {
    if (shape == TruncationShape::Zero) return 0.0;
    const double r = inner_radius;
    const double outer = support_radius();
    if (rho <= r) return 1.0;
    if (rho >= outer) return 0.0;
    const double t = (rho - r) / (outer - r);
    return shape == TruncationShape::PiecewiseLinear ? 1.0 - t : smooth_step_down(t);
}

void TruncationSpec::validate(bool finite_activity) const {
    if (shape == TruncationShape::Zero) {
        if (!finite_activity)
            throw ParseError("truncation shape 'zero' is only permitted for finite-activity "
                             "kernels (compound-poisson or none)");
        return;
    }
    if (!(inner_radius > 0.0)) throw ParseError("truncation inner-radius must be > 0");
    if (!(outer_half_radius >= inner_radius))
        throw ParseError("truncation requires R_chi >= inner-radius r");
}

}  // namespace nhsym
