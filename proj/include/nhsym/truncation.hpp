#pragma once

#include "nhsym/common.hpp"

namespace nhsym {

enum class TruncationShape { PiecewiseLinear, SmoothBump, Zero };

// Symmetric cut-off chi: 1 on the ball of radius r, 0 outside the ball of
// radius 2*R_chi, values in [0,1]. chi(y) depends on y only through the
// Euclidean radius, so chi(y) = chi(-y) holds by construction.
struct TruncationSpec {
    double inner_radius = 1.0;      // r
    double outer_half_radius = 1.0; // R_chi; support ends at 2*R_chi
    TruncationShape shape = TruncationShape::PiecewiseLinear;

    double support_radius() const { return 2.0 * outer_half_radius; }

    // Radial profile; rho >= 0.
    double chi_radial(double rho) const;
    double chi(const Vector& y) const { return chi_radial(y.norm()); }

    // finite_activity: the kernel the model pairs this with has a finite
    // Levy measure (shape == Zero is only legal then).
    void validate(bool finite_activity) const;

    bool operator==(const TruncationSpec& other) const = default;
};

}  // namespace nhsym
