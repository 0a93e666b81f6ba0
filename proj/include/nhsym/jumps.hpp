#pragma once

#include "nhsym/coefficients.hpp"
#include "nhsym/common.hpp"

namespace nhsym {

class RngStream;

enum class JumpFamily { None, CompoundPoisson, SymmetricAlphaStable };

enum class JumpLawKind { Gaussian, TwoPoint, TwoSidedExponential };

// Jump-size law of a compound-Poisson kernel. In dimension d > 1 the jump
// vector has i.i.d. coordinates drawn from the one-dimensional law.
struct JumpLaw {
    JumpLawKind kind = JumpLawKind::TwoPoint;
    double mean = 0.0;   // gaussian
    double sigma = 1.0;  // gaussian, > 0
    double size = 1.0;   // two-point: jumps are +-size, > 0
    double rate = 1.0;   // two-sided exponential, > 0

    void validate() const;
    bool symmetric() const { return kind != JumpLawKind::Gaussian || mean == 0.0; }

    Complex cf1(double xi) const;     // E e^{i xi J}
    double mgf1(double xi) const;     // E e^{xi J}; throws HypothesisError if infinite
    double second_moment1() const;    // E J^2
    double one_wedge_sq1() const;     // E [1 ∧ J^2]
    double tail_prob1(double r) const;  // P(|J| > r)
    double sample1(RngStream& rng) const;

    bool operator==(const JumpLaw& other) const = default;
};

struct JumpKernelSpec {
    JumpFamily family = JumpFamily::None;
    CoefficientField intensity;  // scalar lambda(s,x) >= 0; compound-poisson only
    JumpLaw law;                 // compound-poisson only
    double alpha = 1.0;          // in (0,2); stable only
    CoefficientField scale;      // scalar gamma(s,x) >= 0; stable only

    void validate(int dim) const;
    bool finite_activity() const { return family != JumpFamily::SymmetricAlphaStable; }
    bool operator==(const JumpKernelSpec& other) const;
};

// ---- symmetric alpha-stable normalization ---------------------------------
//
// The stable kernel is N(x,dy) = gamma(s,x)^alpha * c_{d,alpha} ‖y‖^{-d-alpha} dy
// with c_{d,alpha} chosen so that the jump part of the symbol is exactly
// gamma^alpha ‖ξ‖^alpha:  ∫ (1 - cos(y'ξ)) c_{d,alpha} ‖y‖^{-d-alpha} dy = ‖ξ‖^alpha.

// C(alpha) = ∫_0^∞ (1 - cos u) u^{-1-alpha} du
//          = Gamma(2-alpha) cos(pi alpha / 2) / (alpha (1-alpha)),  alpha != 1
//          = pi/2,                                                  alpha == 1.
double stable_one_minus_cos_integral(double alpha);

// c_{d,alpha} = 2^alpha Gamma((d+alpha)/2) / (pi^{d/2} |Gamma(-alpha/2)|).
// For d = 1 this reduces to 1 / (2 C(alpha)).
double stable_levy_normalizer(int dim, double alpha);

// Surface area of the unit sphere S^{d-1}.
double unit_sphere_area(int dim);

// The jump kernel evaluated at one point (s,x): plain numbers plus the
// closed-form queries the symbol, validation, and simulation layers need.
struct KernelPoint {
    JumpFamily family = JumpFamily::None;
    int dim = 1;
    double lambda = 0.0;  // compound-poisson
    JumpLaw law;
    double alpha = 1.0;  // stable
    double gamma = 0.0;

    Complex cf(const Vector& xi) const;  // compound-poisson jump-law cf, iid coordinates

    // ∫ (1 ∧ ‖y‖²) N(dy). Exact in d = 1; for compound-poisson in d > 1 the
    // bound lambda * min(1, E‖J‖²) is returned (finiteness is what matters).
    double one_wedge_sq_integral() const;

    // N({ ‖y‖ > radius }). Euclidean norm.
    double tail_mass(double radius) const;

    // Stable only: gamma^alpha * c_{d,alpha}.
    double levy_density_constant() const;
};

}  // namespace nhsym
