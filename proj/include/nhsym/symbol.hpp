#pragma once

#include "nhsym/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nhsym {

// One evaluation of the time-dependent symbol p(tau, x, xi). The confidence
// radius is present exactly when the value came from a statistical estimator;
// analytic evaluations leave it empty.
struct SymbolValue {
    double re = 0.0;
    double im = 0.0;
    std::optional<double> confidence_radius;
    bool low_precision = false;  // estimator warning, never set by analytic paths

    Complex value() const { return {re, im}; }
};

// Jump contribution to the symbol, i.e. the negated compensated Levy integral
//   -∫_{y != 0} (e^{i y'xi} - 1 - i y'xi chi(y)) N(dy).
// Closed form per kernel family; asymmetric compound-poisson laws are not
// covered here (the analytic evaluator falls back to quadrature for them).
Complex jump_symbol_closed_form(const KernelPoint& kernel, const Vector& xi,
                                const TruncationSpec& chi);

// Same quantity by adaptive quadrature (kernels in dimension 1). The result
// carries an absolute error at most abs_tol or a NumericalError is thrown
// with the achieved estimate.
Complex jump_symbol_quadrature(const KernelPoint& kernel, const Vector& xi,
                               const TruncationSpec& chi, double abs_tol = 1e-8);

// p(tau,x,xi) = -i l(tau,x)'xi + 1/2 xi'Q(tau,x)xi
//               - ∫ (e^{iy'xi} - 1 - i y'xi chi(y)) N_tau(x,dy).
// Deterministic; closed form where the family admits one, quadrature else.
SymbolValue symbol_analytic(const ProcessModel& model, double tau, const Vector& x,
                            const Vector& xi);

// Real compensated exponential integral ∫ (e^{y'xi} - 1 - y'xi chi(y)) N(dy),
// used by the exponential-moment bound. Throws HypothesisError when the
// integral is infinite (stable kernels, exponential laws with rate <= |xi|).
double exponential_integral(const KernelPoint& kernel, const Vector& xi,
                            const TruncationSpec& chi);

// ---- additive processes: right-derivative symbol ---------------------------

// Inputs of the additive-process symbol: deterministic characteristics as
// functions of time, with the Levy part already integrated against xi,
//   nu_integral(t) = ∫_(0,t] ∫ (e^{i y'xi} - 1 - i y'xi chi(y)) nu(ds,dy).
struct AdditiveCharacteristics {
    std::function<Vector(double)> B;
    std::function<Matrix(double)> C;
    std::function<Complex(double)> nu_integral;  // may be empty (no jumps)
};

// Right derivative at tau of the additive exponent, returned with the sign
// convention of symbol_analytic, so for Brownian motion with variance
// function sigma^2 the result is +1/2 xi^2 (sigma^2)'_+(tau). Differences use
// steps h_k = 2^-k with Richardson extrapolation; failure to converge to
// rel_tol raises NumericalError ("right derivative does not exist").
SymbolValue symbol_additive(const AdditiveCharacteristics& input, double tau, const Vector& xi,
                            double rel_tol = 1e-7);

// ---- growth and sector constants -------------------------------------------

struct ConditionConstants {
    double growth_c = 0.0;   // sup |p| / (1 + ‖xi‖²)
    double sector_c0 = 0.0;  // sup |Im p| / Re p, meaningful when !sector_violated
    bool sector_violated = false;
    double kappa = 0.0;      // 1 / (4 arctan(1/(2 c0))), = 1/(2 pi) at c0 = 0
};

double kappa_from_c0(double c0);

struct SweepGrid {
    std::vector<double> s;
    std::vector<Vector> x;
    std::vector<Vector> xi;

    // s in [0, s_max], x in a centered box, xi along +-coordinate directions
    // with geometrically spaced magnitudes.
    static SweepGrid regular(int dim, double s_max = 10.0, int s_points = 16,
                             double x_half_width = 10.0, int x_points = 9,
                             std::vector<double> xi_magnitudes = {0.25, 0.5, 1.0, 2.0, 4.0,
                                                                  8.0});
};

ConditionConstants condition_constants(const ProcessModel& model, const SweepGrid& grid);

}  // namespace nhsym
