#pragma once

#include "nhsym/symbol.hpp"

#include <vector>

namespace nhsym {

// Sampling grids replacing the uncomputable sup over all s >= 0, y in R^d in
// the starting-point functionals. Defaults: s in [0,10] with 64 points, y in
// a box of half-width 10 with 33 points per axis, epsilon on the unit sphere.
struct IndexGrids {
    std::vector<double> s;
    std::vector<Vector> y;
    std::vector<Vector> eps;     // unit directions, ‖eps‖ = 1
    int ball_points_per_axis = 9;  // y-grid resolution for the 2R-balls at infinity

    static IndexGrids defaults(int dim, double s_max = 10.0, int s_points = 64,
                               double y_half_width = 10.0, int y_points = 33,
                               int eps_points = 64);
};

// H(R)  = sup_s sup_y sup_{‖eps‖<=1} |p(s, y, eps/R)|
double H_start(const ProcessModel& model, double radius, const IndexGrids& grids);

// h(R)  = inf_s inf_y sup_{‖eps‖<=1} Re p(s, y, eps/(4 kappa R))
double h_start(const ProcessModel& model, double radius, const IndexGrids& grids, double kappa);

// Localized versions at fixed tau with y restricted to ‖y - x‖ <= 2R.
double H_inf(const ProcessModel& model, double tau, const Vector& x, double radius,
             const IndexGrids& grids);
double h_inf(const ProcessModel& model, double tau, const Vector& x, double radius,
             const IndexGrids& grids, double kappa);

enum class LimitDirection { RToZero, RToInfinity };

struct SlopeFit {
    double index = 0.0;         // -(least-squares slope) over the asymptotic half
    double limsup_index = 0.0;  // limsup-definition surrogate (windowed slopes)
    double liminf_index = 0.0;  // liminf-definition surrogate
    double max_residual = 0.0;
    double window_spread = 0.0;
    std::vector<double> window_exponents;
};

// Log-log slope analysis of (R, value) samples. Requires >= 6 samples on a
// geometric grid; the fit uses the half of the grid nearest the limit, with
// sliding 4-point windows supplying the limsup/liminf surrogates. Throws
// NumericalError on nonpositive values or windowed-slope spread > 0.5.
SlopeFit extract_indices(const std::vector<std::pair<double, double>>& samples,
                         LimitDirection direction);

struct IndexCurve {
    std::vector<double> radii;
    std::vector<double> values;
};

struct IndexReport {
    // Indices in the starting point (R -> infinity):  beta0_low is the
    // underlined beta, delta0_up the overlined delta.
    double beta0 = 0.0, beta0_low = 0.0, delta0_up = 0.0, delta0 = 0.0;
    bool start_deltas_defined = false;
    // Indices at infinity for the given (tau, x) (R -> 0).
    double tau = 0.0;
    Vector x;
    double beta_inf = 0.0, beta_inf_low = 0.0, delta_inf_up = 0.0, delta_inf = 0.0;
    bool inf_deltas_defined = false;

    ConditionConstants constants;
    IndexCurve H_start_curve, h_start_curve, H_inf_curve, h_inf_curve;
    SlopeFit H_start_fit, h_start_fit, H_inf_fit, h_inf_fit;

    // Relative change of H under doubling of the (s, y, eps) grids, probed at
    // the median radius of each curve; exposes sup/inf under-coverage.
    double start_grid_refinement = 0.0;
    double inf_grid_refinement = 0.0;
};

struct IndexConfig {
    IndexGrids grids;
    std::vector<double> r_grid_start;  // default geometric 16 points [1e1, 1e3]
    std::vector<double> r_grid_inf;    // default geometric 16 points [1e-3, 1e-1]

    static IndexConfig defaults(int dim);
};

std::vector<double> geometric_grid(double lo, double hi, int points);

// Full extraction: H/h curves on both limit directions plus the eight indices
// (delta families only when the sector condition holds).
IndexReport compute_index_report(const ProcessModel& model, double tau, const Vector& x,
                                 const IndexConfig& config);

}  // namespace nhsym
