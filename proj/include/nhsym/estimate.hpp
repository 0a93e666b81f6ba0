#pragma once

#include "nhsym/simulate.hpp"
#include "nhsym/symbol.hpp"

#include <vector>

namespace nhsym {

enum class Extrapolation { SmallestLag, Richardson2Point };

struct EstimatorConfig {
    double radius = 1.0;                          // exit ball (max norm)
    std::vector<double> lags = {4e-3, 2e-3, 1e-3};  // strictly decreasing
    int paths_per_lag = 100000;                   // N >= 100
    Extrapolation extrapolation = Extrapolation::Richardson2Point;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;
    double small_jump_cutoff = 0.01;

    void validate() const;
};

struct LagEstimate {
    double lag = 0.0;
    Complex p_hat;
    double confidence_radius = 0.0;  // 3 * (sample std of the summand) / (h sqrt(N))
    double exited_fraction = 0.0;
};

struct SymbolEstimate {
    SymbolValue value;  // confidence_radius always present; low_precision may be set
    std::vector<LagEstimate> per_lag;
};

// Monte Carlo evaluation of the limit definition: for each lag h,
//   p_hat_h = -(1/h) ( mean_j e^{i (X^{sigma,j}_{tau+h} - x)' xi} - 1 )
// over N independently stopped paths, then extrapolated in h.
SymbolEstimate estimate_symbol(const ProcessModel& model, double tau, const Vector& x,
                               const Vector& xi, const EstimatorConfig& cfg);

struct RadiusIndependenceReport {
    double radius1 = 0.0, radius2 = 0.0;
    SymbolEstimate estimate1, estimate2;
    double disagreement = 0.0;     // |p1 - p2|
    double combined_radius = 0.0;  // r1 + r2
    bool consistent = false;       // disagreement <= combined_radius
};

// Runs the estimator at two exit radii with common random numbers and flags
// disagreement beyond the combined confidence radii.
RadiusIndependenceReport radius_independence_check(const ProcessModel& model, double tau,
                                                   const Vector& x, const Vector& xi,
                                                   const EstimatorConfig& cfg, double radius1,
                                                   double radius2);

}  // namespace nhsym
