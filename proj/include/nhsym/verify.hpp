#pragma once

#include "nhsym/indices.hpp"
#include "nhsym/simulate.hpp"

#include <array>
#include <string>
#include <vector>

namespace nhsym {

// ---- exit probabilities ------------------------------------------------------

struct ExitProbabilityConfig {
    int paths = 100000;
    int steps_per_smallest_t = 64;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;
    double small_jump_cutoff = 0.01;
    // Per-step Brownian-bridge crossing aggregation, applied automatically for
    // one-dimensional continuous models with state-independent coefficients;
    // removes the grid-monitoring bias of the exit indicator.
    bool bridge_correction = true;
};

struct ExitProbabilities {
    std::vector<double> t_grid;  // ascending
    std::vector<double> r_grid;
    std::vector<std::vector<double>> probability;  // [t][r], P(sup ‖X-x‖_max >= R)
    std::vector<std::vector<double>> std_error;    // binomial, sqrt(p(1-p)/N)
    bool bridged = false;
};

// One nested path ensemble serves every (t, R) cell (common random numbers;
// sups over nested windows are monotone per path).
ExitProbabilities exit_probabilities(const ProcessModel& model, double tau, const Vector& x,
                                     const std::vector<double>& t_grid,
                                     const std::vector<double>& r_grid,
                                     const ExitProbabilityConfig& cfg);

// ---- maximal inequalities ------------------------------------------------------

struct InequalityCell {
    double t = 0.0;
    double radius = 0.0;
    double lhs = 0.0;         // empirical probability
    double lhs_radius = 0.0;  // 3 binomial standard errors
    double functional = 0.0;  // sup_s H(s,x,R) (upper) or inf_s h(s,x,R) (lower)
    double rhs = 0.0;
    double fitted_ratio = 0.0;  // minimal constant making this cell tight
    double margin = 0.0;        // rhs - (lhs - lhs_radius)
    bool pass = false;
};

struct InequalityReport {
    std::string kind;  // "upper" or "lower"
    double constant = 0.0;
    std::vector<InequalityCell> cells;
    double fitted_constant = 0.0;
    double fitted_constant_doubled = -1.0;  // < 0 when the doubled grid was not run
    bool stable_under_doubling = true;
    bool all_pass = true;
    bool bridged = false;
    std::uint64_t model_hash = 0;
    std::uint64_t seed = 0;
};

struct MaxInequalityConfig {
    std::vector<double> t_grid = {0.0625, 0.125, 0.25, 0.5};
    std::vector<double> radii = {0.5, 1.0};
    double constant = 0.0;  // 0 = defaults: upper c_d = 16 d, lower c_k = 16
    bool check_doubling = true;
    int s_points = 17;  // resolution of the sup/inf over (tau, tau+t]
    ExitProbabilityConfig sampling;
};

// Thm-3.3 upper bound: P(sup ‖X-x‖ >= R) <= c_d t sup_{tau<s<=tau+t} H(s,x,R),
// with H the localized functional of the Def-3.2 form. Reports the fitted
// minimal constant and its stability under doubling the t-grid.
InequalityReport check_max_inequality_upper(const ProcessModel& model, double tau,
                                            const Vector& x, const MaxInequalityConfig& cfg);

// Thm-3.3 lower bound: P(sup < R) <= c_k / (t inf_s h(s,x,R)); requires the
// sector condition (throws HypothesisError otherwise).
InequalityReport check_max_inequality_lower(const ProcessModel& model, double tau,
                                            const Vector& x, const MaxInequalityConfig& cfg);

// ---- asymptotic scaling ---------------------------------------------------------

enum class TimeLimit { TToZero, TToInfinity };

struct ScalingConfig {
    double lambda = 2.0;
    TimeLimit direction = TimeLimit::TToZero;
    std::vector<double> t_grid;  // empty = default 8-point geometric grid
    int paths = 2000;
    int steps_per_path = 1024;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;
    double small_jump_cutoff = 0.01;
};

std::vector<double> default_scaling_grid(TimeLimit direction);

struct ScalingReport {
    double lambda = 0.0;
    TimeLimit direction = TimeLimit::TToZero;
    std::vector<double> t_grid;
    // 10/50/90% quantiles of t^{-1/lambda} sup_{tau<=s<=tau+t} ‖X_s - x‖ per t.
    std::vector<std::array<double, 3>> quantiles;
    std::string verdict;  // "->0", "->inf", "inconclusive"
    std::string note;     // statistical surrogate disclaimer, always present
    std::uint64_t model_hash = 0;
    std::uint64_t seed = 0;
};

// Almost-sure limits are statistically unverifiable; the verdict comes from a
// monotone trend of the 90% (downward) or 10% (upward) quantile by a total
// factor >= 4 across the grid.
ScalingReport asymptotic_scaling(const ProcessModel& model, double tau, const Vector& x,
                                 const ScalingConfig& cfg);

// ---- exponential moments --------------------------------------------------------

struct ExpMomentConfig {
    Vector xi;
    double lag = 1.0;
    int paths = 100000;
    int steps = 256;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;
    // Sweep box for the constant b(xi) and the growth-condition check.
    double sweep_s_max = 10.0;
    int sweep_s_points = 17;
    double sweep_x_half_width = 10.0;
    int sweep_x_points = 9;
};

struct ExpMomentReport {
    double b = 0.0;                // sup over the box of the Ito exponent modulus
    double bound = 0.0;            // e^{b(xi) lag}
    double growth_constant = 0.0;  // sup |p| / (1 + ‖xi‖²) over the sweep
    double empirical_mean = 0.0;   // mean of e^{(X_{tau+lag}-x)'xi}
    double std_error = 0.0;
    bool pass = false;  // mean - 3 se <= bound
    std::uint64_t model_hash = 0;
    std::uint64_t seed = 0;
};

// Gronwall-type bound E e^{(X-x)'xi} <= e^{b(xi) (t - tau)} with
//   b(xi) = sup_{s,x} | xi'l - 1/2 xi'Q xi + ∫ (e^{y'xi} - 1 - y'xi chi(y)) N_s(x,dy) |.
// Models without the required exponential moments raise HypothesisError.
ExpMomentReport exponential_moment_check(const ProcessModel& model, double tau, const Vector& x,
                                         const ExpMomentConfig& cfg);

// ---- p-variation -----------------------------------------------------------------

struct PVariationConfig {
    double p = 2.0;
    int depth = 14;  // dyadic levels 1..K, K <= 16
    int paths = 200;
    double horizon = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;
    double small_jump_cutoff = 0.01;
};

struct PVariationReport {
    double p = 0.0;
    int depth = 0;
    std::vector<double> level_sums;  // path-averaged partition sums, levels 1..K
    double running_max = 0.0;
    std::string verdict;  // "bounded", "growing", "indeterminate"
    std::uint64_t model_hash = 0;
    std::uint64_t seed = 0;
};

// Dyadic partition sums sum_j ‖X_{t_j} - X_{t_{j-1}}‖^p of [tau, tau+T],
// averaged over paths. "bounded" when the last three levels change by < 10%,
// "growing" when they grow by >= 2x.
PVariationReport p_variation(const ProcessModel& model, double tau, const Vector& x,
                             const PVariationConfig& cfg);

}  // namespace nhsym
