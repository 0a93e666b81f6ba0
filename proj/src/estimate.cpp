#include "nhsym/estimate.hpp"

#include "nhsym/parallel.hpp"

#include <cmath>

namespace nhsym {

void EstimatorConfig::validate() const {
    if (!(radius > 0.0)) throw ParseError("estimator radius must be > 0");
    if (lags.empty()) throw ParseError("estimator needs at least one lag");
    for (size_t i = 0; i < lags.size(); ++i) {
        if (!(lags[i] > 0.0)) throw ParseError("estimator lags must be > 0");
        if (i > 0 && !(lags[i] < lags[i - 1]))
            throw ParseError("estimator lags must be strictly decreasing");
    }
    if (paths_per_lag < 100) throw ParseError("estimator needs N >= 100 paths per lag");
    if (extrapolation == Extrapolation::Richardson2Point && lags.size() < 2)
        throw ParseError("2-point Richardson extrapolation needs at least two lags");
}

SymbolEstimate estimate_symbol(const ProcessModel& model, double tau, const Vector& x,
                               const Vector& xi, const EstimatorConfig& cfg) {
    cfg.validate();
    const int n = cfg.paths_per_lag;

    SymbolEstimate out;
    for (size_t li = 0; li < cfg.lags.size(); ++li) {
        const double h = cfg.lags[li];
        std::vector<double> re(n), im(n), exited(n);
        SimConfig sim;
        sim.dt = h / 64.0;
        sim.horizon = h;
        sim.seed = cfg.seed;
        sim.small_jump_cutoff = cfg.small_jump_cutoff;
        sim.record = RecordMode::EndpointAndSup;
        parallel_for(n, [&](std::int64_t j) {
            SimConfig local = sim;
            local.stream = cfg.stream_base + li * static_cast<std::uint64_t>(n) +
                           static_cast<std::uint64_t>(j);
            const StoppedResult stopped =
                simulate_stopped(model, tau, x, cfg.radius, h, local);
            const double phase = xi.dot(stopped.endpoint - x);
            re[j] = std::cos(phase);
            im[j] = std::sin(phase);
            exited[j] = stopped.exited ? 1.0 : 0.0;
        });
        const double mean_re = pairwise_sum(re) / n;
        const double mean_im = pairwise_sum(im) / n;
        // Scatter of the complex summand around its mean.
        std::vector<double> sq(n);
        for (int j = 0; j < n; ++j) {
            const double dr = re[j] - mean_re;
            const double di = im[j] - mean_im;
            sq[j] = dr * dr + di * di;
        }
        const double variance = pairwise_sum(sq) / std::max(1, n - 1);

        LagEstimate lag;
        lag.lag = h;
        lag.p_hat = -(Complex(mean_re, mean_im) - 1.0) / h;
        lag.confidence_radius = 3.0 * std::sqrt(variance) / (h * std::sqrt(double(n)));
        lag.exited_fraction = pairwise_sum(exited) / n;
        out.per_lag.push_back(lag);
    }

    Complex p;
    double radius = 0.0;
    if (cfg.extrapolation == Extrapolation::SmallestLag || out.per_lag.size() == 1) {
        p = out.per_lag.back().p_hat;
        radius = out.per_lag.back().confidence_radius;
    } else {
        // Two smallest lags; the O(h) bias cancels in
        // p = (h1 p2 - h2 p1) / (h1 - h2).
        const LagEstimate& coarse = out.per_lag[out.per_lag.size() - 2];
        const LagEstimate& fine = out.per_lag.back();
        const double h1 = coarse.lag, h2 = fine.lag;
        p = (h1 * fine.p_hat - h2 * coarse.p_hat) / (h1 - h2);
        radius = (h1 * fine.confidence_radius + h2 * coarse.confidence_radius) / (h1 - h2);
    }
    out.value.re = p.real();
    out.value.im = p.imag();
    out.value.confidence_radius = radius;
    out.value.low_precision = radius > 10.0 * std::abs(p);
    return out;
}

RadiusIndependenceReport radius_independence_check(const ProcessModel& model, double tau,
                                                   const Vector& x, const Vector& xi,
                                                   const EstimatorConfig& cfg, double radius1,
                                                   double radius2) {
    if (!(radius1 < radius2)) throw ParseError("radius_independence_check needs R1 < R2");
    RadiusIndependenceReport report;
    report.radius1 = radius1;
    report.radius2 = radius2;
    EstimatorConfig c1 = cfg;
    c1.radius = radius1;
    EstimatorConfig c2 = cfg;
    c2.radius = radius2;  // same seed/stream base: common random numbers
    report.estimate1 = estimate_symbol(model, tau, x, xi, c1);
    report.estimate2 = estimate_symbol(model, tau, x, xi, c2);
    report.disagreement =
        std::abs(report.estimate1.value.value() - report.estimate2.value.value());
    report.combined_radius = report.estimate1.value.confidence_radius.value() +
                             report.estimate2.value.confidence_radius.value();
    report.consistent = report.disagreement <= report.combined_radius;
    return report;
}

}  // namespace nhsym
