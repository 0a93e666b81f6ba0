#include "nhsym/indices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhsym {

namespace {

std::vector<Vector> sphere_directions(int dim, int count) {
    std::vector<Vector> dirs;
    if (dim == 1) {
        dirs.push_back(Vector::Constant(1, 1.0));
        dirs.push_back(Vector::Constant(1, -1.0));
        return dirs;
    }
    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * kPi * i / count;
            Vector v(2);
            v << std::cos(a), std::sin(a);
            dirs.push_back(v);
        }
        return dirs;
    }
    // Fibonacci lattice on S^2; higher dimensions reuse the first three
    // coordinates padded with zeros (coefficients in this toolkit are at most
    // mildly anisotropic).
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = 2.0 * kPi * i / golden;
        Vector v = Vector::Zero(dim);
        v[0] = r * std::cos(a);
        v[1] = r * std::sin(a);
        v[2] = z;
        dirs.push_back(v);
    }
    return dirs;
}

std::vector<Vector> box_grid(const Vector& center, double half_width, int dim, int per_axis) {
    std::vector<Vector> points;
    std::vector<int> idx(dim, 0);
    for (;;) {
        Vector y(dim);
        for (int i = 0; i < dim; ++i) {
            const double t = per_axis == 1 ? 0.5 : static_cast<double>(idx[i]) / (per_axis - 1);
            y[i] = center[i] - half_width + 2.0 * half_width * t;
        }
        points.push_back(y);
        int pos = dim - 1;
        while (pos >= 0 && ++idx[pos] == per_axis) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return points;
}

double sup_over_eps_abs(const ProcessModel& model, double s, const Vector& y,
                        const std::vector<Vector>& eps, double inv_radius) {
    double best = 0.0;
    for (const Vector& e : eps) {
        const SymbolValue p = symbol_analytic(model, s, y, e * inv_radius);
        best = std::max(best, std::hypot(p.re, p.im));
    }
    return best;
}

double sup_over_eps_re(const ProcessModel& model, double s, const Vector& y,
                       const std::vector<Vector>& eps, double inv_radius) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vector& e : eps) {
        const SymbolValue p = symbol_analytic(model, s, y, e * inv_radius);
        best = std::max(best, p.re);
    }
    return best;
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0))
        throw HypothesisError(
            "sector condition violated: kappa undefined, delta-indices do not exist for "
            "this model");
}

double least_squares_slope(const std::vector<double>& logr, const std::vector<double>& logv,
                           size_t begin, size_t end, double* max_residual) {
    const size_t n = end - begin;
    double mx = 0.0, my = 0.0;
    for (size_t i = begin; i < end; ++i) {
        mx += logr[i];
        my += logv[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = begin; i < end; ++i) {
        sxx += (logr[i] - mx) * (logr[i] - mx);
        sxy += (logr[i] - mx) * (logv[i] - my);
    }
    const double slope = sxy / sxx;
    if (max_residual) {
        const double intercept = my - slope * mx;
        double worst = 0.0;
        for (size_t i = begin; i < end; ++i)
            worst = std::max(worst, std::abs(logv[i] - slope * logr[i] - intercept));
        *max_residual = worst;
    }
    return slope;
}

}  // namespace

IndexGrids IndexGrids::defaults(int dim, double s_max, int s_points, double y_half_width,
                                int y_points, int eps_points) {
    IndexGrids g;
    for (int i = 0; i < s_points; ++i)
        g.s.push_back(s_points == 1 ? 0.0 : s_max * i / (s_points - 1));
    // The per-axis budget is for d = 1; higher dimensions use a coarser mesh
    // to keep the sweep tractable.
    const int per_axis = dim == 1 ? y_points : std::min(y_points, 9);
    g.y = box_grid(Vector::Zero(dim), y_half_width, dim, per_axis);
    g.eps = sphere_directions(dim, eps_points);
    return g;
}

double H_start(const ProcessModel& model, double radius, const IndexGrids& grids) {
    if (!(radius > 0.0)) throw ParseError("H_start requires radius > 0");
    double best = 0.0;
    for (double s : grids.s)
        for (const Vector& y : grids.y)
            best = std::max(best, sup_over_eps_abs(model, s, y, grids.eps, 1.0 / radius));
    return best;
}

double h_start(const ProcessModel& model, double radius, const IndexGrids& grids, double kappa) {
    if (!(radius > 0.0)) throw ParseError("h_start requires radius > 0");
    require_kappa(kappa);
    const double inv = 1.0 / (4.0 * kappa * radius);
    double best = std::numeric_limits<double>::infinity();
    for (double s : grids.s)
        for (const Vector& y : grids.y)
            best = std::min(best, sup_over_eps_re(model, s, y, grids.eps, inv));
    return best;
}

double H_inf(const ProcessModel& model, double tau, const Vector& x, double radius,
             const IndexGrids& grids) {
    if (!(radius > 0.0)) throw ParseError("H_inf requires radius > 0");
    double best = 0.0;
    for (const Vector& y : box_grid(x, 2.0 * radius, model.dim, grids.ball_points_per_axis))
        best = std::max(best, sup_over_eps_abs(model, tau, y, grids.eps, 1.0 / radius));
    return best;
}

double h_inf(const ProcessModel& model, double tau, const Vector& x, double radius,
             const IndexGrids& grids, double kappa) {
    if (!(radius > 0.0)) throw ParseError("h_inf requires radius > 0");
    require_kappa(kappa);
    const double inv = 1.0 / (4.0 * kappa * radius);
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& y : box_grid(x, 2.0 * radius, model.dim, grids.ball_points_per_axis))
        best = std::min(best, sup_over_eps_re(model, tau, y, grids.eps, inv));
    return best;
}

SlopeFit extract_indices(const std::vector<std::pair<double, double>>& samples,
                         LimitDirection direction) {
    if (samples.size() < 6)
        throw ParseError("extract_indices needs >= 6 samples on a geometric grid");
    std::vector<std::pair<double, double>> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> logr, logv;
    for (const auto& [r, v] : sorted) {
        if (!(r > 0.0) || !(v > 0.0))
            throw NumericalError("extract_indices: nonpositive sample, log-log fit undefined");
        logr.push_back(std::log(r));
        logv.push_back(std::log(v));
    }
    const size_t n = sorted.size();
    const size_t half = (n + 1) / 2;
    // Asymptotic half toward the limit: small radii for R -> 0, large for R -> inf.
    const size_t begin = direction == LimitDirection::RToZero ? 0 : n - half;
    const size_t end = direction == LimitDirection::RToZero ? half : n;

    SlopeFit fit;
    fit.index = -least_squares_slope(logr, logv, begin, end, &fit.max_residual);

    constexpr size_t kWindow = 4;
    if (end - begin <= kWindow) {
        fit.window_exponents.push_back(fit.index);
    } else {
        for (size_t w = begin; w + kWindow <= end; ++w)
            fit.window_exponents.push_back(
                -least_squares_slope(logr, logv, w, w + kWindow, nullptr));
    }
    const auto [lo_it, hi_it] =
        std::minmax_element(fit.window_exponents.begin(), fit.window_exponents.end());
    fit.window_spread = *hi_it - *lo_it;
    if (fit.window_spread > 0.5)
        throw NumericalError("extract_indices: ill-posed fit, windowed-slope spread " +
                             std::to_string(fit.window_spread) + " > 0.5");
    if (direction == LimitDirection::RToZero) {
        fit.limsup_index = *hi_it;  // limsup vanishes only above the worst local exponent
        fit.liminf_index = *lo_it;
    } else {
        fit.limsup_index = *lo_it;  // R -> inf: limsup vanishes below every local exponent
        fit.liminf_index = *hi_it;
    }
    return fit;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    for (int i = 0; i < points; ++i)
        grid.push_back(lo * std::pow(hi / lo, points == 1 ? 0.0
                                                          : static_cast<double>(i) / (points - 1)));
    return grid;
}

IndexConfig IndexConfig::defaults(int dim) {
    IndexConfig c;
    c.grids = IndexGrids::defaults(dim);
    c.r_grid_start = geometric_grid(1e1, 1e3, 16);
    c.r_grid_inf = geometric_grid(1e-3, 1e-1, 16);
    return c;
}

namespace {

IndexCurve make_curve(const std::vector<double>& radii,
                      const std::function<double(double)>& f) {
    IndexCurve curve;
    curve.radii = radii;
    for (double r : radii) curve.values.push_back(f(r));
    return curve;
}

std::vector<std::pair<double, double>> as_samples(const IndexCurve& curve) {
    std::vector<std::pair<double, double>> s;
    for (size_t i = 0; i < curve.radii.size(); ++i) s.emplace_back(curve.radii[i], curve.values[i]);
    return s;
}

}  // namespace

IndexReport compute_index_report(const ProcessModel& model, double tau, const Vector& x,
                                 const IndexConfig& config) {
    IndexReport report;
    report.tau = tau;
    report.x = x;
    report.constants = condition_constants(
        model, SweepGrid::regular(model.dim, 10.0, 16, 10.0, model.dim == 1 ? 9 : 5));

    report.H_start_curve =
        make_curve(config.r_grid_start, [&](double r) { return H_start(model, r, config.grids); });
    report.H_start_fit = extract_indices(as_samples(report.H_start_curve),
                                         LimitDirection::RToInfinity);
    report.beta0 = report.H_start_fit.limsup_index;
    report.beta0_low = report.H_start_fit.liminf_index;

    report.H_inf_curve = make_curve(
        config.r_grid_inf, [&](double r) { return H_inf(model, tau, x, r, config.grids); });
    report.H_inf_fit = extract_indices(as_samples(report.H_inf_curve), LimitDirection::RToZero);
    report.beta_inf = report.H_inf_fit.limsup_index;
    report.beta_inf_low = report.H_inf_fit.liminf_index;

    if (!report.constants.sector_violated) {
        const double kappa = report.constants.kappa;
        report.h_start_curve = make_curve(
            config.r_grid_start, [&](double r) { return h_start(model, r, config.grids, kappa); });
        report.h_start_fit =
            extract_indices(as_samples(report.h_start_curve), LimitDirection::RToInfinity);
        report.delta0_up = report.h_start_fit.limsup_index;
        report.delta0 = report.h_start_fit.liminf_index;
        report.start_deltas_defined = true;

        report.h_inf_curve = make_curve(config.r_grid_inf, [&](double r) {
            return h_inf(model, tau, x, r, config.grids, kappa);
        });
        report.h_inf_fit =
            extract_indices(as_samples(report.h_inf_curve), LimitDirection::RToZero);
        report.delta_inf_up = report.h_inf_fit.limsup_index;
        report.delta_inf = report.h_inf_fit.liminf_index;
        report.inf_deltas_defined = true;
    }

    // Grid-convergence diagnostic: relative change of H under grid doubling,
    // probed at the median radius of each curve.
    {
        IndexGrids fine = IndexGrids::defaults(
            model.dim, config.grids.s.empty() ? 10.0 : config.grids.s.back(),
            static_cast<int>(config.grids.s.size()) * 2, 10.0, model.dim == 1 ? 65 : 9,
            static_cast<int>(config.grids.eps.size()) * 2);
        fine.ball_points_per_axis = config.grids.ball_points_per_axis * 2 - 1;
        const double r_start = config.r_grid_start[config.r_grid_start.size() / 2];
        const double coarse_start = H_start(model, r_start, config.grids);
        const double fine_start = H_start(model, r_start, fine);
        report.start_grid_refinement =
            std::abs(fine_start - coarse_start) / std::max(std::abs(fine_start), 1e-300);
        const double r_inf = config.r_grid_inf[config.r_grid_inf.size() / 2];
        const double coarse_inf = H_inf(model, tau, x, r_inf, config.grids);
        const double fine_inf = H_inf(model, tau, x, r_inf, fine);
        report.inf_grid_refinement =
            std::abs(fine_inf - coarse_inf) / std::max(std::abs(fine_inf), 1e-300);
    }
    return report;
}

}  // namespace nhsym
