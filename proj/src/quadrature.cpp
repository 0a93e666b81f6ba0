#include "nhsym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace nhsym::quad {

namespace {

// QUADPACK dqk15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = half * kXgk[i];
        const double fsum = f(center - x) + f(center + x);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints, double abs_tol,
                          int max_intervals) {
    std::priority_queue<Panel> panels;
    Result result;
    double total = 0.0, total_error = 0.0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] <= breakpoints[i]) continue;
        Panel p = evaluate_panel(f, breakpoints[i], breakpoints[i + 1]);
        result.evaluations += 15;
        total += p.value;
        total_error += p.error;
        panels.push(p);
    }
    int used = static_cast<int>(panels.size());
    while (total_error > abs_tol && used < max_intervals && !panels.empty()) {
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted at double precision
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++used;
    }
    result.value = total;
    result.error_estimate = total_error;
    return result;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
    return integrate_segments(f, {a, b}, abs_tol, max_intervals);
}

Complex power_tail_oscillatory(double xi, double s, double Y, double abs_tol, bool* ok,
                               double* error_bound) {
    // T_s = -e^{i xi Y} Y^{-s} / (i xi) + (s / (i xi)) T_{s+1}, iterated.
    const Complex i_xi(0.0, xi);
    const Complex phase = std::exp(Complex(0.0, xi * Y));
    Complex coefficient(1.0, 0.0);
    Complex sum(0.0, 0.0);
    double prev_bound = std::numeric_limits<double>::infinity();
    *ok = false;
    for (int m = 0; m < 24; ++m) {
        sum += coefficient * (-phase * std::pow(Y, -(s + m)) / i_xi);
        coefficient *= (s + m) / i_xi;
        // |T_{s+m+1}| <= Y^{-(s+m)} / (s+m).
        const double bound = std::abs(coefficient) * std::pow(Y, -(s + m)) / (s + m);
        if (bound <= abs_tol) {
            *ok = true;
            *error_bound += bound;
            return sum;
        }
        if (bound > prev_bound) break;  // asymptotic series started diverging
        prev_bound = bound;
    }
    *error_bound += prev_bound;
    return sum;
}

}  // namespace nhsym::quad
