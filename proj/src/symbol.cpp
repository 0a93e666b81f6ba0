#include "nhsym/symbol.hpp"

#include "nhsym/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace nhsym {

namespace {

double gaussian_pdf(double y, double mean, double sigma) {
    const double z = (y - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

double two_sided_exp_pdf(double y, double rate) {
    return 0.5 * rate * std::exp(-rate * std::abs(y));
}

// Integration window covering all but a negligible sliver of the law's mass.
std::pair<double, double> law_window(const JumpLaw& law) {
    switch (law.kind) {
        case JumpLawKind::Gaussian:
            return {law.mean - 13.0 * law.sigma, law.mean + 13.0 * law.sigma};
        case JumpLawKind::TwoSidedExponential:
            return {-50.0 / law.rate, 50.0 / law.rate};
        case JumpLawKind::TwoPoint:
            return {-law.size, law.size};
    }
    return {-1.0, 1.0};
}

std::vector<double> oscillation_breakpoints(double lo, double hi, double xi,
                                            const TruncationSpec& chi) {
    std::vector<double> pts = {lo, hi, 0.0,
                               chi.inner_radius, -chi.inner_radius,
                               chi.support_radius(), -chi.support_radius()};
    const double axi = std::abs(xi);
    if (axi > 0.0) {
        const double period = kPi / axi;
        const double span = hi - lo;
        if (span / period < 512.0)
            for (double y = std::ceil(lo / period) * period; y < hi; y += period)
                pts.push_back(y);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [&](double y) { return y < lo || y > hi; }),
              pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Real part of the stable jump contribution:
//   2 k ∫_0^∞ (1 - cos(a y)) y^{-1-alpha} dy,  a = |xi| > 0.
// Head: Taylor series of 1-cos with exact power integration; middle: adaptive
// Gauss-Kronrod split at half periods; tail: exact 1-part plus asymptotic
// integration-by-parts for the oscillatory part.
double stable_real_integral(double a, double alpha, double k, double abs_tol) {
    const double y1 = 0.5 / a;
    double y_tail = std::max(4.0 * y1, 30.0 / a);

    double head = 0.0;
    {
        double term_pow = 1.0;  // a^{2m} y1^{2m} accumulated incrementally
        double factorial = 1.0;
        for (int m = 1; m <= 40; ++m) {
            term_pow *= (a * y1) * (a * y1);
            factorial *= (2.0 * m - 1.0) * (2.0 * m);
            const double term = (m % 2 ? 1.0 : -1.0) * term_pow *
                                std::pow(y1, -alpha) / (factorial * (2.0 * m - alpha));
            head += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(head))) break;
        }
    }

    double tail = 0.0;
    double tail_error = 0.0;
    for (int attempt = 0;; ++attempt) {
        bool ok = false;
        tail_error = 0.0;
        const Complex osc =
            quad::power_tail_oscillatory(a, 1.0 + alpha, y_tail, abs_tol / (8.0 * k), &ok,
                                         &tail_error);
        if (ok) {
            tail = std::pow(y_tail, -alpha) / alpha - osc.real();
            break;
        }
        if (attempt == 4)
            throw NumericalError("stable Levy quadrature: oscillatory tail did not converge");
        y_tail *= 2.0;
    }

    std::vector<double> pts;
    const double period = kPi / a;
    pts.push_back(y1);
    for (double y = y1 + period; y < y_tail; y += period) pts.push_back(y);
    pts.push_back(y_tail);
    const auto integrand = [&](double y) {
        return (1.0 - std::cos(a * y)) * std::pow(y, -1.0 - alpha);
    };
    const quad::Result middle = quad::integrate_segments(integrand, pts, abs_tol / (8.0 * k));
    const double total_error = 2.0 * k * (middle.error_estimate + tail_error);
    if (total_error > abs_tol) {
        std::ostringstream os;
        os << "stable Levy quadrature error estimate " << total_error << " exceeds tolerance "
           << abs_tol;
        throw NumericalError(os.str());
    }
    return 2.0 * k * (head + middle.value + tail);
}

Complex compound_poisson_quadrature(const KernelPoint& kernel, double xi,
                                    const TruncationSpec& chi, double abs_tol) {
    const JumpLaw& law = kernel.law;
    if (law.kind == JumpLawKind::TwoPoint) {
        // Atomic law: the "quadrature" is the exact two-term sum.
        const double a = law.size;
        const Complex up = std::exp(Complex(0.0, a * xi)) - 1.0 -
                           Complex(0.0, a * xi * chi.chi_radial(a));
        const Complex down = std::exp(Complex(0.0, -a * xi)) - 1.0 -
                             Complex(0.0, -a * xi * chi.chi_radial(a));
        return -kernel.lambda * 0.5 * (up + down);
    }
    const auto pdf = [&](double y) {
        return law.kind == JumpLawKind::Gaussian ? gaussian_pdf(y, law.mean, law.sigma)
                                                 : two_sided_exp_pdf(y, law.rate);
    };
    auto [lo, hi] = law_window(law);
    lo = std::min(lo, -chi.support_radius() - 1.0);
    hi = std::max(hi, chi.support_radius() + 1.0);
    const std::vector<double> pts = oscillation_breakpoints(lo, hi, xi, chi);

    const auto integrand_re = [&](double y) {
        return (std::cos(y * xi) - 1.0) * pdf(y);
    };
    const auto integrand_im = [&](double y) {
        return (std::sin(y * xi) - y * xi * chi.chi_radial(std::abs(y))) * pdf(y);
    };
    const double tol = abs_tol / (2.0 * std::max(kernel.lambda, 1e-12));
    const quad::Result re = quad::integrate_segments(integrand_re, pts, tol);
    const quad::Result im = quad::integrate_segments(integrand_im, pts, tol);
    if (kernel.lambda * (re.error_estimate + im.error_estimate) > abs_tol) {
        std::ostringstream os;
        os << "compound-poisson quadrature error estimate "
           << kernel.lambda * (re.error_estimate + im.error_estimate)
           << " exceeds tolerance " << abs_tol;
        throw NumericalError(os.str());
    }
    return -kernel.lambda * Complex(re.value, im.value);
}

}  // namespace

Complex jump_symbol_closed_form(const KernelPoint& kernel, const Vector& xi,
                                const TruncationSpec& chi) {
    (void)chi;  // symmetric laws: the chi compensation integrates to zero
    switch (kernel.family) {
        case JumpFamily::None:
            return {0.0, 0.0};
        case JumpFamily::SymmetricAlphaStable: {
            const double n = xi.norm();
            if (n == 0.0 || kernel.gamma == 0.0) return {0.0, 0.0};
            return {std::pow(kernel.gamma * n, kernel.alpha), 0.0};  // gamma^a ‖xi‖^a
        }
        case JumpFamily::CompoundPoisson: {
            if (!kernel.law.symmetric())
                throw NumericalError(
                    "no closed form for asymmetric compound-poisson laws; use quadrature");
            return kernel.lambda * (Complex(1.0, 0.0) - kernel.cf(xi));
        }
    }
    return {0.0, 0.0};
}

Complex jump_symbol_quadrature(const KernelPoint& kernel, const Vector& xi,
                               const TruncationSpec& chi, double abs_tol) {
    if (kernel.family == JumpFamily::None) return {0.0, 0.0};
    if (kernel.dim != 1)
        throw NumericalError("Levy-integral quadrature supports one-dimensional kernels only");
    const double x1 = xi[0];
    switch (kernel.family) {
        case JumpFamily::SymmetricAlphaStable: {
            if (x1 == 0.0 || kernel.gamma == 0.0) return {0.0, 0.0};
            const double k = kernel.levy_density_constant();
            // Imaginary part vanishes: the compensated integrand is odd and the
            // measure symmetric.
            return {stable_real_integral(std::abs(x1), kernel.alpha, k, abs_tol), 0.0};
        }
        case JumpFamily::CompoundPoisson:
            if (kernel.lambda == 0.0) return {0.0, 0.0};
            return compound_poisson_quadrature(kernel, x1, chi, abs_tol);
        default:
            return {0.0, 0.0};
    }
}

SymbolValue symbol_analytic(const ProcessModel& model, double tau, const Vector& x,
                            const Vector& xi) {
    if (tau < 0.0) throw NumericalError("symbol evaluation requires tau >= 0");
    if (x.size() != model.dim || xi.size() != model.dim)
        throw ParseError("symbol evaluation: state/frequency dimension mismatch");
    if (!all_finite(x) || !all_finite(xi))
        throw NumericalError("symbol evaluation requires finite inputs");

    SymbolValue out;
    if (model.is_det_jump_unit()) return out;  // symbol vanishes identically

    const Vector drift = model.drift_at(tau, x);
    const Matrix q = model.diffusion_at(tau, x);
    out.re = 0.5 * xi.dot(q * xi);
    out.im = -drift.dot(xi);

    const KernelPoint kernel = model.kernel_at(tau, x);
    if (kernel.family != JumpFamily::None) {
        // For space-time lifts the kernel mass sits on {0} x R^d, so only the
        // base frequency block enters the jump integral.
        const Vector xi_eff = model.is_lifted() ? Vector(xi.tail(kernel.dim)) : xi;
        Complex jump;
        if (kernel.family == JumpFamily::CompoundPoisson && !kernel.law.symmetric())
            jump = jump_symbol_quadrature(kernel, xi_eff, model.truncation);
        else
            jump = jump_symbol_closed_form(kernel, xi_eff, model.truncation);
        out.re += jump.real();
        out.im += jump.imag();
    }
    return out;
}

double exponential_integral(const KernelPoint& kernel, const Vector& xi,
                            const TruncationSpec& chi) {
    switch (kernel.family) {
        case JumpFamily::None:
            return 0.0;
        case JumpFamily::SymmetricAlphaStable:
            if (xi.isZero(0.0) || kernel.gamma == 0.0) return 0.0;
            throw HypothesisError(
                "exponential moment integral is infinite for stable kernels");
        case JumpFamily::CompoundPoisson: {
            double mgf = 1.0;
            for (int i = 0; i < xi.size(); ++i) mgf *= kernel.law.mgf1(xi[i]);
            double compensator = 0.0;
            if (!kernel.law.symmetric()) {
                if (kernel.dim != 1)
                    throw NumericalError(
                        "asymmetric exponential integral supported in dimension 1 only");
                const JumpLaw& law = kernel.law;
                const auto [lo, hi] = law_window(law);
                const auto integrand = [&](double y) {
                    return y * chi.chi_radial(std::abs(y)) * gaussian_pdf(y, law.mean, law.sigma);
                };
                compensator = xi[0] * quad::integrate(integrand, lo, hi, 1e-12).value;
            }
            return kernel.lambda * (mgf - 1.0 - compensator);
        }
    }
    return 0.0;
}

// ---- additive right-derivative path -----------------------------------------

SymbolValue symbol_additive(const AdditiveCharacteristics& input, double tau, const Vector& xi,
                            double rel_tol) {
    const auto exponent_increment = [&](double h) -> Complex {
        Complex acc(0.0, 0.0);
        if (input.B) {
            const Vector db = input.B(tau + h) - input.B(tau);
            acc += Complex(0.0, xi.dot(db));
        }
        if (input.C) {
            const Matrix dc = input.C(tau + h) - input.C(tau);
            acc += Complex(-0.5 * xi.dot(dc * xi), 0.0);
        }
        if (input.nu_integral) acc += input.nu_integral(tau + h) - input.nu_integral(tau);
        return acc;
    };

    // One-sided difference quotients at h_k = 2^-k with Richardson
    // extrapolation (ratio 2 cancels the O(h^j) terms successively).
    constexpr int kMaxLevels = 30;
    std::vector<std::vector<Complex>> table;
    Complex best(0.0, 0.0);
    double best_delta = std::numeric_limits<double>::infinity();
    int grew = 0;
    for (int k = 0; k < kMaxLevels; ++k) {
        const double h = std::ldexp(1.0, -k);
        std::vector<Complex> row(1, exponent_increment(h) / h);
        for (size_t j = 1; j <= table.size() && j < 12; ++j) {
            const double factor = std::ldexp(1.0, static_cast<int>(j));  // 2^j
            row.push_back((factor * row[j - 1] - table.back()[j - 1]) / (factor - 1.0));
        }
        if (!table.empty()) {
            const Complex current = row.back();
            const Complex previous = table.back().back();
            const double delta = std::abs(current - previous);
            const double scale = std::max(1.0, std::abs(current));
            if (delta <= rel_tol * scale) {
                SymbolValue out;
                const Complex p = -current;
                out.re = p.real();
                out.im = p.imag();
                return out;
            }
            if (delta < best_delta) {
                best_delta = delta;
                best = current;
                grew = 0;
            } else if (++grew >= 4 && k >= 12) {
                break;  // cancellation noise dominates; no convergence in sight
            }
        }
        table.push_back(std::move(row));
    }
    std::ostringstream os;
    os << "right derivative does not exist: difference quotients did not converge "
       << "(best successive delta " << best_delta << ", value " << best << ")";
    throw NumericalError(os.str());
}

// ---- growth and sector constants --------------------------------------------

double kappa_from_c0(double c0) {
    if (c0 < 0.0) throw HypothesisError("sector constant c0 must be >= 0");
    if (c0 == 0.0) return 1.0 / (2.0 * kPi);  // arctan(inf) = pi/2
    return 1.0 / (4.0 * std::atan(1.0 / (2.0 * c0)));
}

SweepGrid SweepGrid::regular(int dim, double s_max, int s_points, double x_half_width,
                             int x_points, std::vector<double> xi_magnitudes) {
    SweepGrid g;
    for (int i = 0; i < s_points; ++i)
        g.s.push_back(s_points == 1 ? 0.0 : s_max * i / (s_points - 1));
    std::vector<int> idx(dim, 0);
    for (;;) {
        Vector x(dim);
        for (int i = 0; i < dim; ++i) {
            const double t = x_points == 1 ? 0.5 : static_cast<double>(idx[i]) / (x_points - 1);
            x[i] = -x_half_width + 2.0 * x_half_width * t;
        }
        g.x.push_back(x);
        int pos = dim - 1;
        while (pos >= 0 && ++idx[pos] == x_points) idx[pos--] = 0;
        if (pos < 0) break;
    }
    for (double m : xi_magnitudes)
        for (int axis = 0; axis < dim; ++axis)
            for (double sign : {1.0, -1.0}) {
                Vector xi = Vector::Zero(dim);
                xi[axis] = sign * m;
                g.xi.push_back(xi);
            }
    return g;
}

ConditionConstants condition_constants(const ProcessModel& model, const SweepGrid& grid) {
    if (grid.s.empty() || grid.x.empty() || grid.xi.empty())
        throw ParseError("condition_constants requires a non-empty sweep grid");
    ConditionConstants out;
    for (double s : grid.s)
        for (const Vector& x : grid.x)
            for (const Vector& xi : grid.xi) {
                const SymbolValue p = symbol_analytic(model, s, x, xi);
                const double mod = std::hypot(p.re, p.im);
                out.growth_c = std::max(out.growth_c, mod / (1.0 + xi.squaredNorm()));
                if (p.re <= 1e-12) {
                    if (std::abs(p.im) > 1e-12) out.sector_violated = true;
                } else {
                    out.sector_c0 = std::max(out.sector_c0, std::abs(p.im) / p.re);
                }
            }
    if (!out.sector_violated) out.kappa = kappa_from_c0(out.sector_c0);
    return out;
}

}  // namespace nhsym
