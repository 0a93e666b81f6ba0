#include "nhsym/symbol.hpp"

#include "nhsym/indices.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nhsym;

namespace {
Vector vec1(double v) { return Vector::Constant(1, v); }
}

TEST_CASE("symbol closed forms on the catalog") {
    SUBCASE("pure drift: only the drift term survives") {
        const SymbolValue p = symbol_analytic(catalog::pure_drift(2.0), 0.0, vec1(0.0), vec1(3.0));
        CHECK(p.re == doctest::Approx(0.0));
        CHECK(p.im == doctest::Approx(-6.0));
        CHECK_FALSE(p.confidence_radius.has_value());
    }
    SUBCASE("stable normalization gives gamma^a |xi|^a") {
        const SymbolValue p =
            symbol_analytic(catalog::alpha_stable(1.5), 0.0, vec1(0.0), vec1(2.0));
        CHECK(p.re == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
        CHECK(p.im == doctest::Approx(0.0));
    }
    SUBCASE("compound poisson two-point at xi = pi") {
        // Direct integral against the two-point law: the chi compensation is
        // odd and cancels; p = 1 - cos(pi) = 2.
        const SymbolValue p =
            symbol_analytic(catalog::compound_poisson(), 0.0, vec1(0.0), vec1(kPi));
        CHECK(p.re == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(p.im == doctest::Approx(0.0));
    }
    SUBCASE("xi = 0 kills every term") {
        for (const auto& entry : catalog::all()) {
            const Vector zero = Vector::Zero(entry.model.dim);
            const SymbolValue p = symbol_analytic(entry.model, 0.5, zero, zero);
            CHECK(p.re == 0.0);
            CHECK(p.im == 0.0);
        }
    }
    SUBCASE("det-jump-unit symbol vanishes identically") {
        const SymbolValue p =
            symbol_analytic(catalog::det_jump_unit(), 0.9, vec1(4.0), vec1(7.0));
        CHECK(p.re == 0.0);
        CHECK(p.im == 0.0);
    }
}

TEST_CASE("Levy quadrature against closed forms") {
    SUBCASE("stable families across a xi-grid") {
        for (double alpha : {0.5, 1.0, 1.5}) {
            const ProcessModel m = catalog::alpha_stable(alpha);
            const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
            for (double xi = 0.1; xi <= 10.0; xi *= 1.8) {
                const Complex q = jump_symbol_quadrature(k, vec1(xi), m.truncation);
                const Complex closed = jump_symbol_closed_form(k, vec1(xi), m.truncation);
                CHECK(std::abs(q - closed) <= 1e-6 * std::abs(closed));
            }
        }
    }
    SUBCASE("gaussian compound poisson with zero truncation: 1 - e^{-1/2}") {
        ProcessModel m = catalog::compound_poisson(1.0, {JumpLawKind::Gaussian, 0.0, 1.0, 1, 1});
        m.truncation.shape = TruncationShape::Zero;
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        const Complex q = jump_symbol_quadrature(k, vec1(1.0), m.truncation);
        CHECK(q.real() == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-8));
        CHECK(q.imag() == doctest::Approx(0.0));
    }
    SUBCASE("empty kernel integrates to zero exactly") {
        const ProcessModel m = catalog::pure_drift();
        const Complex q =
            jump_symbol_quadrature(m.kernel_at(0.0, vec1(0.0)), vec1(3.0), m.truncation);
        CHECK(q == Complex(0.0, 0.0));
    }
    SUBCASE("asymmetric gaussian law routes through quadrature consistently") {
        // mean != 0: checked against a brute-force Riemann sum.
        ProcessModel m = catalog::compound_poisson(1.0, {JumpLawKind::Gaussian, 0.7, 0.5, 1, 1});
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        const double xi = 1.3;
        Complex brute(0.0, 0.0);
        const double dy = 1e-4;
        for (double y = -8.0; y < 8.0; y += dy) {
            const double yc = y + dy / 2;
            const double pdf = std::exp(-0.5 * (yc - 0.7) * (yc - 0.7) / 0.25) /
                               (0.5 * std::sqrt(2.0 * kPi));
            const Complex integrand = std::exp(Complex(0.0, yc * xi)) - 1.0 -
                                      Complex(0.0, yc * xi * m.truncation.chi_radial(std::abs(yc)));
            brute += integrand * pdf * dy;
        }
        const Complex q = jump_symbol_quadrature(k, vec1(xi), m.truncation);
        CHECK(q.real() == doctest::Approx(-brute.real()).epsilon(1e-6));
        CHECK(q.imag() == doctest::Approx(-brute.imag()).epsilon(1e-6));
        const SymbolValue p = symbol_analytic(m, 0.0, vec1(0.0), vec1(xi));
        CHECK(p.re == doctest::Approx(-brute.real()).epsilon(1e-6));
    }
}

TEST_CASE("stable head constant: two algebraic routes agree") {
    for (double alpha : {0.3, 0.5, 0.9, 1.0, 1.1, 1.5, 1.9}) {
        CHECK(stable_one_minus_cos_integral(alpha) ==
              doctest::Approx(oracle::stable_head_constant_gamma(alpha)).epsilon(1e-10));
    }
    CHECK(stable_one_minus_cos_integral(0.5) ==
          doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("symbol invariants on grids") {
    std::vector<ProcessModel> models;
    for (const auto& entry : catalog::all()) models.push_back(entry.model);
    // A model with every term active.
    models.push_back(catalog::jump_diffusion());

    for (const auto& m : models) {
        if (m.dim != 1) continue;
        for (double tau : {0.0, 0.7, 2.0})
            for (double x : {-1.0, 0.0, 2.5})
                for (double xi : {0.3, 1.0, 4.0}) {
                    const SymbolValue plus = symbol_analytic(m, tau, vec1(x), vec1(xi));
                    const SymbolValue minus = symbol_analytic(m, tau, vec1(x), vec1(-xi));
                    // Hermitian symmetry p(-xi) = conj p(xi).
                    CHECK(plus.re == doctest::Approx(minus.re).epsilon(1e-10));
                    CHECK(plus.im == doctest::Approx(-minus.im).epsilon(1e-10));
                    // Nonnegative real part under symmetric truncation.
                    CHECK(plus.re >= -1e-10);
                }
    }
}

TEST_CASE("space-time lift symbol identity on the catalog") {
    for (const auto& entry : catalog::all()) {
        const ProcessModel& base = entry.model;
        const ProcessModel lifted = lift_space_time(base);
        for (double tau : {0.0, 0.5, 1.5})
            for (double x : {-1.0, 0.5})
                for (double xi0 : {-2.0, 0.0, 3.0})
                    for (double xi1 : {-1.0, 0.4, 2.0}) {
                        Vector xhat(2), xihat(2);
                        xhat << tau, x;
                        xihat << xi0, xi1;
                        const SymbolValue lift_p = symbol_analytic(lifted, 0.0, xhat, xihat);
                        const SymbolValue base_p = symbol_analytic(base, tau, vec1(x), vec1(xi1));
                        CHECK(std::abs(lift_p.re - base_p.re) <= 1e-10);
                        CHECK(std::abs(lift_p.im - (-xi0 + base_p.im)) <= 1e-10);
                    }
    }
}

TEST_CASE("additive right-derivative symbol") {
    SUBCASE("variance function t^2 at tau = 1.5, xi = 2") {
        // One-sided difference-quotient oracle: (sigma^2(tau+h)-sigma^2(tau))/h
        // at h = 1e-6 gives 3.000001; p = xi^2/2 * 3.
        AdditiveCharacteristics input;
        input.C = [](double t) { return Matrix::Constant(1, 1, t * t); };
        const SymbolValue p = symbol_additive(input, 1.5, vec1(2.0));
        CHECK(p.re == doctest::Approx(6.0).epsilon(1e-7));
        CHECK(p.im == doctest::Approx(0.0));
    }
    SUBCASE("unit variance slope gives xi^2/2") {
        AdditiveCharacteristics input;
        input.C = [](double t) { return Matrix::Constant(1, 1, t); };
        const SymbolValue p = symbol_additive(input, 0.3, vec1(1.0));
        CHECK(p.re == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("kinked drift uses the right derivative") {
        AdditiveCharacteristics input;
        input.B = [](double t) { return Vector::Constant(1, std::max(t - 1.0, 0.0)); };
        const SymbolValue p = symbol_additive(input, 1.0, vec1(1.0));
        CHECK(p.im == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(p.re == doctest::Approx(0.0));
    }
    SUBCASE("jump integral term enters with the Thm-2.8 sign") {
        // nu-integral(t) = t * (cos(xi) - 1) for a unit-rate two-point law:
        // p = -(d/dt) = 1 - cos(xi).
        AdditiveCharacteristics input;
        const double xi = kPi / 3.0;
        input.nu_integral = [xi](double t) { return Complex(t * (std::cos(xi) - 1.0), 0.0); };
        const SymbolValue p = symbol_additive(input, 0.2, vec1(xi));
        CHECK(p.re == doctest::Approx(1.0 - std::cos(xi)).epsilon(1e-9));
    }
    SUBCASE("square-root cusp has no right derivative") {
        AdditiveCharacteristics input;
        input.C = [](double t) { return Matrix::Constant(1, 1, std::sqrt(std::max(t - 1.0, 0.0))); };
        CHECK_THROWS_AS(symbol_additive(input, 1.0, vec1(1.0)), NumericalError);
    }
}

TEST_CASE("condition constants and kappa") {
    SUBCASE("kappa formula") {
        CHECK(kappa_from_c0(0.0) == doctest::Approx(1.0 / (2.0 * kPi)));
        CHECK(kappa_from_c0(0.5) == doctest::Approx(1.0 / kPi));  // arctan(1) = pi/4
        // Strictly decreasing in c0.
        double prev = kappa_from_c0(0.0);
        for (double c0 : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
            const double k = kappa_from_c0(c0);
            CHECK(k < prev);
            prev = k;
        }
    }
    SUBCASE("symmetric model: c0 = 0") {
        const ConditionConstants c =
            condition_constants(catalog::additive_bm(), SweepGrid::regular(1, 4.0, 5, 2.0, 3));
        CHECK_FALSE(c.sector_violated);
        CHECK(c.sector_c0 == 0.0);
        CHECK(c.kappa == doctest::Approx(1.0 / (2.0 * kPi)));
        CHECK(c.growth_c == doctest::Approx(0.5 * 16.0 / (1.0 + 64.0)));  // max at |xi| = 8
    }
    SUBCASE("pure drift violates the sector condition") {
        const ConditionConstants c =
            condition_constants(catalog::pure_drift(), SweepGrid::regular(1, 4.0, 5, 2.0, 3));
        CHECK(c.sector_violated);
    }
    SUBCASE("drift plus diffusion has finite c0") {
        const ConditionConstants c = condition_constants(
            catalog::jump_diffusion(), SweepGrid::regular(1, 4.0, 5, 2.0, 3));
        CHECK_FALSE(c.sector_violated);
        CHECK(c.sector_c0 > 0.0);
        CHECK(c.kappa < 1.0 / (2.0 * kPi));
    }
}

TEST_CASE("exponential integrals per law") {
    TruncationSpec chi;  // default piecewise linear r=1, R=1
    TruncationSpec none;
    none.shape = TruncationShape::Zero;

    SUBCASE("two-point law: cosh - 1, chi-independent by symmetry") {
        const ProcessModel m = catalog::compound_poisson();
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        CHECK(exponential_integral(k, vec1(1.0), none) ==
              doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-12));
        CHECK(exponential_integral(k, vec1(1.0), chi) ==
              doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-12));
    }
    SUBCASE("centered gaussian law") {
        const ProcessModel m =
            catalog::compound_poisson(2.0, {JumpLawKind::Gaussian, 0.0, 1.0, 1, 1});
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        CHECK(exponential_integral(k, vec1(1.0), chi) ==
              doctest::Approx(2.0 * (std::exp(0.5) - 1.0)).epsilon(1e-12));
    }
    SUBCASE("stable kernels have no exponential moment") {
        const ProcessModel m = catalog::alpha_stable(1.0);
        CHECK_THROWS_AS(exponential_integral(m.kernel_at(0.0, vec1(0.0)), vec1(1.0), chi),
                        HypothesisError);
    }
    SUBCASE("two-sided exponential beyond its abscissa") {
        const ProcessModel m =
            catalog::compound_poisson(1.0, {JumpLawKind::TwoSidedExponential, 0, 1, 1, 1.0});
        CHECK_THROWS_AS(exponential_integral(m.kernel_at(0.0, vec1(0.0)), vec1(1.0), chi),
                        HypothesisError);
        CHECK(exponential_integral(m.kernel_at(0.0, vec1(0.0)), vec1(0.5), chi) ==
              doctest::Approx(1.0 / (1.0 - 0.25) - 1.0).epsilon(1e-12));
    }
}
