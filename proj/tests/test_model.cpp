#include "nhsym/model.hpp"

#include "nhsym/rng.hpp"

#include <doctest.h>

using namespace nhsym;

namespace {
Vector vec1(double v) { return Vector::Constant(1, v); }
}

TEST_CASE("validate_model: constant drift bounds") {
    const ProcessModel m = catalog::pure_drift(2.0);
    const ValidationReport report = validate_model(m, Box::centered(1, 1.0, 1.0));
    CHECK(report.ok());
    CHECK(report.max_drift_norm == doctest::Approx(2.0));
    CHECK(report.max_kernel_integral == 0.0);
}

TEST_CASE("validate_model: additive-bm with sigma^2(t) = t^2 on s in [0,2]") {
    // Q(s) = (sigma^2)'(s) = 2s, maximal at the box edge s = 2.
    const ProcessModel m = catalog::additive_bm({0.0, 0.0, 1.0});
    const ValidationReport report = validate_model(m, Box::centered(1, 2.0, 1.0));
    CHECK(report.ok());
    CHECK(report.max_diffusion_norm == doctest::Approx(4.0));
}

TEST_CASE("validate_model flags indefinite tabulated Q") {
    TabulatedGrid grid;
    grid.axes = {{"s", {0.0, 1.0}}};
    grid.values = {{-0.1, -0.1}};
    ProcessModel m = catalog::additive_bm();
    m.diffusion = CoefficientField::tabulated(FieldShape::Matrix, 1, grid);
    m.tag = CatalogTag::None;
    const ValidationReport report = validate_model(m, Box::centered(1, 1.0, 1.0));
    CHECK_FALSE(report.psd_ok);
    CHECK(report.psd_violation.find("eigenvalue") != std::string::npos);
}

TEST_CASE("validate_model reports non-finite coefficient evaluations") {
    ProcessModel m = catalog::pure_drift(1.0);
    m.drift = CoefficientField::expression(FieldShape::Vector, 1, {"1 / (s - 0.5)"});
    m.tag = CatalogTag::None;
    const ValidationReport report = validate_model(m, Box::centered(1, 1.0, 1.0));
    CHECK_FALSE(report.ok());
    CHECK(report.nonfinite_at.find("s=0.5") != std::string::npos);
}

TEST_CASE("eval_characteristics examples") {
    SUBCASE("additive-bm with unit variance slope") {
        const auto c = eval_characteristics(catalog::additive_bm(), 0.7, vec1(0.0));
        CHECK(c.drift[0] == 0.0);
        CHECK(c.diffusion(0, 0) == doctest::Approx(1.0));
        CHECK(c.kernel.family == JumpFamily::None);
    }
    SUBCASE("compound-poisson with intensity 1 + s") {
        ProcessModel m = catalog::compound_poisson();
        m.jumps.intensity =
            CoefficientField::time_polynomial(FieldShape::Scalar, 1, {{1.0, 1.0}});
        const auto c = eval_characteristics(m, 1.0, vec1(0.0));
        CHECK(c.kernel.lambda == doctest::Approx(2.0));
    }
    SUBCASE("det-jump-unit has empty characteristics") {
        const auto c = eval_characteristics(catalog::det_jump_unit(), 0.3, vec1(5.0));
        CHECK(c.drift[0] == 0.0);
        CHECK(c.diffusion(0, 0) == 0.0);
        CHECK(c.kernel.family == JumpFamily::None);
    }
    CHECK_THROWS_AS(eval_characteristics(catalog::additive_bm(), -1.0, vec1(0.0)),
                    NumericalError);
}

TEST_CASE("space-time lift structure") {
    SUBCASE("pure drift lifts to clock + drift") {
        const ProcessModel lifted = lift_space_time(catalog::pure_drift(2.0));
        CHECK(lifted.dim == 2);
        Vector x(2);
        x << 0.3, 1.0;
        const Vector drift = lifted.drift_at(0.0, x);
        CHECK(drift[0] == doctest::Approx(1.0));
        CHECK(drift[1] == doctest::Approx(2.0));
        CHECK(lifted.diffusion_at(0.0, x).norm() == 0.0);
    }
    SUBCASE("additive-bm lifts to diag(0, Q) read at the clock coordinate") {
        const ProcessModel lifted = lift_space_time(catalog::additive_bm({0.0, 0.0, 1.0}));
        Vector x(2);
        x << 1.5, 0.0;  // clock coordinate 1.5: Q = 2 * 1.5
        const Matrix q = lifted.diffusion_at(7.0, x);  // the s argument is ignored
        CHECK(q(0, 0) == 0.0);
        CHECK(q(0, 1) == 0.0);
        CHECK(q(1, 0) == 0.0);
        CHECK(q(1, 1) == doctest::Approx(3.0));
    }
    CHECK_THROWS_AS(lift_space_time(lift_space_time(catalog::pure_drift())), ParseError);
}

TEST_CASE("truncation shapes: symmetric sandwich on random points") {
    RngStream rng(7, 0);
    for (TruncationShape shape : {TruncationShape::PiecewiseLinear, TruncationShape::SmoothBump}) {
        TruncationSpec spec;
        spec.shape = shape;
        spec.inner_radius = 1.0;
        spec.outer_half_radius = 1.0;
        for (int i = 0; i < 1000; ++i) {
            Vector y(3);
            for (int k = 0; k < 3; ++k) y[k] = 4.0 * (rng.uniform01() - 0.5);
            const double value = spec.chi(y);
            CHECK(value == spec.chi(Vector(-y)));
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
            if (y.norm() <= 1.0) CHECK(value == 1.0);
            if (y.norm() >= 2.0) CHECK(value == 0.0);
        }
    }
    TruncationSpec zero;
    zero.shape = TruncationShape::Zero;
    CHECK(zero.chi_radial(0.1) == 0.0);
    CHECK_THROWS_AS(zero.validate(/*finite_activity=*/false), ParseError);
    CHECK_NOTHROW(zero.validate(/*finite_activity=*/true));
}

TEST_CASE("kernel point closed-form integrals") {
    SUBCASE("stable one-wedge integral matches the direct 1-d computation") {
        // ∫ (1 ∧ y²) k |y|^{-1-a} dy = 2k (1/(2-a) + 1/a), k = gamma^a c_{1,a}.
        const ProcessModel m = catalog::alpha_stable(1.0);
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        const double c = stable_levy_normalizer(1, 1.0);
        CHECK(k.one_wedge_sq_integral() == doctest::Approx(2.0 * c * (1.0 + 1.0)));
        CHECK(k.one_wedge_sq_integral() == doctest::Approx(4.0 / kPi));
    }
    SUBCASE("compound-poisson one-wedge equals lambda E[1 ∧ J²]") {
        const ProcessModel m = catalog::compound_poisson(2.0, {JumpLawKind::TwoPoint, 0, 1, 0.5, 1});
        const KernelPoint k = m.kernel_at(0.0, vec1(0.0));
        CHECK(k.one_wedge_sq_integral() == doctest::Approx(2.0 * 0.25));
    }
    SUBCASE("two-sided exponential one-wedge against numerical integration") {
        JumpLaw law{JumpLawKind::TwoSidedExponential, 0, 1, 1, 2.0};
        // Brute-force Riemann sum of ∫ (1 ∧ y²) rho/2 e^{-rho|y|} dy.
        double acc = 0.0;
        const double dy = 1e-4;
        for (double y = dy / 2; y < 30.0; y += dy)
            acc += 2.0 * std::min(1.0, y * y) * 1.0 * std::exp(-2.0 * y) * dy;
        CHECK(law.one_wedge_sq1() == doctest::Approx(acc).epsilon(1e-3));
    }
}

TEST_CASE("catalog detjump structural invariants") {
    const ProcessModel det = catalog::det_jump_unit();
    CHECK(det.is_det_jump_unit());
    CHECK_NOTHROW(det.validate_structure());
    for (const auto& entry : catalog::all()) CHECK_NOTHROW(entry.model.validate_structure());
}
