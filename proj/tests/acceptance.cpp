// Acceptance suite: one check per criterion, one pass/fail line each, and a
// final determinism pass that re-executes everything and byte-compares the
// canonical numeric transcripts.

#include "nhsym/estimate.hpp"
#include "nhsym/experiment.hpp"
#include "nhsym/indices.hpp"
#include "nhsym/model_io.hpp"
#include "nhsym/verify.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

using namespace nhsym;

namespace {

Vector vec1(double v) { return Vector::Constant(1, v); }

struct CriterionResult {
    bool pass = true;
    std::string detail;
    std::string transcript;  // canonical numeric record for the determinism pass
};

class Recorder {
  public:
    void add(const char* name, double value) {
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%s=%.17g\n", name, value);
        text_ += buffer;
    }
    void note(const std::string& line) { text_ += line + "\n"; }
    const std::string& text() const { return text_; }

  private:
    std::string text_;
};

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

// ---- criterion 1: quadrature vs closed form --------------------------------

CriterionResult criterion_symbol_oracle() {
    CriterionResult result;
    Recorder rec;
    std::vector<ProcessModel> models;
    for (double alpha : {0.5, 1.0, 1.5}) models.push_back(catalog::alpha_stable(alpha));
    models.push_back(catalog::compound_poisson(1.0, {JumpLawKind::Gaussian, 0.0, 1.0, 1, 1}));
    models.push_back(catalog::compound_poisson(1.0, {JumpLawKind::TwoPoint, 0, 1, 1.0, 1}));

    double worst = 0.0;
    for (const ProcessModel& m : models) {
        const KernelPoint kernel = m.kernel_at(0.0, vec1(0.0));
        for (int i = 0; i < 100; ++i) {
            const double magnitude = 0.05 * std::pow(240.0, i / 99.0);
            const double xi = (i % 2 ? -magnitude : magnitude);
            const Complex closed = jump_symbol_closed_form(kernel, vec1(xi), m.truncation);
            const Complex quad = jump_symbol_quadrature(kernel, vec1(xi), m.truncation);
            const double rel = std::abs(quad - closed) / std::abs(closed);
            worst = std::max(worst, rel);
        }
    }
    rec.add("worst_relative_error", worst);
    result.pass = worst <= 1e-6;
    result.detail = "max relative error " + fmt(worst) + " (tolerance 1e-6)";
    result.transcript = rec.text();
    return result;
}

// ---- criterion 2: space-time lift identity ----------------------------------

CriterionResult criterion_lift_identity() {
    CriterionResult result;
    Recorder rec;
    double worst = 0.0;
    const std::vector<double> taus = {0.0, 0.5, 1.0, 1.5, 2.0};
    const std::vector<double> xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const std::vector<double> xi0s = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const std::vector<double> xi1s = {-2.0, -0.5, 0.5, 1.0, 2.0};
    for (const auto& entry : catalog::all()) {
        const ProcessModel lifted = lift_space_time(entry.model);
        for (double tau : taus)
            for (double x : xs)
                for (double xi0 : xi0s)
                    for (double xi1 : xi1s) {
                        Vector xhat(2), xihat(2);
                        xhat << tau, x;
                        xihat << xi0, xi1;
                        const SymbolValue lift_p = symbol_analytic(lifted, 0.0, xhat, xihat);
                        const SymbolValue base_p =
                            symbol_analytic(entry.model, tau, vec1(x), vec1(xi1));
                        worst = std::max(worst, std::abs(lift_p.re - base_p.re));
                        worst = std::max(worst, std::abs(lift_p.im - (-xi0 + base_p.im)));
                    }
    }
    rec.add("worst_absolute_error", worst);
    result.pass = worst <= 1e-10;
    result.detail = "max |p_lift - (-i xi0 + p)| = " + fmt(worst) + " (tolerance 1e-10)";
    result.transcript = rec.text();
    return result;
}

// ---- criterion 3: estimator consistency --------------------------------------

CriterionResult criterion_estimator_consistency() {
    CriterionResult result;
    Recorder rec;
    // sigma^2(t) = t + t^2/2, so p(tau,x,xi) = xi^2 (1+tau) / 2.
    const ProcessModel m = catalog::additive_bm({0.0, 1.0, 0.5});
    bool pass = true;
    std::string detail;
    for (double tau : {0.0, 1.0})
        for (double xi : {1.0, 2.0}) {
            EstimatorConfig cfg;
            cfg.paths_per_lag = 100000;
            cfg.seed = 20240601;
            const SymbolEstimate est = estimate_symbol(m, tau, vec1(0.0), vec1(xi), cfg);
            const double exact = 0.5 * xi * xi * (1.0 + tau);
            const double err = std::abs(est.value.value() - Complex(exact, 0.0));
            const double budget = *est.value.confidence_radius + 0.05 * exact;
            rec.add("estimate_re", est.value.re);
            rec.add("estimate_im", est.value.im);
            rec.add("radius", *est.value.confidence_radius);
            pass = pass && err <= budget;
            if (detail.empty() || err > budget)
                detail = "tau=" + fmt(tau) + " xi=" + fmt(xi) + ": |err| " + fmt(err) +
                         " vs budget " + fmt(budget);
        }
    {
        EstimatorConfig cfg;
        cfg.paths_per_lag = 100000;
        cfg.seed = 20240601;
        const RadiusIndependenceReport rep =
            radius_independence_check(m, 0.0, vec1(0.0), vec1(2.0), cfg, 1.0, 2.0);
        rec.add("radius_disagreement", rep.disagreement);
        rec.add("radius_combined", rep.combined_radius);
        pass = pass && rep.consistent;
        if (!rep.consistent) detail += "; radius independence violated";
    }
    result.pass = pass;
    result.detail = detail;
    result.transcript = rec.text();
    return result;
}

// ---- criterion 4: deterministic counterexample --------------------------------

CriterionResult criterion_det_counterexample() {
    CriterionResult result;
    Recorder rec;
    bool exact = true;
    for (double tau : {0.0, 0.5})
        for (double xi : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            EstimatorConfig cfg;
            cfg.paths_per_lag = 200;
            cfg.seed = 11;
            const SymbolEstimate est =
                estimate_symbol(catalog::det_jump_unit(), tau, vec1(0.0), vec1(xi), cfg);
            rec.add("p_re", est.value.re);
            rec.add("p_im", est.value.im);
            exact = exact && est.value.re == 0.0 && est.value.im == 0.0 &&
                    *est.value.confidence_radius == 0.0;
        }
    result.pass = exact;
    result.detail = exact ? "estimates are exactly zero" : "nonzero estimate found";
    result.transcript = rec.text();
    return result;
}

// ---- criterion 5: index recovery ----------------------------------------------

CriterionResult criterion_index_recovery() {
    CriterionResult result;
    Recorder rec;
    bool pass = true;
    std::string detail;
    const auto check_model = [&](const ProcessModel& model, double alpha,
                                 const std::string& name) {
        const IndexReport report =
            compute_index_report(model, 0.0, vec1(0.0), IndexConfig::defaults(1));
        rec.add((name + ".beta0").c_str(), report.beta0);
        rec.add((name + ".beta_inf").c_str(), report.beta_inf);
        bool ok = std::abs(report.beta0 - alpha) <= 0.1 &&
                  std::abs(report.beta_inf - alpha) <= 0.1;
        if (report.start_deltas_defined) {
            rec.add((name + ".delta0").c_str(), report.delta0);
            rec.add((name + ".delta_inf").c_str(), report.delta_inf);
            ok = ok && std::abs(report.delta0 - alpha) <= 0.1 &&
                 std::abs(report.delta_inf - alpha) <= 0.1;
        }
        pass = pass && ok;
        if (!ok) detail += name + " off target; ";
    };
    for (double alpha : {0.5, 1.0, 1.5})
        check_model(catalog::alpha_stable(alpha), alpha, "stable-" + fmt(alpha));
    check_model(catalog::additive_bm(), 2.0, "additive-bm");
    result.pass = pass;
    if (detail.empty()) detail = "beta and delta families within 0.1 of alpha";
    result.detail = detail;
    result.transcript = rec.text();
    return result;
}

// ---- criteria 6/7: maximal inequalities ----------------------------------------

CriterionResult criterion_upper_inequality() {
    CriterionResult result;
    Recorder rec;
    bool pass = true;
    std::string detail;

    {
        const ProcessModel m = catalog::additive_bm();
        MaxInequalityConfig cfg;
        cfg.sampling.paths = 100000;
        cfg.sampling.seed = 60601;
        const InequalityReport report = check_max_inequality_upper(m, 0.0, vec1(0.0), cfg);
        rec.add("bm.fitted", report.fitted_constant);
        rec.add("bm.fitted_doubled", report.fitted_constant_doubled);
        pass = pass && report.all_pass && report.stable_under_doubling &&
               std::isfinite(report.fitted_constant) && report.fitted_constant > 0.0;
        double worst_gap = 0.0;
        for (const auto& cell : report.cells) {
            const double oracle_p = oracle::bm_exit_prob(cell.radius, cell.t);
            const double gap = std::abs(cell.lhs - oracle_p);
            const double allowed = std::max(cell.lhs_radius, 1e-9);  // 3 binomial SE
            worst_gap = std::max(worst_gap, gap / allowed);
            rec.add("bm.cell_lhs", cell.lhs);
        }
        rec.add("bm.worst_oracle_gap", worst_gap);
        pass = pass && worst_gap <= 1.0;
        detail = "bm fitted " + fmt(report.fitted_constant) + " vs doubled " +
                 fmt(report.fitted_constant_doubled) + ", oracle gap " + fmt(worst_gap) +
                 "x(3se)";
    }
    {
        const ProcessModel m = catalog::alpha_stable(1.0);
        MaxInequalityConfig cfg;
        cfg.sampling.paths = 100000;
        cfg.sampling.seed = 60602;
        const InequalityReport report = check_max_inequality_upper(m, 0.0, vec1(0.0), cfg);
        rec.add("stable.fitted", report.fitted_constant);
        rec.add("stable.fitted_doubled", report.fitted_constant_doubled);
        pass = pass && report.all_pass && report.stable_under_doubling &&
               report.fitted_constant > 0.0;
        detail += "; stable fitted " + fmt(report.fitted_constant) + " vs doubled " +
                  fmt(report.fitted_constant_doubled);
    }
    result.pass = pass;
    result.detail = detail;
    result.transcript = rec.text();
    return result;
}

CriterionResult criterion_lower_inequality() {
    CriterionResult result;
    Recorder rec;
    const ProcessModel m = catalog::additive_bm();
    MaxInequalityConfig cfg;
    cfg.t_grid = {0.5, 1.0, 2.0, 4.0};
    cfg.sampling.paths = 100000;
    cfg.sampling.seed = 70701;
    const InequalityReport report = check_max_inequality_lower(m, 0.0, vec1(0.0), cfg);
    rec.add("fitted", report.fitted_constant);
    rec.add("fitted_doubled", report.fitted_constant_doubled);
    int informative = 0;
    bool informative_pass = true;
    for (const auto& cell : report.cells) {
        rec.add("cell_lhs", cell.lhs);
        rec.add("cell_rhs", cell.rhs);
        if (cell.rhs <= 1.0) {
            ++informative;
            informative_pass = informative_pass && cell.pass;
        }
    }
    result.pass = informative > 0 && informative_pass && report.all_pass &&
                  report.stable_under_doubling;
    result.detail = std::to_string(informative) + " informative cells (RHS <= 1) all pass, " +
                    "fitted " + fmt(report.fitted_constant) + " vs doubled " +
                    fmt(report.fitted_constant_doubled);
    result.transcript = rec.text();
    return result;
}

// ---- criterion 8: scaling dichotomy --------------------------------------------

CriterionResult criterion_scaling() {
    CriterionResult result;
    Recorder rec;
    const ProcessModel m = catalog::additive_bm();
    bool pass = true;
    std::string detail;
    const auto run = [&](double lambda, TimeLimit dir, const std::string& expected) {
        ScalingConfig cfg;
        cfg.lambda = lambda;
        cfg.direction = dir;
        cfg.paths = 2000;
        cfg.seed = 80801;
        const ScalingReport report = asymptotic_scaling(m, 0.0, vec1(0.0), cfg);
        for (const auto& q : report.quantiles) {
            rec.add("q10", q[0]);
            rec.add("q90", q[2]);
        }
        rec.note("verdict " + report.verdict);
        const bool ok = report.verdict == expected;
        pass = pass && ok;
        detail += (dir == TimeLimit::TToZero ? "t->0 " : "t->inf ") + std::string("lambda=") +
                  fmt(lambda) + ": " + report.verdict + (ok ? "" : " (expected " + expected + ")") +
                  "; ";
    };
    // beta = delta = 2: above the index the scaled sup collapses as t -> 0,
    // below it blows up; mirrored directions as t -> infinity.
    run(3.0, TimeLimit::TToZero, "->0");
    run(1.0, TimeLimit::TToZero, "->inf");
    run(1.0, TimeLimit::TToInfinity, "->0");
    run(3.0, TimeLimit::TToInfinity, "->inf");
    result.pass = pass;
    result.detail = detail;
    result.transcript = rec.text();
    return result;
}

// ---- criterion 9: p-variation threshold ------------------------------------------

CriterionResult criterion_pvariation() {
    CriterionResult result;
    Recorder rec;
    bool pass = true;
    std::string detail;
    const auto flip_scan = [&](const ProcessModel& model, double target,
                               const std::string& name) {
        double flip = -1.0;
        for (double p = 0.25; p <= 3.01; p += 0.25) {
            PVariationConfig cfg;
            cfg.p = p;
            cfg.depth = 14;
            cfg.paths = 200;
            cfg.seed = 90901;
            const PVariationReport report = p_variation(model, 0.0, vec1(0.0), cfg);
            rec.note(name + " p=" + fmt(p) + " " + report.verdict);
            rec.add((name + ".last_sum").c_str(), report.level_sums.back());
            if (flip < 0.0 && report.verdict == "bounded") flip = p;
        }
        const bool ok = flip > 0.0 && std::abs(flip - target) <= 0.25;
        pass = pass && ok;
        detail += name + " flips at p=" + fmt(flip) + " (target " + fmt(target) + "); ";
    };
    flip_scan(catalog::additive_bm(), 2.0, "bm");
    flip_scan(catalog::alpha_stable(1.0), 1.0, "stable");
    result.pass = pass;
    result.detail = detail;
    result.transcript = rec.text();
    return result;
}

// ---- criterion 10: exponential moment bound ----------------------------------------

CriterionResult criterion_expmoment() {
    CriterionResult result;
    Recorder rec;
    ProcessModel m = catalog::compound_poisson();  // unit two-point jumps
    m.truncation.shape = TruncationShape::Zero;
    ExpMomentConfig cfg;
    cfg.xi = vec1(1.0);
    cfg.lag = 1.0;
    cfg.paths = 100000;
    cfg.steps = 64;
    cfg.seed = 101010;
    const ExpMomentReport report = exponential_moment_check(m, 0.0, vec1(0.0), cfg);
    const double exact = std::exp(std::cosh(1.0) - 1.0);
    rec.add("mean", report.empirical_mean);
    rec.add("stderr", report.std_error);
    rec.add("bound", report.bound);
    const bool match = std::abs(report.empirical_mean - exact) <= 3.0 * report.std_error;
    result.pass = match && report.pass;
    result.detail = "mean " + fmt(report.empirical_mean) + " vs exact " + fmt(exact) +
                    " (3se " + fmt(3.0 * report.std_error) + "), bound " + fmt(report.bound);
    result.transcript = rec.text();
    return result;
}

struct Criterion {
    int number;
    std::string name;
    std::function<CriterionResult()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "symbol oracle agreement (quadrature vs closed form)", criterion_symbol_oracle},
        {2, "space-time lift identity", criterion_lift_identity},
        {3, "estimator consistency and radius independence", criterion_estimator_consistency},
        {4, "deterministic counterexample estimates zero", criterion_det_counterexample},
        {5, "index recovery", criterion_index_recovery},
        {6, "upper maximal inequality structure", criterion_upper_inequality},
        {7, "lower maximal inequality", criterion_lower_inequality},
        {8, "scaling dichotomy", criterion_scaling},
        {9, "p-variation threshold", criterion_pvariation},
        {10, "exponential moment bound", criterion_expmoment},
    };

    bool all_pass = true;
    std::vector<std::string> transcripts;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        transcripts.push_back(result.transcript);
        all_pass = all_pass && result.pass;
        std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n", result.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), result.detail.c_str(), seconds);
        std::fflush(stdout);
    }

    // Criterion 11: re-execute everything and compare the numeric transcripts.
    {
        const auto start = std::chrono::steady_clock::now();
        bool identical = true;
        std::string which;
        for (size_t i = 0; i < criteria.size(); ++i) {
            CriterionResult again;
            try {
                again = criteria[i].run();
            } catch (const std::exception&) {
                identical = false;
            }
            if (again.transcript != transcripts[i]) {
                identical = false;
                which += std::to_string(criteria[i].number) + " ";
            }
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_pass = all_pass && identical;
        std::printf("[%s] criterion 11: determinism — %s (%.1fs)\n",
                    identical ? "PASS" : "FAIL",
                    identical ? "all criteria byte-identical across two executions"
                              : ("transcripts differ for criteria: " + which).c_str(),
                    seconds);
    }

    return all_pass ? 0 : 1;
}
