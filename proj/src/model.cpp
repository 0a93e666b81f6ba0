#include "nhsym/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace nhsym {

std::string catalog_tag_name(CatalogTag tag) {
    switch (tag) {
        case CatalogTag::None: return "";
        case CatalogTag::AdditiveBm: return "additive-bm";
        case CatalogTag::PureDrift: return "pure-drift";
        case CatalogTag::AlphaStableLevy: return "alpha-stable-levy";
        case CatalogTag::CompoundPoisson: return "compound-poisson";
        case CatalogTag::JumpDiffusion: return "jump-diffusion";
        case CatalogTag::DetJumpUnit: return "det-jump-unit";
    }
    return "";
}

std::optional<CatalogTag> catalog_tag_from_name(const std::string& name) {
    for (CatalogTag tag : {CatalogTag::AdditiveBm, CatalogTag::PureDrift,
                           CatalogTag::AlphaStableLevy, CatalogTag::CompoundPoisson,
                           CatalogTag::JumpDiffusion, CatalogTag::DetJumpUnit})
        if (catalog_tag_name(tag) == name) return tag;
    return std::nullopt;
}

bool ProcessModel::is_det_jump_unit() const { return tag == CatalogTag::DetJumpUnit; }

Vector ProcessModel::drift_at(double s, const Vector& x) const {
    if (lifted_from) {
        const ProcessModel& base = *lifted_from;
        Vector out(dim);
        out[0] = 1.0;
        out.tail(base.dim) = base.drift_at(x[0], x.tail(base.dim));
        return out;
    }
    return drift.eval_vector(s, x);
}

Matrix ProcessModel::diffusion_at(double s, const Vector& x) const {
    if (lifted_from) {
        const ProcessModel& base = *lifted_from;
        Matrix out = Matrix::Zero(dim, dim);
        out.bottomRightCorner(base.dim, base.dim) = base.diffusion_at(x[0], x.tail(base.dim));
        return out;
    }
    return diffusion.eval_matrix(s, x);
}

KernelPoint ProcessModel::kernel_at(double s, const Vector& x) const {
    if (lifted_from) {
        const ProcessModel& base = *lifted_from;
        KernelPoint k = base.kernel_at(x[0], x.tail(base.dim));
        // Mass lives on {0} x R^d; the handle keeps the base dimension so
        // closed-form queries refer to the R^d factor.
        return k;
    }
    KernelPoint k;
    k.family = jumps.family;
    k.dim = dim;
    if (jumps.family == JumpFamily::CompoundPoisson) {
        k.lambda = jumps.intensity.eval_scalar(s, x);
        if (!(k.lambda >= 0.0) || !std::isfinite(k.lambda))
            throw NumericalError("compound-poisson intensity is negative or non-finite at s=" +
                                 std::to_string(s));
        k.law = jumps.law;
    } else if (jumps.family == JumpFamily::SymmetricAlphaStable) {
        k.alpha = jumps.alpha;
        k.gamma = jumps.scale.eval_scalar(s, x);
        if (!(k.gamma >= 0.0) || !std::isfinite(k.gamma))
            throw NumericalError("stable scale is negative or non-finite at s=" +
                                 std::to_string(s));
    }
    return k;
}

bool ProcessModel::coefficients_state_dependent() const {
    if (lifted_from) return true;  // coefficients read the clock coordinate
    bool dep = drift.state_dependent() || diffusion.state_dependent();
    if (jumps.family == JumpFamily::CompoundPoisson) dep = dep || jumps.intensity.state_dependent();
    if (jumps.family == JumpFamily::SymmetricAlphaStable) dep = dep || jumps.scale.state_dependent();
    return dep;
}

bool ProcessModel::has_diffusion() const {
    if (lifted_from) return lifted_from->has_diffusion();
    return !diffusion.is_zero();
}

void ProcessModel::validate_structure() const {
    if (dim < 1) throw ParseError("model dimension must be >= 1");
    if (drift.shape() != FieldShape::Vector || drift.dim() != dim)
        throw ParseError("drift must be a vector field of the model dimension");
    if (diffusion.shape() != FieldShape::Matrix || diffusion.dim() != dim)
        throw ParseError("diffusion must be a matrix field of the model dimension");
    jumps.validate(dim);
    truncation.validate(jumps.finite_activity());
    if (tag == CatalogTag::DetJumpUnit) {
        if (dim != 1 || !drift.is_zero() || !diffusion.is_zero() ||
            jumps.family != JumpFamily::None)
            throw ParseError("det-jump-unit requires d=1, zero drift/diffusion and no kernel");
    }
}

Characteristics eval_characteristics(const ProcessModel& model, double s, const Vector& x) {
    if (s < 0.0) throw NumericalError("eval_characteristics requires s >= 0");
    if (!all_finite(x)) throw NumericalError("eval_characteristics requires finite state");
    Characteristics c{model.drift_at(s, x), model.diffusion_at(s, x), model.kernel_at(s, x)};
    return c;
}

Box Box::centered(int dim, double s_max, double half_width) {
    Box b;
    b.s_min = 0.0;
    b.s_max = s_max;
    b.x_min = Vector::Constant(dim, -half_width);
    b.x_max = Vector::Constant(dim, half_width);
    return b;
}

namespace {

std::string point_string(double s, const Vector& x) {
    std::ostringstream os;
    os << "(s=" << s << ", x=[";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << "])";
    return os.str();
}

}  // namespace

ValidationReport validate_model(const ProcessModel& model, const Box& box, int s_points,
                                int x_points) {
    model.validate_structure();
    if (!(box.s_max >= box.s_min) || box.x_min.size() != model.dim ||
        box.x_max.size() != model.dim)
        throw ParseError("validation box is empty or has the wrong dimension");

    ValidationReport report;

    // Regular grid over the box; iterate x as a mixed-radix counter.
    const int d = model.dim;
    std::vector<int> idx(d, 0);
    const auto x_at = [&](const std::vector<int>& ix) {
        Vector x(d);
        for (int i = 0; i < d; ++i) {
            const double t = x_points == 1 ? 0.0 : static_cast<double>(ix[i]) / (x_points - 1);
            x[i] = box.x_min[i] + t * (box.x_max[i] - box.x_min[i]);
        }
        return x;
    };

    for (int si = 0; si < s_points; ++si) {
        const double s = s_points == 1
                             ? box.s_min
                             : box.s_min + (box.s_max - box.s_min) * si / (s_points - 1);
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            const Vector x = x_at(idx);
            try {
                const Characteristics c = eval_characteristics(model, s, x);
                if (!all_finite(c.drift) || !all_finite(c.diffusion)) {
                    report.nonfinite_at = point_string(s, x);
                    return report;
                }
                report.max_drift_norm = std::max(report.max_drift_norm, c.drift.norm());

                const Matrix sym = 0.5 * (c.diffusion + c.diffusion.transpose());
                Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
                const double lo = eig.eigenvalues().minCoeff();
                const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
                report.max_diffusion_norm = std::max(report.max_diffusion_norm, hi);
                const double asym = (c.diffusion - c.diffusion.transpose()).cwiseAbs().maxCoeff();
                if (lo < -1e-10 * std::max(hi, 1e-300) || asym > 1e-10 * std::max(hi, 1.0)) {
                    if (report.psd_ok) {
                        report.psd_ok = false;
                        std::ostringstream os;
                        os << "Q not symmetric PSD at " << point_string(s, x)
                           << ": min eigenvalue " << lo;
                        report.psd_violation = os.str();
                    }
                }

                const double ki = c.kernel.one_wedge_sq_integral();
                if (!std::isfinite(ki)) {
                    report.nonfinite_at = point_string(s, x);
                    return report;
                }
                report.max_kernel_integral = std::max(report.max_kernel_integral, ki);
            } catch (const NumericalError&) {
                report.nonfinite_at = point_string(s, x);
                return report;
            }

            int pos = d - 1;
            while (pos >= 0 && ++idx[pos] == x_points) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return report;
}

ProcessModel lift_space_time(const ProcessModel& model) {
    model.validate_structure();
    if (model.is_lifted()) throw ParseError("model is already a space-time lift");
    ProcessModel lifted;
    lifted.dim = model.dim + 1;
    // Placeholder fields; evaluation delegates to the base model.
    lifted.drift = CoefficientField::zero(FieldShape::Vector, lifted.dim);
    lifted.diffusion = CoefficientField::zero(FieldShape::Matrix, lifted.dim);
    lifted.truncation = model.truncation;
    lifted.tag = model.tag;
    lifted.lifted_from = std::make_shared<ProcessModel>(model);
    return lifted;
}

// ---- catalog ----------------------------------------------------------------

namespace catalog {

ProcessModel additive_bm(std::vector<double> sigma2_poly, int dim) {
    // Q(s) = (sigma^2)'(s) * Identity, state independent.
    std::vector<double> dpoly;
    for (size_t k = 1; k < sigma2_poly.size(); ++k)
        dpoly.push_back(sigma2_poly[k] * static_cast<double>(k));
    if (dpoly.empty()) dpoly.push_back(0.0);

    ProcessModel m;
    m.dim = dim;
    m.drift = CoefficientField::zero(FieldShape::Vector, dim);
    std::vector<std::vector<double>> q(dim * dim, std::vector<double>{0.0});
    for (int i = 0; i < dim; ++i) q[i * dim + i] = dpoly;
    m.diffusion = CoefficientField::time_polynomial(FieldShape::Matrix, dim, std::move(q));
    m.tag = CatalogTag::AdditiveBm;
    return m;
}

ProcessModel pure_drift(double slope, int dim) {
    ProcessModel m;
    m.dim = dim;
    m.drift = CoefficientField::constant(FieldShape::Vector, dim,
                                         std::vector<double>(dim, slope));
    m.diffusion = CoefficientField::zero(FieldShape::Matrix, dim);
    m.tag = CatalogTag::PureDrift;
    return m;
}

ProcessModel alpha_stable(double alpha, double gamma, int dim) {
    ProcessModel m;
    m.dim = dim;
    m.drift = CoefficientField::zero(FieldShape::Vector, dim);
    m.diffusion = CoefficientField::zero(FieldShape::Matrix, dim);
    m.jumps.family = JumpFamily::SymmetricAlphaStable;
    m.jumps.alpha = alpha;
    m.jumps.scale = CoefficientField::constant(FieldShape::Scalar, dim, {gamma});
    m.tag = CatalogTag::AlphaStableLevy;
    return m;
}

ProcessModel compound_poisson(double lambda, JumpLaw law, int dim) {
    ProcessModel m;
    m.dim = dim;
    m.drift = CoefficientField::zero(FieldShape::Vector, dim);
    m.diffusion = CoefficientField::zero(FieldShape::Matrix, dim);
    m.jumps.family = JumpFamily::CompoundPoisson;
    m.jumps.intensity = CoefficientField::constant(FieldShape::Scalar, dim, {lambda});
    m.jumps.law = law;
    m.tag = CatalogTag::CompoundPoisson;
    return m;
}

ProcessModel jump_diffusion() {
    ProcessModel m;
    m.dim = 1;
    m.drift = CoefficientField::constant(FieldShape::Vector, 1, {1.0});
    m.diffusion = CoefficientField::constant(FieldShape::Matrix, 1, {1.0});
    m.jumps.family = JumpFamily::CompoundPoisson;
    m.jumps.intensity = CoefficientField::constant(FieldShape::Scalar, 1, {1.0});
    m.jumps.law = JumpLaw{JumpLawKind::Gaussian, 0.0, 0.5, 1.0, 1.0};
    m.tag = CatalogTag::JumpDiffusion;
    return m;
}

ProcessModel det_jump_unit() {
    ProcessModel m;
    m.dim = 1;
    m.drift = CoefficientField::zero(FieldShape::Vector, 1);
    m.diffusion = CoefficientField::zero(FieldShape::Matrix, 1);
    m.tag = CatalogTag::DetJumpUnit;
    return m;
}

std::vector<Entry> all() {
    std::vector<Entry> entries;
    entries.push_back({"additive-bm", additive_bm(),
                       "p(tau,x,xi) = 1/2 xi^2 d/dtau sigma^2(tau)",
                       "Brownian motion with variance function sigma^2(t) = t; "
                       "beta = delta = 2"});
    entries.push_back({"pure-drift", pure_drift(),
                       "p(tau,x,xi) = -2i xi",
                       "deterministic drift; sector condition violated"});
    entries.push_back({"alpha-stable-levy", alpha_stable(1.5),
                       "p(tau,x,xi) = |xi|^1.5",
                       "symmetric stable, beta_inf = alpha"});
    entries.push_back({"compound-poisson", compound_poisson(),
                       "p(tau,x,xi) = 1 - cos(xi)",
                       "unit-intensity two-point jumps of size 1"});
    entries.push_back({"jump-diffusion", jump_diffusion(),
                       "p(tau,x,xi) = -i xi + 1/2 xi^2 + (1 - exp(-xi^2/8))",
                       "drift + Brownian part + gaussian compound-poisson jumps"});
    entries.push_back({"det-jump-unit", det_jump_unit(),
                       "p(tau,x,xi) = 0",
                       "symbol vanishes identically, uninformative; unit jump at clock "
                       "time 1 handled by a dedicated simulator branch"});
    return entries;
}

}  // namespace catalog

}  // namespace nhsym
