#include "nhsym/jumps.hpp"

#include "nhsym/rng.hpp"

#include <cmath>

namespace nhsym {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

}  // namespace

// ---- JumpLaw ---------------------------------------------------------------

void JumpLaw::validate() const {
    switch (kind) {
        case JumpLawKind::Gaussian:
            if (!(sigma > 0.0)) throw ParseError("gaussian jump law needs sigma > 0");
            break;
        case JumpLawKind::TwoPoint:
            if (!(size > 0.0)) throw ParseError("two-point jump law needs size > 0");
            break;
        case JumpLawKind::TwoSidedExponential:
            if (!(rate > 0.0)) throw ParseError("two-sided-exponential jump law needs rate > 0");
            break;
    }
}

Complex JumpLaw::cf1(double xi) const {
    switch (kind) {
        case JumpLawKind::Gaussian:
            return std::exp(Complex(-0.5 * sigma * sigma * xi * xi, mean * xi));
        case JumpLawKind::TwoPoint:
            return Complex(std::cos(size * xi), 0.0);
        case JumpLawKind::TwoSidedExponential:
            return Complex(rate * rate / (rate * rate + xi * xi), 0.0);
    }
    return {};
}

double JumpLaw::mgf1(double xi) const {
    switch (kind) {
        case JumpLawKind::Gaussian:
            return std::exp(mean * xi + 0.5 * sigma * sigma * xi * xi);
        case JumpLawKind::TwoPoint:
            return std::cosh(size * xi);
        case JumpLawKind::TwoSidedExponential:
            if (std::abs(xi) >= rate)
                throw HypothesisError("two-sided-exponential jump law has no exponential moment "
                                      "at |xi| >= rate");
            return rate * rate / (rate * rate - xi * xi);
    }
    return 0.0;
}

double JumpLaw::second_moment1() const {
    switch (kind) {
        case JumpLawKind::Gaussian: return mean * mean + sigma * sigma;
        case JumpLawKind::TwoPoint: return size * size;
        case JumpLawKind::TwoSidedExponential: return 2.0 / (rate * rate);
    }
    return 0.0;
}

double JumpLaw::one_wedge_sq1() const {
    switch (kind) {
        case JumpLawKind::Gaussian: {
            const double a = (-1.0 - mean) / sigma;
            const double b = (1.0 - mean) / sigma;
            const double inner = mean * mean * (normal_cdf(b) - normal_cdf(a)) +
                                 2.0 * mean * sigma * (normal_pdf(a) - normal_pdf(b)) +
                                 sigma * sigma * (normal_cdf(b) - normal_cdf(a) +
                                                  a * normal_pdf(a) - b * normal_pdf(b));
            const double tail = normal_cdf(a) + 1.0 - normal_cdf(b);
            return inner + tail;
        }
        case JumpLawKind::TwoPoint:
            return std::min(1.0, size * size);
        case JumpLawKind::TwoSidedExponential: {
            const double r = rate;
            return 2.0 / (r * r) - std::exp(-r) * (2.0 / r + 2.0 / (r * r));
        }
    }
    return 0.0;
}

double JumpLaw::tail_prob1(double r) const {
    switch (kind) {
        case JumpLawKind::Gaussian:
            return normal_cdf((-r - mean) / sigma) + 1.0 - normal_cdf((r - mean) / sigma);
        case JumpLawKind::TwoPoint:
            return r < size ? 1.0 : 0.0;
        case JumpLawKind::TwoSidedExponential:
            return std::exp(-rate * std::max(r, 0.0));
    }
    return 0.0;
}

double JumpLaw::sample1(RngStream& rng) const {
    switch (kind) {
        case JumpLawKind::Gaussian:
            return mean + sigma * rng.normal();
        case JumpLawKind::TwoPoint:
            return rng.uniform01() < 0.5 ? size : -size;
        case JumpLawKind::TwoSidedExponential: {
            const double magnitude = rng.exponential(rate);
            return rng.uniform01() < 0.5 ? magnitude : -magnitude;
        }
    }
    return 0.0;
}

// ---- JumpKernelSpec --------------------------------------------------------

void JumpKernelSpec::validate(int dim) const {
    switch (family) {
        case JumpFamily::None:
            return;
        case JumpFamily::CompoundPoisson:
            if (intensity.shape() != FieldShape::Scalar)
                throw ParseError("compound-poisson intensity must be a scalar field");
            law.validate();
            return;
        case JumpFamily::SymmetricAlphaStable:
            if (!(alpha > 0.0 && alpha < 2.0)) throw ParseError("alpha outside (0,2)");
            if (scale.shape() != FieldShape::Scalar)
                throw ParseError("stable scale must be a scalar field");
            (void)dim;
            return;
    }
}

bool JumpKernelSpec::operator==(const JumpKernelSpec& other) const {
    if (family != other.family) return false;
    switch (family) {
        case JumpFamily::None: return true;
        case JumpFamily::CompoundPoisson:
            return intensity == other.intensity && law == other.law;
        case JumpFamily::SymmetricAlphaStable:
            return alpha == other.alpha && scale == other.scale;
    }
    return false;
}

// ---- stable normalization --------------------------------------------------

double stable_levy_normalizer(int dim, double alpha) {
    return std::pow(2.0, alpha) * std::tgamma((dim + alpha) / 2.0) *
           std::sin(kPi * alpha / 2.0) * std::tgamma(1.0 + alpha / 2.0) /
           std::pow(kPi, dim / 2.0 + 1.0);
}

double stable_one_minus_cos_integral(double alpha) {
    return 1.0 / (2.0 * stable_levy_normalizer(1, alpha));
}

double unit_sphere_area(int dim) {
    return 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

// ---- KernelPoint -----------------------------------------------------------

Complex KernelPoint::cf(const Vector& xi) const {
    Complex acc(1.0, 0.0);
    for (int i = 0; i < xi.size(); ++i) acc *= law.cf1(xi[i]);
    return acc;
}

double KernelPoint::levy_density_constant() const {
    return std::pow(gamma, alpha) * stable_levy_normalizer(dim, alpha);
}

double KernelPoint::one_wedge_sq_integral() const {
    switch (family) {
        case JumpFamily::None:
            return 0.0;
        case JumpFamily::CompoundPoisson:
            if (dim == 1) return lambda * law.one_wedge_sq1();
            return lambda * std::min(1.0, dim * law.second_moment1());
        case JumpFamily::SymmetricAlphaStable:
            return levy_density_constant() * unit_sphere_area(dim) *
                   (1.0 / (2.0 - alpha) + 1.0 / alpha);
    }
    return 0.0;
}

double KernelPoint::tail_mass(double radius) const {
    switch (family) {
        case JumpFamily::None:
            return 0.0;
        case JumpFamily::CompoundPoisson:
            return dim == 1 ? lambda * law.tail_prob1(radius) : lambda;
        case JumpFamily::SymmetricAlphaStable:
            return levy_density_constant() * unit_sphere_area(dim) *
                   std::pow(radius, -alpha) / alpha;
    }
    return 0.0;
}

}  // namespace nhsym
