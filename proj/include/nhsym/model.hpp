#pragma once

#include "nhsym/coefficients.hpp"
#include "nhsym/common.hpp"
#include "nhsym/jumps.hpp"
#include "nhsym/truncation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nhsym {

enum class CatalogTag {
    None,
    AdditiveBm,       // l = 0, no jumps, Q(s) = d/ds sigma^2(s) * Identity
    PureDrift,
    AlphaStableLevy,
    CompoundPoisson,
    JumpDiffusion,
    DetJumpUnit,      // deterministic unit jump at clock time 1; special branch
};

std::string catalog_tag_name(CatalogTag tag);
std::optional<CatalogTag> catalog_tag_from_name(const std::string& name);

// A non-homogeneous Ito process given by its differential characteristics
// (l, Q, N) and a truncation function chi. Immutable after construction;
// evaluation is pure, so models are safely shareable across workers.
struct ProcessModel {
    int dim = 1;
    CoefficientField drift;      // vector l(s,x)
    CoefficientField diffusion;  // matrix Q(s,x)
    JumpKernelSpec jumps;
    TruncationSpec truncation;
    CatalogTag tag = CatalogTag::None;

    // Set when this model is the homogeneous space-time companion of `base`:
    // coordinate 0 is the running clock, and all coefficients delegate to the
    // base model evaluated at time x[0].
    std::shared_ptr<const ProcessModel> lifted_from;

    bool is_lifted() const { return lifted_from != nullptr; }
    bool is_det_jump_unit() const;

    Vector drift_at(double s, const Vector& x) const;
    Matrix diffusion_at(double s, const Vector& x) const;
    KernelPoint kernel_at(double s, const Vector& x) const;

    // True if any coefficient (or the kernel intensity/scale) reads the state.
    bool coefficients_state_dependent() const;
    bool has_diffusion() const;
    bool has_jumps() const { return jumps.family != JumpFamily::None; }

    void validate_structure() const;  // shape/invariant checks, throws ParseError
};

struct Characteristics {
    Vector drift;
    Matrix diffusion;
    KernelPoint kernel;
};

// l(s,x), Q(s,x) and the kernel handle at one point. Pure in (model, s, x).
Characteristics eval_characteristics(const ProcessModel& model, double s, const Vector& x);

// Compact (s,x) region used for validation sweeps and intensity bounds.
struct Box {
    double s_min = 0.0;
    double s_max = 1.0;
    Vector x_min;
    Vector x_max;

    static Box centered(int dim, double s_max, double half_width);
};

struct ValidationReport {
    double max_drift_norm = 0.0;       // Euclidean norm of l over the grid
    double max_diffusion_norm = 0.0;   // spectral norm of Q over the grid
    double max_kernel_integral = 0.0;  // sup of the (1 ∧ ‖y‖²) integral
    bool psd_ok = true;
    std::string psd_violation;   // offending (s,x,eigenvalue) if any
    std::string nonfinite_at;    // offending (s,x) if any evaluation was non-finite
    bool ok() const { return psd_ok && nonfinite_at.empty(); }
};

// Sweeps a regular grid over the box (s_points x x_points per axis) and
// reports coefficient bounds. Q is PSD-checked with eigenvalue floor
// -1e-10 * spectral radius. Deterministic given the grid resolution.
ValidationReport validate_model(const ProcessModel& model, const Box& box, int s_points = 17,
                                int x_points = 9);

// The homogeneous space-time companion: dimension d+1, first coordinate has
// unit drift, zero diffusion row/column, and the jump kernel puts all mass on
// {0} x R^d in the first coordinate.
ProcessModel lift_space_time(const ProcessModel& model);

// ---- built-in catalog -------------------------------------------------------

namespace catalog {

// sigma2_poly are polynomial coefficients of the variance function sigma^2(t),
// lowest order first; the model stores Q(s) = (sigma^2)'(s) * Identity.
ProcessModel additive_bm(std::vector<double> sigma2_poly = {0.0, 1.0}, int dim = 1);
ProcessModel pure_drift(double slope = 2.0, int dim = 1);
ProcessModel alpha_stable(double alpha, double gamma = 1.0, int dim = 1);
ProcessModel compound_poisson(double lambda = 1.0,
                              JumpLaw law = {JumpLawKind::TwoPoint, 0.0, 1.0, 1.0, 1.0},
                              int dim = 1);
ProcessModel jump_diffusion();  // drift 1, unit diffusion, Poisson(1) gaussian jumps
ProcessModel det_jump_unit();

struct Entry {
    std::string name;
    ProcessModel model;
    std::string symbol_description;
    std::string notes;
};

std::vector<Entry> all();

}  // namespace catalog

}  // namespace nhsym
