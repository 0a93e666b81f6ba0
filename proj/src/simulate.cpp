#include "nhsym/simulate.hpp"

#include "nhsym/model_io.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace nhsym {

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw ParseError("simulation step must be > 0");
    if (!(horizon > 0.0)) throw ParseError("simulation horizon must be > 0");
    if (!(dt <= horizon)) throw ParseError("simulation step must satisfy dt <= horizon");
    if (!(small_jump_cutoff > 0.0 && small_jump_cutoff < 1.0))
        throw ParseError("small-jump cutoff must lie in (0,1)");
}

namespace {

// L with L L' = Q. Symmetric eigendecomposition, negative eigenvalues clipped
// at zero inside tolerance; a genuinely indefinite Q is a model error.
Matrix psd_factor(const Matrix& q) {
    const int d = static_cast<int>(q.rows());
    if (d == 1) {
        const double v = q(0, 0);
        if (v < -1e-8) throw NumericalError("PSD factorization failure: Q(0,0) < 0");
        return Matrix::Constant(1, 1, std::sqrt(std::max(v, 0.0)));
    }
    const Matrix sym = 0.5 * (q + q.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (eig.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, hi))
        throw NumericalError("PSD factorization failure: Q has a negative eigenvalue");
    const Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * roots.asDiagonal();
}

struct StepJump {
    double t;
    Vector size;
};

// Jump vector in model coordinates; lifts put mass on {0} x R^d.
Vector embed_jump(const ProcessModel& model, const Vector& base_jump) {
    if (!model.is_lifted()) return base_jump;
    Vector out = Vector::Zero(model.dim);
    out.tail(base_jump.size()) = base_jump;
    return out;
}

// Compound-Poisson jumps on (t0, t0+h] by thinning against a local intensity
// bound, re-raised (and the step redone) if the running intensity exceeds it.
void compound_poisson_jumps(const ProcessModel& model, double t0, double h, const Vector& x0,
                            double bound_override, RngStream& rng,
                            std::vector<StepJump>& jumps) {
    const int jump_dim = model.kernel_at(t0, x0).dim;
    double bound = std::max(bound_override, model.kernel_at(t0, x0).lambda * 1.5);
    if (bound <= 0.0) return;
    for (int attempt = 0; attempt < 64; ++attempt) {
        jumps.clear();
        Vector x = x0;
        double t = t0 + rng.exponential(bound);
        bool bound_ok = true;
        while (t <= t0 + h) {
            const double lambda_here = model.kernel_at(t, x).lambda;
            if (!std::isfinite(lambda_here))
                throw NumericalError("compound-poisson intensity bound non-finite");
            if (lambda_here > bound) {
                bound = 2.0 * lambda_here;
                bound_ok = false;
                break;
            }
            if (rng.uniform01() * bound < lambda_here) {
                Vector j(jump_dim);
                for (int i = 0; i < jump_dim; ++i) j[i] = model.jumps.law.sample1(rng);
                const Vector full = embed_jump(model, j);
                x += full;
                jumps.push_back({t, full});
            }
            t += rng.exponential(bound);
        }
        if (bound_ok) return;
    }
    throw NumericalError("compound-poisson thinning: intensity bound kept growing");
}

// Large stable jumps (radius > cutoff) by thinning; magnitudes are Pareto
// cutoff * U^{-1/alpha}, directions uniform on the sphere.
void stable_large_jumps(const ProcessModel& model, double t0, double h, const Vector& x0,
                        double cutoff, RngStream& rng, std::vector<StepJump>& jumps) {
    const KernelPoint k0 = model.kernel_at(t0, x0);
    const int jump_dim = k0.dim;
    double bound = k0.tail_mass(cutoff) * 1.5;
    if (bound <= 0.0) return;
    for (int attempt = 0; attempt < 64; ++attempt) {
        jumps.clear();
        Vector x = x0;
        double t = t0 + rng.exponential(bound);
        bool bound_ok = true;
        while (t <= t0 + h) {
            const double rate_here = model.kernel_at(t, x).tail_mass(cutoff);
            if (rate_here > bound) {
                bound = 2.0 * rate_here;
                bound_ok = false;
                break;
            }
            if (rng.uniform01() * bound < rate_here) {
                const double radius = cutoff * std::pow(rng.uniform01_strict(),
                                                        -1.0 / model.jumps.alpha);
                Vector dir(jump_dim);
                if (jump_dim == 1) {
                    dir[0] = rng.uniform01() < 0.5 ? 1.0 : -1.0;
                } else {
                    do {
                        for (int i = 0; i < jump_dim; ++i) dir[i] = rng.normal();
                    } while (dir.norm() == 0.0);
                    dir.normalize();
                }
                const Vector full = embed_jump(model, radius * dir);
                x += full;
                jumps.push_back({t, full});
            }
            t += rng.exponential(bound);
        }
        if (bound_ok) return;
    }
    throw NumericalError("stable thinning: tail intensity bound kept growing");
}

void walk_det_jump_unit(double tau, const Vector& x0, const SimConfig& cfg,
                        const std::function<bool(double, const Vector&, bool)>& visit) {
    // Example-2.6 semantics: the path sits still except for a +1 jump at
    // clock time 1 (only seen when started before 1).
    Vector x = x0;
    const double end = tau + cfg.horizon;
    const bool jumps = tau < 1.0 && 1.0 <= end;
    bool jumped = false;
    std::int64_t step = 1;
    for (;;) {
        double t = tau + static_cast<double>(step) * cfg.dt;
        if (t > end - 0.5 * cfg.dt) t = end;
        if (jumps && !jumped && 1.0 <= t) {
            Vector xj = x;
            xj[0] += 1.0;
            x = xj;
            if (!visit(1.0, x, true)) return;
        }
        if (!visit(t, x, false)) return;
        if (t >= end) return;
        ++step;
    }
}

}  // namespace

void walk_path(const ProcessModel& model, double tau, const Vector& x0, const SimConfig& cfg,
               const std::function<bool(double, const Vector&, bool)>& visit) {
    cfg.validate();
    if (tau < 0.0) throw NumericalError("simulation requires tau >= 0");
    if (x0.size() != model.dim) throw ParseError("simulation start has wrong dimension");

    if (model.is_det_jump_unit()) {
        walk_det_jump_unit(tau, x0, cfg, visit);
        return;
    }

    RngStream rng(cfg.seed, cfg.stream);
    const bool has_diffusion = model.has_diffusion();
    const JumpFamily family =
        model.is_lifted() ? model.lifted_from->jumps.family : model.jumps.family;
    const JumpKernelSpec& jump_spec =
        model.is_lifted() ? model.lifted_from->jumps : model.jumps;
    const bool stable_exact =
        family == JumpFamily::SymmetricAlphaStable && !jump_spec.scale.state_dependent() &&
        !model.is_lifted();

    Vector x = x0;
    const double end = tau + cfg.horizon;
    std::vector<StepJump> jumps;
    std::int64_t step = 0;
    for (;;) {
        const double t0 = tau + static_cast<double>(step) * cfg.dt;
        if (t0 >= end - 1e-15 * std::max(1.0, std::abs(end))) return;
        double t1 = tau + static_cast<double>(step + 1) * cfg.dt;
        if (t1 > end - 0.5 * cfg.dt) t1 = end;
        const double h = t1 - t0;

        Vector increment = model.drift_at(t0, x) * h;
        if (has_diffusion) {
            const Matrix factor = psd_factor(model.diffusion_at(t0, x));
            Vector z(model.dim);
            for (int i = 0; i < model.dim; ++i) z[i] = rng.normal();
            increment += factor * z * std::sqrt(h);
        }

        jumps.clear();
        if (family == JumpFamily::CompoundPoisson) {
            compound_poisson_jumps(model, t0, h, x, cfg.intensity_bound, rng, jumps);
        } else if (family == JumpFamily::SymmetricAlphaStable) {
            const double alpha = jump_spec.alpha;
            if (stable_exact) {
                const double gamma = model.kernel_at(t0, x).gamma;
                if (model.dim == 1) {
                    increment[0] += gamma * std::pow(h, 1.0 / alpha) * rng.stable_symmetric(alpha);
                } else {
                    const double sub = 2.0 * std::pow(h, 2.0 / alpha) * gamma * gamma *
                                       rng.stable_one_sided(alpha / 2.0);
                    const double root = std::sqrt(sub);
                    for (int i = 0; i < model.dim; ++i) increment[i] += root * rng.normal();
                }
            } else {
                // Cutoff decomposition: Gaussian substitute below the cutoff
                // matching the truncated second moment, exact jumps above it.
                const KernelPoint k0 = model.kernel_at(t0, x);
                const double eps = cfg.small_jump_cutoff;
                const double variance_rate = k0.levy_density_constant() *
                                             unit_sphere_area(k0.dim) *
                                             std::pow(eps, 2.0 - alpha) / (2.0 - alpha) /
                                             k0.dim;
                const double scale = std::sqrt(variance_rate * h);
                Vector z(k0.dim);
                for (int i = 0; i < k0.dim; ++i) z[i] = scale * rng.normal();
                increment += embed_jump(model, z);
                stable_large_jumps(model, t0, h, x, eps, rng, jumps);
            }
        }

        for (const StepJump& j : jumps) {
            x += j.size;
            if (!visit(j.t, x, true)) return;
        }
        x += increment;
        if (!visit(t1, x, false)) return;
        if (t1 >= end) return;
        ++step;
    }
}

PathSample simulate_path(const ProcessModel& model, double tau, const Vector& x,
                         const SimConfig& cfg) {
    PathSample sample;
    sample.tau = tau;
    sample.start = x;
    sample.terminal = x;
    if (cfg.record == RecordMode::FullPath) {
        sample.times.push_back(tau);
        sample.states.push_back(x);
    }
    Vector last_state = x;
    walk_path(model, tau, x, cfg, [&](double t, const Vector& state, bool jump) {
        const double dist = (state - x).lpNorm<Eigen::Infinity>();
        sample.sup_distance = std::max(sample.sup_distance, dist);
        for (double radius : cfg.exit_radii)
            if (dist > radius && !sample.exit_times.count(radius)) sample.exit_times[radius] = t;
        if (jump) {
            sample.jump_marks.emplace_back(t, state - last_state);
        } else if (cfg.record == RecordMode::FullPath) {
            sample.times.push_back(t);
            sample.states.push_back(state);
        }
        sample.terminal = state;
        last_state = state;
        return true;
    });
    return sample;
}

StoppedResult simulate_stopped(const ProcessModel& model, double tau, const Vector& x,
                               double radius, double lag, const SimConfig& cfg) {
    if (!(radius > 0.0)) throw ParseError("simulate_stopped requires radius > 0");
    if (!(lag > 0.0)) throw ParseError("simulate_stopped requires lag > 0");
    SimConfig local = cfg;
    local.horizon = lag;
    local.dt = std::min(cfg.dt, lag / 64.0);
    local.exit_radii.clear();

    StoppedResult result;
    result.endpoint = x;
    walk_path(model, tau, x, local, [&](double t, const Vector& state, bool) {
        result.endpoint = state;
        if ((state - x).lpNorm<Eigen::Infinity>() > radius) {
            result.exited = true;
            result.exit_time = t;
            return false;  // freeze the stopped process at sigma
        }
        return true;
    });
    return result;
}

double running_sup(const PathSample& path, double t) {
    if (path.times.empty())
        throw ParseError("running_sup requires a full-path record");
    const double limit = path.tau + t;
    if (limit > path.times.back() + 1e-12)
        throw ParseError("running_sup lag exceeds the recorded horizon");
    double sup = 0.0;
    size_t mark = 0;
    Vector carry;  // state at the last visited grid point plus in-step jumps
    for (size_t i = 0; i < path.times.size(); ++i) {
        // Jumps inside (times[i-1], times[i]] act on the previous grid state.
        if (i > 0) {
            carry = path.states[i - 1];
            const double hi = path.times[i];
            while (mark < path.jump_marks.size() && path.jump_marks[mark].first <= hi) {
                const auto& [jt, jv] = path.jump_marks[mark];
                if (jt > limit) return sup;
                carry += jv;
                sup = std::max(sup, (carry - path.start).lpNorm<Eigen::Infinity>());
                ++mark;
            }
        }
        if (path.times[i] > limit + 1e-15) return sup;
        sup = std::max(sup, (path.states[i] - path.start).lpNorm<Eigen::Infinity>());
    }
    return sup;
}

// ---- binary path dump --------------------------------------------------------

std::uint64_t model_hash(const ProcessModel& model) {
    std::string text;
    if (model.is_lifted())
        text = "lift:" + serialize_model_spec(*model.lifted_from);
    else
        text = serialize_model_spec(model);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

template <typename T>
void put(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("path dump truncated");
    return value;
}

constexpr std::uint32_t kDumpMagic = 0x5053484Eu;  // "NHSP"

}  // namespace

void write_path_dump(const std::string& file, const ProcessModel& model, const SimConfig& cfg,
                     const std::vector<PathSample>& paths) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open path dump for writing: " + file);
    put(out, kDumpMagic);
    put(out, std::uint32_t{1});
    put(out, model_hash(model));
    put(out, cfg.seed);
    put(out, cfg.dt);
    put(out, cfg.horizon);
    put(out, static_cast<std::uint64_t>(paths.size()));
    for (const PathSample& p : paths) {
        put(out, p.tau);
        put(out, static_cast<std::uint32_t>(p.start.size()));
        put(out, static_cast<std::uint64_t>(p.times.size()));
        for (double t : p.times) put(out, t);
        for (const Vector& s : p.states)
            for (int i = 0; i < s.size(); ++i) put(out, s[i]);
        put(out, static_cast<std::uint64_t>(p.jump_marks.size()));
        for (const auto& [t, v] : p.jump_marks) {
            put(out, t);
            for (int i = 0; i < v.size(); ++i) put(out, v[i]);
        }
        put(out, static_cast<std::uint32_t>(p.exit_times.size()));
        for (const auto& [radius, t] : p.exit_times) {
            put(out, radius);
            put(out, t);
        }
    }
    if (!out) throw IoError("failed writing path dump: " + file);
}

std::vector<PathSample> read_path_dump(const std::string& file, std::uint64_t* model_hash_out,
                                       std::uint64_t* seed_out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open path dump: " + file);
    if (take<std::uint32_t>(in) != kDumpMagic) throw IoError("not a path dump file: " + file);
    if (take<std::uint32_t>(in) != 1) throw IoError("unsupported path dump version");
    const std::uint64_t hash = take<std::uint64_t>(in);
    const std::uint64_t seed = take<std::uint64_t>(in);
    take<double>(in);  // dt
    take<double>(in);  // horizon
    if (model_hash_out) *model_hash_out = hash;
    if (seed_out) *seed_out = seed;
    const auto n_paths = take<std::uint64_t>(in);
    std::vector<PathSample> paths(n_paths);
    for (auto& p : paths) {
        p.tau = take<double>(in);
        const auto dim = take<std::uint32_t>(in);
        const auto n_times = take<std::uint64_t>(in);
        p.times.resize(n_times);
        for (auto& t : p.times) t = take<double>(in);
        p.states.assign(n_times, Vector(dim));
        for (auto& s : p.states)
            for (std::uint32_t i = 0; i < dim; ++i) s[i] = take<double>(in);
        const auto n_jumps = take<std::uint64_t>(in);
        p.jump_marks.resize(n_jumps);
        for (auto& [t, v] : p.jump_marks) {
            t = take<double>(in);
            v = Vector(dim);
            for (std::uint32_t i = 0; i < dim; ++i) v[i] = take<double>(in);
        }
        const auto n_exits = take<std::uint32_t>(in);
        for (std::uint32_t i = 0; i < n_exits; ++i) {
            const double radius = take<double>(in);
            p.exit_times[radius] = take<double>(in);
        }
        if (!p.times.empty()) {
            p.start = p.states.front();
            p.terminal = p.states.back();
        }
    }
    return paths;
}

}  // namespace nhsym
