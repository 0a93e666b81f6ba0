#pragma once

#include "nhsym/model.hpp"
#include "nhsym/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nhsym {

enum class RecordMode { FullPath, EndpointAndSup };

struct SimConfig {
    double dt = 1e-3;
    double horizon = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    double small_jump_cutoff = 0.01;  // stable cutoff decomposition, in (0,1)
    RecordMode record = RecordMode::FullPath;
    std::vector<double> exit_radii;   // max-norm radii whose first exit is tracked
    double intensity_bound = 0.0;     // thinning bound; 0 = derive from the local value

    void validate() const;
};

struct PathSample {
    double tau = 0.0;
    Vector start;
    std::vector<double> times;    // grid times from tau (FullPath only)
    std::vector<Vector> states;   // states at `times` (FullPath only)
    std::vector<std::pair<double, Vector>> jump_marks;  // (time, state after jump)
    std::map<double, double> exit_times;  // radius -> first event time with ‖X-x‖ > R
    Vector terminal;              // state at tau + horizon
    double sup_distance = 0.0;    // max-norm running sup over the whole horizon
};

// Euler scheme over the grid tau + k*dt with the characteristics frozen at the
// left endpoint of each step:
//   X <- X + l dt + L sqrt(dt) Z + J,   L L' = Q via PSD eigenfactorization,
// jumps by exact thinning (compound-poisson), exact stable increments for
// state-independent scales, and the cutoff decomposition (exact jumps above
// small_jump_cutoff plus a Gaussian matching the truncated second moment)
// otherwise. Bit-identical results for identical (model, tau, x, cfg).
PathSample simulate_path(const ProcessModel& model, double tau, const Vector& x,
                         const SimConfig& cfg);

struct StoppedResult {
    Vector endpoint;  // X^sigma_{tau+h}: frozen at the exit state if exit came first
    bool exited = false;
    double exit_time = 0.0;  // meaningful when exited
};

// Simulates until min(tau + h, sigma_R) where sigma_R is the first event time
// with ‖X - x‖_max > R; exit detection on the Euler grid with step <= h/64.
StoppedResult simulate_stopped(const ProcessModel& model, double tau, const Vector& x,
                               double radius, double lag, const SimConfig& cfg);

// Max-norm distance sup over [tau, tau+t], jump marks included. Requires a
// FullPath record and t <= horizon.
double running_sup(const PathSample& path, double t);

// Low-level stepping core: visit(t, state, is_jump) is called after every
// state change (grid point or jump mark, in time order); returning false
// stops the walk. Used by the samplers above and by the verification module.
void walk_path(const ProcessModel& model, double tau, const Vector& x, const SimConfig& cfg,
               const std::function<bool(double, const Vector&, bool)>& visit);

// ---- binary path dump -------------------------------------------------------
//
// Record-oriented little-endian file (magic "NHSP", version 1):
//   header: magic u32, version u32, model_hash u64, seed u64, dt f64, T f64,
//           n_paths u64
//   per path: tau f64, dim u32, n_times u64, times f64[n], states f64[n*dim],
//             n_jumps u64, (time f64, state f64[dim])*, n_exits u32,
//             (radius f64, time f64)*
void write_path_dump(const std::string& file, const ProcessModel& model, const SimConfig& cfg,
                     const std::vector<PathSample>& paths);
std::vector<PathSample> read_path_dump(const std::string& file, std::uint64_t* model_hash_out,
                                       std::uint64_t* seed_out);

// FNV-1a hash of the canonical model serialization; stable across runs.
std::uint64_t model_hash(const ProcessModel& model);

}  // namespace nhsym
