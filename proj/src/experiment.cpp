#include "nhsym/experiment.hpp"

#include "nhsym/estimate.hpp"
#include "nhsym/model_io.hpp"
#include "nhsym/verify.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace nhsym {

using nlohmann::json;
namespace fs = std::filesystem;

std::string task_name(TaskKind task) {
    switch (task) {
        case TaskKind::SymbolSweep: return "symbol-sweep";
        case TaskKind::EstimateSweep: return "estimate-sweep";
        case TaskKind::Indices: return "indices";
        case TaskKind::VerifyMaxInequality: return "verify-max-inequality";
        case TaskKind::VerifyScaling: return "verify-scaling";
        case TaskKind::VerifyPVariation: return "verify-pvariation";
        case TaskKind::VerifyExpMoment: return "verify-expmoment";
    }
    return "";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError("experiment config error at " + path + ": " + what);
}

TaskKind task_from_name(const std::string& name) {
    for (TaskKind t : {TaskKind::SymbolSweep, TaskKind::EstimateSweep, TaskKind::Indices,
                       TaskKind::VerifyMaxInequality, TaskKind::VerifyScaling,
                       TaskKind::VerifyPVariation, TaskKind::VerifyExpMoment})
        if (task_name(t) == name) return t;
    throw ParseError("unknown task '" + name + "'");
}

// ---- parameter access helpers ----

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

long integer_at(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        fail(path + "." + key, "expected an integer");
    return j.at(key).get<long>();
}

long integer_or(const json& j, const std::string& key, long fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return j.at(key).get<long>();
}

std::vector<double> numbers_at(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j.at(key).is_array())
        fail(path + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) fail(path + "." + key, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    if (out.empty()) fail(path + "." + key, "array must be non-empty");
    return out;
}

std::vector<double> numbers_or(const json& j, const std::string& key,
                               std::vector<double> fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    return numbers_at(j, key, path);
}

Vector vector_param(const json& j, const std::string& key, int dim, const Vector& fallback,
                    const std::string& path) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_number() && dim == 1) return Vector::Constant(1, v.get<double>());
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        fail(path + "." + key, "expected a vector of length " + std::to_string(dim));
    Vector out(dim);
    for (int i = 0; i < dim; ++i) out[i] = v[i].get<double>();
    return out;
}

// Frequencies: numbers for d = 1, arrays for d > 1.
std::vector<Vector> frequency_list(const json& j, const std::string& key, int dim,
                                   const std::string& path) {
    if (!j.contains(key) || !j.at(key).is_array()) fail(path + "." + key, "expected an array");
    std::vector<Vector> out;
    for (const auto& entry : j.at(key)) {
        if (entry.is_number()) {
            if (dim != 1) fail(path + "." + key, "frequency entries must be vectors in d > 1");
            out.push_back(Vector::Constant(1, entry.get<double>()));
        } else if (entry.is_array() && static_cast<int>(entry.size()) == dim) {
            Vector v(dim);
            for (int i = 0; i < dim; ++i) v[i] = entry[i].get<double>();
            out.push_back(v);
        } else {
            fail(path + "." + key, "expected numbers (d=1) or length-d arrays");
        }
    }
    if (out.empty()) fail(path + "." + key, "array must be non-empty");
    return out;
}

// ---- tables ----

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    json to_json() const {
        json t;
        t["columns"] = columns;
        t["rows"] = json::array();
        for (const auto& row : rows) t["rows"].push_back(row);
        return t;
    }
};

std::string format_cell(const json& cell) {
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    if (cell.is_number()) {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.17g", cell.get<double>());
        return buffer;
    }
    return cell.dump();
}

void write_csv(const fs::path& file, const Table& table) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write result table: " + file.string());
    for (size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
        out << "\n";
    }
    if (!out) throw IoError("failed writing result table: " + file.string());
}

std::string vec_string(const Vector& v) {
    std::ostringstream os;
    for (int i = 0; i < v.size(); ++i) {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.17g", v[i]);
        os << (i ? ";" : "") << buffer;
    }
    return os.str();
}

json vec_cell(const Vector& v) {
    if (v.size() == 1) return v[0];
    return vec_string(v);
}

std::string hash_string(std::uint64_t h) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

struct TaskOutput {
    json metrics = json::object();
    std::map<std::string, Table> tables;
};

// ---- task runners ----

TaskOutput run_symbol_sweep(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    const std::vector<double> taus = numbers_at(cfg.params, "tau", path);
    const std::vector<Vector> xis = frequency_list(cfg.params, "xi", cfg.model.dim, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);

    Table table;
    table.columns = {"tau", "x", "xi", "re_p", "im_p"};
    for (double tau : taus)
        for (const Vector& xi : xis) {
            const SymbolValue p = symbol_analytic(cfg.model, tau, x, xi);
            table.rows.push_back({tau, vec_cell(x), vec_cell(xi), p.re, p.im});
        }
    TaskOutput out;
    out.metrics["rows"] = table.rows.size();
    out.tables["symbol_sweep"] = std::move(table);
    return out;
}

TaskOutput run_estimate_sweep(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    const long n = integer_at(cfg.params, "N", path);
    const std::vector<double> taus = numbers_at(cfg.params, "tau", path);
    const std::vector<Vector> xis = frequency_list(cfg.params, "xi", cfg.model.dim, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);

    EstimatorConfig est;
    est.paths_per_lag = static_cast<int>(n);
    est.lags = numbers_or(cfg.params, "lags", est.lags, path);
    est.radius = number_or(cfg.params, "radius", est.radius, path);
    est.seed = cfg.seed;
    if (cfg.params.contains("extrapolation")) {
        const std::string mode = cfg.params.at("extrapolation").get<std::string>();
        if (mode == "smallest-lag") est.extrapolation = Extrapolation::SmallestLag;
        else if (mode == "richardson-2point") est.extrapolation = Extrapolation::Richardson2Point;
        else fail(path + ".extrapolation", "expected 'smallest-lag' or 'richardson-2point'");
    }
    est.validate();

    Table table;
    table.columns = {"tau",  "x",   "xi", "h", "re_p", "im_p", "confidence_radius",
                     "exited_fraction"};
    std::uint64_t stream = 0;
    int low_precision = 0;
    for (double tau : taus)
        for (const Vector& xi : xis) {
            EstimatorConfig local = est;
            local.stream_base = stream;
            stream += est.lags.size() * static_cast<std::uint64_t>(est.paths_per_lag);
            const SymbolEstimate estimate = estimate_symbol(cfg.model, tau, x, xi, local);
            for (const LagEstimate& lag : estimate.per_lag)
                table.rows.push_back({tau, vec_cell(x), vec_cell(xi), lag.lag,
                                      lag.p_hat.real(), lag.p_hat.imag(),
                                      lag.confidence_radius, lag.exited_fraction});
            table.rows.push_back({tau, vec_cell(x), vec_cell(xi), 0.0, estimate.value.re,
                                  estimate.value.im, *estimate.value.confidence_radius,
                                  estimate.per_lag.back().exited_fraction});
            if (estimate.value.low_precision) ++low_precision;
        }
    TaskOutput out;
    out.metrics["low_precision_estimates"] = low_precision;
    out.tables["estimate_sweep"] = std::move(table);
    return out;
}

TaskOutput run_indices(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    const double tau = number_or(cfg.params, "tau", 0.0, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);
    IndexConfig config = IndexConfig::defaults(cfg.model.dim);
    if (cfg.params.contains("r-grid-start"))
        config.r_grid_start = numbers_at(cfg.params, "r-grid-start", path);
    if (cfg.params.contains("r-grid-inf"))
        config.r_grid_inf = numbers_at(cfg.params, "r-grid-inf", path);

    const IndexReport report = compute_index_report(cfg.model, tau, x, config);

    TaskOutput out;
    auto curve_table = [](const IndexCurve& curve, const std::string& name) {
        Table t;
        t.columns = {"R", name, "log_R", "log_" + name};
        for (size_t i = 0; i < curve.radii.size(); ++i)
            t.rows.push_back({curve.radii[i], curve.values[i], std::log(curve.radii[i]),
                              std::log(curve.values[i])});
        return t;
    };
    out.tables["H_start"] = curve_table(report.H_start_curve, "H");
    out.tables["H_inf"] = curve_table(report.H_inf_curve, "H");
    if (report.start_deltas_defined) {
        out.tables["h_start"] = curve_table(report.h_start_curve, "h");
        out.tables["h_inf"] = curve_table(report.h_inf_curve, "h");
    }
    Table windows;
    windows.columns = {"curve", "window", "exponent"};
    const auto add_windows = [&](const std::string& name, const SlopeFit& fit) {
        for (size_t i = 0; i < fit.window_exponents.size(); ++i)
            windows.rows.push_back({name, static_cast<long long>(i), fit.window_exponents[i]});
    };
    add_windows("H_start", report.H_start_fit);
    add_windows("H_inf", report.H_inf_fit);
    if (report.start_deltas_defined) {
        add_windows("h_start", report.h_start_fit);
        add_windows("h_inf", report.h_inf_fit);
    }
    out.tables["fit_windows"] = std::move(windows);

    json& m = out.metrics;
    m["beta0"] = report.beta0;
    m["beta0_low"] = report.beta0_low;
    m["beta_inf"] = report.beta_inf;
    m["beta_inf_low"] = report.beta_inf_low;
    m["sector_violated"] = report.constants.sector_violated;
    m["growth_c"] = report.constants.growth_c;
    if (!report.constants.sector_violated) {
        m["sector_c0"] = report.constants.sector_c0;
        m["kappa"] = report.constants.kappa;
    }
    if (report.start_deltas_defined) {
        m["delta0_up"] = report.delta0_up;
        m["delta0"] = report.delta0;
        m["delta_inf_up"] = report.delta_inf_up;
        m["delta_inf"] = report.delta_inf;
    }
    m["start_grid_refinement"] = report.start_grid_refinement;
    m["inf_grid_refinement"] = report.inf_grid_refinement;
    return out;
}

Table inequality_cells_table(const InequalityReport& report) {
    Table t;
    t.columns = {"t",   "R",   "lhs",          "lhs_radius", "functional",
                 "rhs", "margin", "fitted_ratio", "pass"};
    for (const InequalityCell& cell : report.cells)
        t.rows.push_back({cell.t, cell.radius, cell.lhs, cell.lhs_radius, cell.functional,
                          cell.rhs, cell.margin, cell.fitted_ratio, cell.pass});
    return t;
}

json inequality_metrics(const InequalityReport& report) {
    json m;
    m["constant"] = report.constant;
    m["fitted_constant"] = report.fitted_constant;
    if (report.fitted_constant_doubled >= 0.0) {
        m["fitted_constant_doubled"] = report.fitted_constant_doubled;
        m["stable_under_doubling"] = report.stable_under_doubling;
    }
    m["all_pass"] = report.all_pass;
    m["bridged_sampler"] = report.bridged;
    return m;
}

TaskOutput run_verify_max_inequality(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    MaxInequalityConfig mic;
    mic.sampling.paths = static_cast<int>(integer_at(cfg.params, "N", path));
    mic.t_grid = numbers_or(cfg.params, "t-grid", mic.t_grid, path);
    mic.radii = numbers_or(cfg.params, "radii", mic.radii, path);
    mic.constant = number_or(cfg.params, "constant", 0.0, path);
    mic.sampling.seed = cfg.seed;
    const double tau = number_or(cfg.params, "tau", 0.0, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);
    std::string side = "upper";
    if (cfg.params.contains("side")) side = cfg.params.at("side").get<std::string>();
    if (side != "upper" && side != "lower" && side != "both")
        fail(path + ".side", "expected 'upper', 'lower' or 'both'");

    TaskOutput out;
    if (side == "upper" || side == "both") {
        const InequalityReport report = check_max_inequality_upper(cfg.model, tau, x, mic);
        out.tables["upper_cells"] = inequality_cells_table(report);
        out.metrics["upper"] = inequality_metrics(report);
    }
    if (side == "lower" || side == "both") {
        const InequalityReport report = check_max_inequality_lower(cfg.model, tau, x, mic);
        out.tables["lower_cells"] = inequality_cells_table(report);
        out.metrics["lower"] = inequality_metrics(report);
    }
    return out;
}

TaskOutput run_verify_scaling(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    const long n = integer_at(cfg.params, "N", path);
    const std::vector<double> lambdas = numbers_at(cfg.params, "lambda", path);
    if (!cfg.params.contains("direction")) fail(path + ".direction", "missing required key");
    const std::string dir_name = cfg.params.at("direction").get<std::string>();
    TimeLimit direction;
    if (dir_name == "t->0") direction = TimeLimit::TToZero;
    else if (dir_name == "t->inf") direction = TimeLimit::TToInfinity;
    else fail(path + ".direction", "expected 't->0' or 't->inf'");
    const double tau = number_or(cfg.params, "tau", 0.0, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);

    TaskOutput out;
    Table table;
    table.columns = {"lambda", "t", "q10", "q50", "q90"};
    json verdicts = json::object();
    std::uint64_t stream = 0;
    for (double lambda : lambdas) {
        ScalingConfig sc;
        sc.lambda = lambda;
        sc.direction = direction;
        sc.paths = static_cast<int>(n);
        sc.seed = cfg.seed;
        sc.stream_base = stream;
        if (cfg.params.contains("t-grid")) sc.t_grid = numbers_at(cfg.params, "t-grid", path);
        const ScalingReport report = asymptotic_scaling(cfg.model, tau, x, sc);
        stream += report.t_grid.size() * static_cast<std::uint64_t>(n);
        for (size_t i = 0; i < report.t_grid.size(); ++i)
            table.rows.push_back({lambda, report.t_grid[i], report.quantiles[i][0],
                                  report.quantiles[i][1], report.quantiles[i][2]});
        char key[40];
        std::snprintf(key, sizeof(key), "lambda=%.17g", lambda);
        verdicts[key] = report.verdict;
        out.metrics["note"] = report.note;
    }
    out.metrics["verdicts"] = verdicts;
    out.tables["scaling_quantiles"] = std::move(table);
    return out;
}

TaskOutput run_verify_pvariation(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    const long n = integer_at(cfg.params, "N", path);
    const std::vector<double> ps = numbers_at(cfg.params, "p", path);
    const int depth = static_cast<int>(integer_or(cfg.params, "depth", 14, path));
    const double horizon = number_or(cfg.params, "horizon", 1.0, path);
    const double tau = number_or(cfg.params, "tau", 0.0, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);

    TaskOutput out;
    Table table;
    table.columns = {"p", "level", "partition_sum"};
    json verdicts = json::object();
    for (double p : ps) {
        PVariationConfig pc;
        pc.p = p;
        pc.depth = depth;
        pc.paths = static_cast<int>(n);
        pc.horizon = horizon;
        pc.seed = cfg.seed;
        const PVariationReport report = p_variation(cfg.model, tau, x, pc);
        for (size_t k = 0; k < report.level_sums.size(); ++k)
            table.rows.push_back({p, static_cast<long long>(k + 1), report.level_sums[k]});
        char key[40];
        std::snprintf(key, sizeof(key), "p=%.17g", p);
        verdicts[key] = report.verdict;
    }
    out.metrics["verdicts"] = verdicts;
    out.tables["pvariation_levels"] = std::move(table);
    return out;
}

TaskOutput run_verify_expmoment(const ExperimentConfig& cfg) {
    const std::string path = "$.params";
    ExpMomentConfig emc;
    emc.paths = static_cast<int>(integer_at(cfg.params, "N", path));
    emc.xi = vector_param(cfg.params, "xi", cfg.model.dim, Vector::Zero(cfg.model.dim), path);
    if (!cfg.params.contains("xi")) fail(path + ".xi", "missing required key");
    emc.lag = number_or(cfg.params, "lag", 1.0, path);
    emc.seed = cfg.seed;
    const double tau = number_or(cfg.params, "tau", 0.0, path);
    const Vector x =
        vector_param(cfg.params, "x", cfg.model.dim, Vector::Zero(cfg.model.dim), path);

    const ExpMomentReport report = exponential_moment_check(cfg.model, tau, x, emc);
    TaskOutput out;
    out.metrics["b"] = report.b;
    out.metrics["bound"] = report.bound;
    out.metrics["growth_constant"] = report.growth_constant;
    out.metrics["empirical_mean"] = report.empirical_mean;
    out.metrics["std_error"] = report.std_error;
    out.metrics["pass"] = report.pass;
    Table table;
    table.columns = {"xi", "lag", "empirical_mean", "std_error", "bound", "pass"};
    table.rows.push_back({vec_cell(emc.xi), emc.lag, report.empirical_mean, report.std_error,
                          report.bound, report.pass});
    out.tables["expmoment"] = std::move(table);
    return out;
}

void validate_params(const ExperimentConfig& cfg) {
    // Structural validation without running anything: required keys and basic
    // ranges, so invalid configs never produce artifacts.
    const std::string path = "$.params";
    switch (cfg.task) {
        case TaskKind::SymbolSweep:
            numbers_at(cfg.params, "tau", path);
            frequency_list(cfg.params, "xi", cfg.model.dim, path);
            break;
        case TaskKind::EstimateSweep: {
            const long n = integer_at(cfg.params, "N", path);
            if (n < 100) fail(path + ".N", "estimator needs N >= 100");
            numbers_at(cfg.params, "tau", path);
            frequency_list(cfg.params, "xi", cfg.model.dim, path);
            break;
        }
        case TaskKind::Indices:
            break;
        case TaskKind::VerifyMaxInequality:
            integer_at(cfg.params, "N", path);
            break;
        case TaskKind::VerifyScaling: {
            integer_at(cfg.params, "N", path);
            numbers_at(cfg.params, "lambda", path);
            if (!cfg.params.contains("direction"))
                fail(path + ".direction", "missing required key");
            break;
        }
        case TaskKind::VerifyPVariation:
            integer_at(cfg.params, "N", path);
            numbers_at(cfg.params, "p", path);
            break;
        case TaskKind::VerifyExpMoment:
            integer_at(cfg.params, "N", path);
            if (!cfg.params.contains("xi")) fail(path + ".xi", "missing required key");
            break;
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text,
                                         const std::string& default_output_root) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("experiment config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("experiment config must be a JSON object");

    ExperimentConfig cfg;
    cfg.document = doc;

    if (!doc.contains("model")) fail("$.model", "missing required key");
    const json& model_ref = doc.at("model");
    if (model_ref.is_string()) {
        const std::string ref = model_ref.get<std::string>();
        if (ref.rfind("catalog:", 0) == 0) {
            const std::string name = ref.substr(8);
            bool found = false;
            for (const auto& entry : catalog::all())
                if (entry.name == name) {
                    cfg.model = entry.model;
                    found = true;
                    break;
                }
            if (!found) fail("$.model", "unknown catalog model '" + name + "'");
        } else {
            cfg.model = load_model_spec(ref);
        }
    } else if (model_ref.is_object()) {
        cfg.model = parse_model_spec(model_ref.dump());
    } else {
        fail("$.model", "expected an inline model object or a file path");
    }

    if (!doc.contains("task") || !doc.at("task").is_string())
        fail("$.task", "missing required key");
    cfg.task = task_from_name(doc.at("task").get<std::string>());

    if (!doc.contains("seed") || !doc.at("seed").is_number_integer())
        fail("$.seed", "seeds must be explicit (no implicit entropy)");
    cfg.seed = doc.at("seed").get<std::uint64_t>();

    cfg.params = doc.contains("params") ? doc.at("params") : json::object();
    validate_params(cfg);

    std::string output = doc.contains("output") ? doc.at("output").get<std::string>() : "";
    if (output.empty())
        output = task_name(cfg.task) + "-" + hash_string(model_hash(cfg.model) ^ cfg.seed);
    fs::path out_path(output);
    if (out_path.is_relative() && !default_output_root.empty())
        out_path = fs::path(default_output_root) / out_path;
    cfg.output_dir = out_path.string();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path,
                                        const std::string& default_output_root) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open experiment config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), default_output_root);
}

json run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();

    TaskOutput output;
    switch (config.task) {
        case TaskKind::SymbolSweep: output = run_symbol_sweep(config); break;
        case TaskKind::EstimateSweep: output = run_estimate_sweep(config); break;
        case TaskKind::Indices: output = run_indices(config); break;
        case TaskKind::VerifyMaxInequality: output = run_verify_max_inequality(config); break;
        case TaskKind::VerifyScaling: output = run_verify_scaling(config); break;
        case TaskKind::VerifyPVariation: output = run_verify_pvariation(config); break;
        case TaskKind::VerifyExpMoment: output = run_verify_expmoment(config); break;
    }

    json summary;
    summary["task"] = task_name(config.task);
    summary["model_hash"] = hash_string(model_hash(config.model));
    summary["seed"] = config.seed;
    summary["metrics"] = output.metrics;
    summary["tables"] = json::object();
    for (const auto& [name, table] : output.tables) summary["tables"][name] = table.to_json();

    std::error_code ec;
    const fs::path out_dir(config.output_dir);
    fs::create_directories(out_dir / "results", ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    for (const auto& [name, table] : output.tables)
        write_csv(out_dir / "results" / (name + ".csv"), table);

    {
        std::ofstream out(out_dir / "summary.json");
        if (!out) throw IoError("cannot write summary.json");
        out << summary.dump(2) << "\n";
    }
    {
        const auto elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - start);
        json manifest;
        manifest["config"] = config.document;
        manifest["model"] = json::parse(serialize_model_spec(config.model));
        manifest["model_hash"] = hash_string(model_hash(config.model));
        manifest["version"] = "nhsym 1.0";
        manifest["wall_time_seconds"] = elapsed.count();
        std::ofstream out(out_dir / "manifest.json");
        if (!out) throw IoError("cannot write manifest.json");
        out << manifest.dump(2) << "\n";
    }
    return summary;
}

void emit_plot_data(const std::string& summary_path, const std::string& format,
                    const std::string& out_dir) {
    if (format != "csv" && format != "json-lines")
        throw ParseError("emit format must be 'csv' or 'json-lines'");
    std::ifstream in(summary_path);
    if (!in) throw IoError("cannot open report: " + summary_path);
    json summary;
    try {
        in >> summary;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!summary.contains("tables") || !summary.at("tables").is_object())
        throw ParseError("report carries no tables");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);

    for (const auto& [name, tj] : summary.at("tables").items()) {
        Table table;
        table.columns = tj.at("columns").get<std::vector<std::string>>();
        for (const auto& row : tj.at("rows")) table.rows.push_back(row);
        if (format == "csv") {
            write_csv(fs::path(out_dir) / (name + ".csv"), table);
        } else {
            std::ofstream out(fs::path(out_dir) / (name + ".jsonl"));
            if (!out) throw IoError("cannot write " + name + ".jsonl");
            for (const auto& row : table.rows) {
                json obj;
                for (size_t c = 0; c < table.columns.size() && c < row.size(); ++c)
                    obj[table.columns[c]] = row[c];
                out << obj.dump() << "\n";
            }
        }
    }
}

std::string catalog_table() {
    std::ostringstream os;
    os << "built-in model catalog\n";
    os << "----------------------\n";
    for (const auto& entry : catalog::all()) {
        os << entry.name << "\n";
        os << "  symbol: " << entry.symbol_description << "\n";
        os << "  notes:  " << entry.notes << "\n";
    }
    return os.str();
}

}  // namespace nhsym
