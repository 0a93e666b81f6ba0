#pragma once

#include "nhsym/model.hpp"

#include <json.hpp>

#include <string>

namespace nhsym {

enum class TaskKind {
    SymbolSweep,
    EstimateSweep,
    Indices,
    VerifyMaxInequality,
    VerifyScaling,
    VerifyPVariation,
    VerifyExpMoment,
};

std::string task_name(TaskKind task);

struct ExperimentConfig {
    ProcessModel model;
    nlohmann::json document;  // the raw config, copied into the manifest
    TaskKind task = TaskKind::SymbolSweep;
    nlohmann::json params;
    std::uint64_t seed = 0;
    std::string output_dir;

    // Parses and fully validates a config document; no artifacts are written
    // until validation passed. `default_output_root` backs relative or missing
    // output paths (the CLI feeds it from $NHSYM_OUTPUT_ROOT).
    static ExperimentConfig parse(const std::string& text,
                                  const std::string& default_output_root);
    static ExperimentConfig load(const std::string& path,
                                 const std::string& default_output_root);
};

// Executes the task and persists <out>/manifest.json, <out>/results/*.csv and
// <out>/summary.json. Result tables and summary are byte-identical across
// reruns of the same config; only the manifest carries volatile fields (wall
// time). Returns the summary document.
nlohmann::json run_experiment(const ExperimentConfig& config);

// Re-emits the tables of a persisted summary.json as plot-ready files.
// format: "csv" or "json-lines".
void emit_plot_data(const std::string& summary_path, const std::string& format,
                    const std::string& out_dir);

// Human-readable catalog listing (models, analytic symbols, known indices).
std::string catalog_table();

}  // namespace nhsym
