#include "nhsym/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

// 0 success, 2 parse, 3 hypothesis violation, 4 numerical failure, 5 I/O.
int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const nhsym::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nhsym::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const nhsym::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const nhsym::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

std::string output_root() {
    const char* env = std::getenv("NHSYM_OUTPUT_ROOT");
    return env ? env : "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nhsym: non-homogeneous Ito process symbol and path-property toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "execute an experiment configuration");
    run->add_option("config", config_path, "experiment config (JSON)")->required();

    CLI::App* catalog = app.add_subcommand("catalog", "list built-in models");

    std::string report_path, format = "csv", emit_out = ".";
    CLI::App* emit = app.add_subcommand("emit", "re-emit a summary.json as plot-ready files");
    emit->add_option("report", report_path, "summary.json produced by `run`")->required();
    emit->add_option("--format", format, "csv or json-lines")->capture_default_str();
    emit->add_option("--out", emit_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed())
        return run_guarded([&] {
            const auto cfg = nhsym::ExperimentConfig::load(config_path, output_root());
            nhsym::run_experiment(cfg);
            std::cout << "wrote " << cfg.output_dir << "\n";
        });
    if (catalog->parsed())
        return run_guarded([] { std::cout << nhsym::catalog_table(); });
    if (emit->parsed())
        return run_guarded([&] { nhsym::emit_plot_data(report_path, format, emit_out); });
    return 2;
}
