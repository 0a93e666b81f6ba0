#include "nhsym/experiment.hpp"
#include "nhsym/model_io.hpp"
#include "nhsym/simulate.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nhsym;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("minimal model document parses") {
    const ProcessModel m = parse_model_spec(
        R"({"dimension": 1, "drift": {"kind": "constant", "values": [2.0]}})");
    CHECK(m.dim == 1);
    CHECK(m.drift_at(0.0, Vector::Zero(1))[0] == 2.0);
    CHECK(m.jumps.family == JumpFamily::None);
}

TEST_CASE("model parse errors name the offending path") {
    SUBCASE("alpha out of range") {
        const std::string doc = R"({"dimension": 1,
            "jumps": {"family": "symmetric-alpha-stable", "alpha": 2.5,
                      "scale": {"kind": "constant", "values": [1.0]}}})";
        CHECK_THROWS_WITH_AS(parse_model_spec(doc), doctest::Contains("alpha outside (0,2)"),
                             ParseError);
        CHECK_THROWS_WITH_AS(parse_model_spec(doc), doctest::Contains("$.jumps.alpha"),
                             ParseError);
    }
    SUBCASE("unknown family") {
        CHECK_THROWS_WITH_AS(
            parse_model_spec(R"({"dimension": 1, "jumps": {"family": "levy-flight"}})"),
            doctest::Contains("$.jumps.family"), ParseError);
    }
    SUBCASE("missing law parameter") {
        CHECK_THROWS_WITH_AS(
            parse_model_spec(R"({"dimension": 1,
                "jumps": {"family": "compound-poisson",
                          "intensity": {"kind": "constant", "values": [1.0]},
                          "law": {"kind": "gaussian", "mean": 0.0}}})"),
            doctest::Contains("$.jumps.law.sigma"), ParseError);
    }
    SUBCASE("not json") {
        CHECK_THROWS_AS(parse_model_spec("drift: 2"), ParseError);
    }
}

TEST_CASE("catalog serialization round-trips byte-identically") {
    for (const auto& entry : catalog::all()) {
        const std::string once = serialize_model_spec(entry.model);
        const ProcessModel reparsed = parse_model_spec(once);
        const std::string twice = serialize_model_spec(reparsed);
        CHECK(once == twice);
        CHECK(reparsed.dim == entry.model.dim);
        CHECK(reparsed.tag == entry.model.tag);
        CHECK(model_hash(reparsed) == model_hash(entry.model));
    }
}

TEST_CASE("expression fields survive the round trip verbatim") {
    const std::string doc = R"({"dimension": 1,
        "jumps": {"family": "symmetric-alpha-stable", "alpha": 1.0,
                  "scale": {"kind": "expression", "entries": ["1 + abs(x0)"]}}})";
    const ProcessModel m = parse_model_spec(doc);
    const ProcessModel again = parse_model_spec(serialize_model_spec(m));
    CHECK(again.jumps.scale.expression_sources()[0] == "1 + abs(x0)");
    CHECK(serialize_model_spec(m) == serialize_model_spec(again));
}

TEST_CASE("experiment config validation fails before any artifact is written") {
    const fs::path out = fresh_dir("nhsym_should_not_exist");
    std::ostringstream doc;
    doc << R"({"model": "catalog:additive-bm", "task": "estimate-sweep", "seed": 1,)"
        << R"( "output": ")" << out.string() << R"(",)"
        << R"( "params": {"tau": [0.0], "xi": [1.0]}})";  // missing N
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse(doc.str(), ""), doctest::Contains("N"),
                         ParseError);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("experiment config rejects implicit seeds and unknown tasks") {
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse(
                             R"({"model": "catalog:additive-bm", "task": "symbol-sweep",
                                 "params": {"tau": [0], "xi": [1]}})",
                             ""),
                         doctest::Contains("seed"), ParseError);
    CHECK_THROWS_AS(ExperimentConfig::parse(
                        R"({"model": "catalog:additive-bm", "task": "frobnicate", "seed": 1})",
                        ""),
                    ParseError);
}

TEST_CASE("symbol sweep experiment: artifacts, determinism, emit") {
    const fs::path out = fresh_dir("nhsym_sweep_test");
    std::ostringstream doc;
    doc << R"({"model": "catalog:additive-bm", "task": "symbol-sweep", "seed": 7,)"
        << R"( "output": ")" << out.string() << R"(",)"
        << R"( "params": {"tau": [0, 0.25, 0.5, 0.75, 1, 1.25, 1.5, 1.75, 2, 2.25],)"
        << R"(            "xi": [-4, -3, -2, -1, 1, 2, 3, 4, 5, 6]}})";
    const ExperimentConfig cfg = ExperimentConfig::parse(doc.str(), "");
    const auto summary = run_experiment(cfg);
    CHECK(summary.at("tables").at("symbol_sweep").at("rows").size() == 100);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "results" / "symbol_sweep.csv"));

    const std::string summary_once = slurp(out / "summary.json");
    const std::string csv_once = slurp(out / "results" / "symbol_sweep.csv");
    run_experiment(cfg);  // rerun in place
    CHECK(slurp(out / "summary.json") == summary_once);
    CHECK(slurp(out / "results" / "symbol_sweep.csv") == csv_once);

    const fs::path emitted = fresh_dir("nhsym_emit_test");
    emit_plot_data((out / "summary.json").string(), "json-lines", emitted.string());
    CHECK(fs::exists(emitted / "symbol_sweep.jsonl"));
    emit_plot_data((out / "summary.json").string(), "csv", emitted.string());
    CHECK(slurp(emitted / "symbol_sweep.csv") == csv_once);
    CHECK_THROWS_AS(
        emit_plot_data((out / "summary.json").string(), "parquet", emitted.string()),
        ParseError);

    fs::remove_all(out);
    fs::remove_all(emitted);
}

TEST_CASE("catalog table mentions the uninformative deterministic example") {
    const std::string table = catalog_table();
    CHECK(table.find("det-jump-unit") != std::string::npos);
    CHECK(table.find("uninformative") != std::string::npos);
    CHECK(table.find("additive-bm") != std::string::npos);
    CHECK(table.find("beta_inf = alpha") != std::string::npos);
}

TEST_CASE("cli binary: exit codes" * doctest::test_suite("cli")) {
    const char* bin = std::getenv("NHSYM_CLI_BIN");
    if (!bin) return;  // only runs via ctest, which injects the binary path
    const std::string binary(bin);
    CHECK(std::system((binary + " catalog > /dev/null").c_str()) == 0);

    const fs::path bad = fs::temp_directory_path() / "nhsym_bad_config.json";
    {
        std::ofstream out(bad);
        out << R"({"model": "catalog:additive-bm", "task": "estimate-sweep", "seed": 1,
                   "params": {"tau": [0], "xi": [1]}})";
    }
    const int parse_rc = std::system((binary + " run " + bad.string() + " 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(parse_rc) == 2);

    const int io_rc =
        std::system((binary + " run /nonexistent/config.json 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(io_rc) == 5);

    const fs::path hyp = fs::temp_directory_path() / "nhsym_hyp_config.json";
    const fs::path hyp_out = fresh_dir("nhsym_hyp_out");
    {
        std::ofstream out(hyp);
        out << R"({"model": "catalog:pure-drift", "task": "verify-max-inequality", "seed": 1,
                   "output": ")"
            << hyp_out.string() << R"(",
                   "params": {"N": 200, "side": "lower"}})";
    }
    const int hyp_rc = std::system((binary + " run " + hyp.string() + " 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(hyp_rc) == 3);
    fs::remove(bad);
    fs::remove(hyp);
    fs::remove_all(hyp_out);
}
