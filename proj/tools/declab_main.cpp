// declab: experiment harness for the decoherence scaling studies.
//
// Exit codes: 0 success, 2 config error, 3 runtime error, 4 check failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "declab/lab/experiments.hpp"
#include "declab/lab/result_table.hpp"

namespace {

int default_jobs() {
    if (const char* env = std::getenv("DECLAB_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCheckFailed = 4;

int run_command(const std::string& config_path, bool check, const std::string& output,
                int jobs) {
    using namespace declab;
    lab::ExperimentConfig config;
    try {
        config = lab::parse_config_file(config_path);
    } catch (const Error& e) {
        std::cerr << "declab: config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!output.empty()) config.output_path = output;
    if (config.output_path.empty()) {
        std::cerr << "declab: no output path (set `output =` in the config or pass --output)\n";
        return kExitConfig;
    }

    lab::RunResult result{lab::ResultTable(std::vector<lab::Column>{{"empty", "1"}}), {}};
    try {
        result = lab::run_experiment(config, jobs, check);
    } catch (const ValidationError& e) {
        std::cerr << "declab: validation error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MissingKeyError& e) {
        std::cerr << "declab: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "declab: runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    try {
        lab::write_csv_atomic(result.table, config.output_path);
    } catch (const std::exception& e) {
        std::cerr << "declab: cannot write output: " << e.what() << "\n";
        return kExitRuntime;
    }

    if (check) {
        bool all_ok = true;
        for (const auto& c : result.checks) {
            std::cerr << (c.passed ? "[ ok ] " : "[FAIL] ") << c.name << ": " << c.detail
                      << "\n";
            all_ok = all_ok && c.passed;
        }
        if (result.checks.empty()) std::cerr << "[ ok ] no embedded checks for this run\n";
        if (!all_ok) return kExitCheckFailed;
    }
    return 0;
}

int validate_command(const std::string& config_path) {
    try {
        declab::lab::parse_config_file(config_path);
    } catch (const declab::Error& e) {
        std::cerr << "declab: " << e.what() << "\n";
        return kExitConfig;
    }
    std::cout << "ok\n";
    return 0;
}

void list_experiments() {
    using namespace declab::lab;
    for (const auto& schema : all_schemas()) {
        std::cout << experiment_name(schema.experiment) << "\n    " << schema.description
                  << "\n    columns: ";
        for (std::size_t i = 0; i < schema.columns.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << schema.columns[i].name << "[" << schema.columns[i].unit << "]";
        }
        std::cout << "\n    parameters:\n";
        for (const auto& p : schema.params) {
            std::cout << "      " << p.key << (p.required ? " (required)" : "") << " - "
                      << p.description << "\n";
        }
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"declab - decoherence scaling laboratory"};
    app.require_subcommand(1);

    std::string config_path, output;
    bool check = false;
    int jobs = default_jobs();

    auto* run = app.add_subcommand("run", "run an experiment config and write its CSV");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_flag("--check", check, "evaluate the embedded acceptance checks (exit 4 on failure)");
    run->add_option("--output", output, "override the config's output path");
    run->add_option("--jobs", jobs, "parallel sweep jobs (default: DECLAB_JOBS or 1)");

    auto* validate = app.add_subcommand("validate", "parse and validate a config");
    validate->add_option("config", config_path, "experiment config file")->required();

    auto* list = app.add_subcommand("list-experiments", "describe every experiment and its schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) return run_command(config_path, check, output, jobs);
        if (validate->parsed()) return validate_command(config_path);
        if (list->parsed()) {
            list_experiments();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "declab: unexpected error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
