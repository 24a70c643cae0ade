#ifndef DECLAB_LAB_EXPERIMENTS_HPP
#define DECLAB_LAB_EXPERIMENTS_HPP

#include "declab/lab/config.hpp"
#include "declab/lab/result_table.hpp"

namespace declab::lab {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunResult {
    ResultTable table;
    std::vector<CheckResult> checks; // filled only when checks were requested
    bool all_checks_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Parameter schema entry; numeric parameters may be list-valued in configs,
/// which sweeps the experiment over the list.
struct ParamSpec {
    enum class Kind { number, integer, text };
    enum class Range { any, positive, non_negative, ge_one };
    std::string key;
    Kind kind = Kind::number;
    bool required = false;
    Range range = Range::any;
    std::string default_text;  // Kind::text defaults
    double default_number = 0; // numeric defaults
    std::string description;
};

struct ExperimentSchema {
    Experiment experiment;
    std::string description;
    std::vector<ParamSpec> params;
    std::vector<Column> columns; // fixed single-run schema
};

const ExperimentSchema& schema_for(Experiment e);
const std::vector<ExperimentSchema>& all_schemas();

/// Runs the experiment (sweeping over the single list-valued parameter if one
/// is present; more than one raises MultipleSweepAxesError). Sweep points are
/// independent jobs executed on up to `jobs` threads; row order follows the
/// input order regardless of completion order. With `with_checks` the
/// embedded acceptance checks are evaluated and returned.
RunResult run_experiment(const ExperimentConfig& config, int jobs = 1,
                         bool with_checks = false);

} // namespace declab::lab

#endif
