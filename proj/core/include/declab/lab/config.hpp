#ifndef DECLAB_LAB_CONFIG_HPP
#define DECLAB_LAB_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "declab/errors.hpp"

namespace declab::lab {

enum class Experiment {
    dicke_envelope,
    dicke_exact_vs_analytic,
    dicke_collapse_scaling,
    spin_gaussian,
    spin_hypotheses,
    landau_damping,
    tf_energy_scaling,
    wk_diagnostic,
};

const char* experiment_name(Experiment e);

/// A parameter value: scalar, string, or a numeric list (one list-valued
/// parameter per config turns the run into a sweep).
using ParamValue = std::variant<double, std::string, std::vector<double>>;

struct ExperimentConfig {
    Experiment experiment;
    std::map<std::string, ParamValue> params;
    std::string output_path; // may be empty (CLI --output overrides/fills it)
    std::uint64_t seed = 0;

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    std::string text(const std::string& key) const;
    bool is_list(const std::string& key) const;
    const std::vector<double>& list(const std::string& key) const;

    /// Names of all list-valued parameters (sweep axes).
    std::vector<std::string> sweep_axes() const;
};

/// Plain-text key-value format: a [experiment-name] section header, then one
/// `key = value` per line; `#` starts a comment; lists look like [4, 8, 16].
/// Unknown keys, unknown experiments, type errors and range violations are
/// all rejected at parse time with the offending line or key named.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

} // namespace declab::lab

#endif
