#include "declab/lab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "declab/lab/experiments.hpp"

namespace declab::lab {

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::dicke_envelope: return "dicke-envelope";
        case Experiment::dicke_exact_vs_analytic: return "dicke-exact-vs-analytic";
        case Experiment::dicke_collapse_scaling: return "dicke-collapse-scaling";
        case Experiment::spin_gaussian: return "spin-gaussian";
        case Experiment::spin_hypotheses: return "spin-hypotheses";
        case Experiment::landau_damping: return "landau-damping";
        case Experiment::tf_energy_scaling: return "tf-energy-scaling";
        case Experiment::wk_diagnostic: return "wk-diagnostic";
    }
    return "?";
}

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

bool parse_number(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

const ParamSpec* find_spec(const ExperimentSchema& schema, const std::string& key) {
    for (const auto& p : schema.params)
        if (p.key == key) return &p;
    return nullptr;
}

void check_range(const ParamSpec& spec, double v, int line) {
    switch (spec.range) {
        case ParamSpec::Range::positive:
            if (v <= 0.0)
                throw ValidationError(spec.key + " must be positive (line " +
                                      std::to_string(line) + ")");
            break;
        case ParamSpec::Range::non_negative:
            if (v < 0.0)
                throw ValidationError(spec.key + " must be non-negative (line " +
                                      std::to_string(line) + ")");
            break;
        case ParamSpec::Range::ge_one:
            if (v < 1.0)
                throw ValidationError(spec.key + " must be >= 1 (line " +
                                      std::to_string(line) + ")");
            break;
        default: break;
    }
    if (spec.kind == ParamSpec::Kind::integer && v != std::floor(v))
        throw ValidationError(spec.key + " must be an integer (line " + std::to_string(line) +
                              ")");
}

} // namespace

double ExperimentConfig::number(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw MissingKeyError(key);
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    throw ValidationError("parameter " + key + " is not a scalar number");
}

int ExperimentConfig::integer(const std::string& key) const {
    return static_cast<int>(number(key));
}

std::string ExperimentConfig::text(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw MissingKeyError(key);
    if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
    throw ValidationError("parameter " + key + " is not a string");
}

bool ExperimentConfig::is_list(const std::string& key) const {
    const auto it = params.find(key);
    return it != params.end() && std::holds_alternative<std::vector<double>>(it->second);
}

const std::vector<double>& ExperimentConfig::list(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw MissingKeyError(key);
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    throw ValidationError("parameter " + key + " is not a list");
}

std::vector<std::string> ExperimentConfig::sweep_axes() const {
    std::vector<std::string> axes;
    for (const auto& [k, v] : params)
        if (std::holds_alternative<std::vector<double>>(v)) axes.push_back(k);
    return axes;
}

ExperimentConfig parse_config(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_header = false;
    const ExperimentSchema* schema = nullptr;
    ExperimentConfig config{};

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (!have_header) {
            if (line.front() != '[' || line.back() != ']')
                throw ParseError(line_no, "expected an [experiment] section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            for (const auto& s : all_schemas())
                if (experiment_name(s.experiment) == name) schema = &s;
            if (schema == nullptr) throw UnknownExperimentError("unknown experiment: " + name);
            config.experiment = schema->experiment;
            have_header = true;
            continue;
        }
        if (line.front() == '[')
            throw ParseError(line_no, "only one experiment section per config");

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (value.empty()) throw ParseError(line_no, "empty value for key " + key);

        if (key == "output") {
            config.output_path = value;
            continue;
        }
        if (key == "seed") {
            double s;
            if (!parse_number(value, s) || s < 0 || s != std::floor(s))
                throw ParseError(line_no, "seed must be a non-negative integer");
            config.seed = static_cast<std::uint64_t>(s);
            continue;
        }

        const ParamSpec* spec = find_spec(*schema, key);
        if (spec == nullptr)
            throw ParseError(line_no, "unknown key '" + key + "' for experiment " +
                                          experiment_name(schema->experiment));
        if (config.params.count(key)) throw ParseError(line_no, "duplicate key " + key);

        if (value.front() == '[') {
            if (value.back() != ']') throw ParseError(line_no, "unterminated list");
            if (spec->kind == ParamSpec::Kind::text)
                throw ParseError(line_no, "key " + key + " does not accept a list");
            std::vector<double> items;
            std::stringstream ss(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) throw ParseError(line_no, "empty list element");
                double v;
                if (!parse_number(item, v))
                    throw ParseError(line_no, "bad number '" + item + "' in list " + key);
                check_range(*spec, v, line_no);
                items.push_back(v);
            }
            config.params[key] = std::move(items);
        } else if (spec->kind == ParamSpec::Kind::text) {
            config.params[key] = value;
        } else {
            double v;
            if (!parse_number(value, v))
                throw ParseError(line_no, "bad number '" + value + "' for key " + key);
            check_range(*spec, v, line_no);
            config.params[key] = v;
        }
    }
    if (!have_header) throw ParseError(line_no, "missing [experiment] section header");

    // defaults, then required-key validation
    for (const auto& p : schema->params) {
        if (config.params.count(p.key)) continue;
        if (p.required) throw MissingKeyError(p.key);
        if (p.kind == ParamSpec::Kind::text)
            config.params[p.key] = p.default_text;
        else
            config.params[p.key] = p.default_number;
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    return parse_config(in);
}

} // namespace declab::lab
