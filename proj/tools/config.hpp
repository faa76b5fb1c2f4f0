#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "shellwave/lab.hpp"

namespace shellwave::cli {

/// Config problems, carrying the 1-based line they refer to (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// One value from the flat key/value format: a number, a string, or a list of numbers.
struct ConfigValue {
    enum class Kind { number, string, list } kind = Kind::number;
    double number = 0.0;
    std::string text;
    std::vector<double> list;
    int line = 0;
};

/// Parses `[section]` headers, `key = value` lines with dotted keys and `#` comments.
std::map<std::string, ConfigValue> parse_kv(const std::string& text);

struct ResolvedConfig {
    ExperimentConfig experiment;
    std::vector<std::string> defaults_applied;  // keys that were not given
};

/// Builds and validates an experiment from parsed keys; unknown keys and keys that do not
/// belong to the chosen curve kind or scaling family are errors.
ResolvedConfig resolve_experiment(const std::map<std::string, ConfigValue>& kv);
ResolvedConfig load_experiment(const std::string& text);
ResolvedConfig load_experiment_file(const std::string& path);

/// Canonical JSON form of an experiment; round-trips through experiment_from_json.
nlohmann::json experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const nlohmann::json& j);

}  // namespace shellwave::cli
