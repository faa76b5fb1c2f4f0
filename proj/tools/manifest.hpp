#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace shellwave::cli {

std::string sha256_hex(const std::string& data);

/// Provenance record written next to every output. The hash covers the tool name, version,
/// command and resolved parameters, but not the timestamp, so equal inputs give equal hashes.
struct RunManifest {
    std::string command;
    nlohmann::json parameters;
    std::vector<std::string> defaults_applied;
    std::string timestamp;  // UTC, ISO 8601

    std::string hash() const;
    nlohmann::json to_json() const;
};

RunManifest make_manifest(const std::string& command, nlohmann::json parameters,
                          std::vector<std::string> defaults_applied);

const char* tool_version();

/// Throws std::runtime_error if any path exists and force is false.
void check_overwrite(const std::vector<std::string>& paths, bool force);
/// Writes text to path, creating parent directories.
void write_file(const std::string& path, const std::string& text);

}  // namespace shellwave::cli
