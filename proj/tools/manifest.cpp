#include "manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifndef SHELLWAVE_VERSION
#define SHELLWAVE_VERSION "0.0.0"
#endif

namespace shellwave::cli {

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 15];
    }
    return out;
}

const char* tool_version() { return SHELLWAVE_VERSION; }

std::string RunManifest::hash() const
{
    const nlohmann::json core = {
        {"tool", "shellwave"}, {"version", tool_version()}, {"command", command}, {"parameters", parameters}};
    return sha256_hex(core.dump());
}

nlohmann::json RunManifest::to_json() const
{
    return {{"tool", "shellwave"},
            {"version", tool_version()},
            {"command", command},
            {"config", parameters},
            {"defaults_applied", defaults_applied},
            {"seed", nullptr},
            {"timestamp", timestamp},
            {"sha256", hash()}};
}

RunManifest make_manifest(const std::string& command, nlohmann::json parameters,
                          std::vector<std::string> defaults_applied)
{
    RunManifest m{command, std::move(parameters), std::move(defaults_applied), {}};
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    return m;
}

void check_overwrite(const std::vector<std::string>& paths, bool force)
{
    if (force) return;
    for (const auto& p : paths)
        if (std::filesystem::exists(p)) throw std::runtime_error("refusing to overwrite '" + p + "' (use --force)");
}

void write_file(const std::string& path, const std::string& text)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace shellwave::cli
