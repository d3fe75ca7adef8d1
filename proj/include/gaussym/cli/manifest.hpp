#ifndef GAUSSYM_CLI_MANIFEST_HPP
#define GAUSSYM_CLI_MANIFEST_HPP

#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "gaussym/core/hash.hpp"
#include "gaussym/montecarlo/philox.hpp"

#ifndef GAUSSYM_VERSION
#define GAUSSYM_VERSION "0.0.0"
#endif

namespace gaussym::cli {

inline constexpr int schema_version = 1;

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> tolerances;
    std::map<std::string, std::string> versions;
    std::string timestamp; // UTC, ISO 8601
};

/// Content key of (command, normalized config). nlohmann objects serialize with sorted keys,
/// so equal configs hash equal regardless of flag order.
inline std::string config_hash(const std::string& command, const nlohmann::json& config) {
    return fnv1a_hex(command + '\n' + config.dump());
}

inline std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::map<std::string, std::string> component_versions() {
    return {{"gaussym", GAUSSYM_VERSION}, {"rng", std::string(mc::Philox4x32::version)}, {"schema", "1"}};
}

inline RunManifest make_manifest(const std::string& command, const nlohmann::json& config,
                                 std::optional<std::uint64_t> seed = std::nullopt,
                                 std::map<std::string, double> tolerances = {}) {
    return {command, config_hash(command, config), seed, std::move(tolerances), component_versions(), utc_now()};
}

inline nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json j{{"schema_version", schema_version},
                     {"command", m.command},
                     {"config_hash", m.config_hash},
                     {"tolerances", m.tolerances},
                     {"versions", m.versions},
                     {"timestamp", m.timestamp}};
    j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
    return j;
}

} // namespace gaussym::cli

#endif
