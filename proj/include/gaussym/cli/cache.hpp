#ifndef GAUSSYM_CLI_CACHE_HPP
#define GAUSSYM_CLI_CACHE_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "gaussym/core/file_lock.hpp"

namespace gaussym::cli {

inline constexpr const char* cache_env_var = "GAUSSYM_CACHE_DIR";

/// Explicit directory, else $GAUSSYM_CACHE_DIR, else none (caching off).
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& explicit_dir = {}) {
    if (!explicit_dir.empty()) return std::filesystem::path(explicit_dir);
    if (const char* env = std::getenv(cache_env_var); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

/// Finished artifacts stored byte-for-byte under <dir>/results/<key>/<name>.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_ / "results");
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<std::string> load(const std::string& key, const std::string& name) const {
        FileLock lock(lock_path(), FileLock::Mode::shared);
        std::ifstream in(dir_ / "results" / key / name, std::ios::binary);
        if (!in) return std::nullopt;
        return std::string(std::istreambuf_iterator<char>(in), {});
    }

    void store(const std::string& key, const std::string& name, const std::string& bytes) const {
        FileLock lock(lock_path(), FileLock::Mode::exclusive);
        const auto d = dir_ / "results" / key;
        std::filesystem::create_directories(d);
        const auto tmp = d / (name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary);
            out << bytes;
        }
        std::filesystem::rename(tmp, d / name);
    }

private:
    std::filesystem::path lock_path() const { return dir_ / ".lock"; }
    std::filesystem::path dir_;
};

} // namespace gaussym::cli

#endif
