#ifndef GAUSSYM_FINITE_N_SERIALIZE_HPP
#define GAUSSYM_FINITE_N_SERIALIZE_HPP

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gaussym/core/file_lock.hpp"
#include "gaussym/core/precision.hpp"
#include "gaussym/finite_n/gram_schmidt.hpp"
#include "gaussym/finite_n/skew_moments.hpp"

namespace gaussym::finite_n {

inline constexpr int skew_schema_version = 1;

/// Content-addressed key: potential kind, exact bit pattern of sigma, N, mantissa bits.
inline std::string skew_cache_key(PotentialKind kind, double sigma, int N, unsigned bits) {
    std::ostringstream os;
    os << to_string(kind) << "-s" << std::hex << std::bit_cast<std::uint64_t>(sigma) << std::dec << "-N" << N << "-b"
       << bits;
    return os.str();
}

inline nlohmann::json to_json(const SkewMomentMatrix& M) {
    precision_scope scope(M.mantissa_bits);
    nlohmann::json j;
    j["schema_version"] = skew_schema_version;
    j["type"] = "skew_moment_matrix";
    j["potential"] = std::string(to_string(M.potential));
    j["sigma"] = M.sigma;
    j["N"] = M.N;
    j["mantissa_bits"] = M.mantissa_bits;
    auto& rows = j["entries"] = nlohmann::json::array();
    auto& devs = j["deviation"] = nlohmann::json::array();
    for (int r = 0; r < M.N; ++r) {
        nlohmann::json row = nlohmann::json::array(), dev = nlohmann::json::array();
        for (int c = 0; c < M.N; ++c) {
            row.push_back(to_decimal(M(r, c)));
            dev.push_back(to_decimal(M.deviation[static_cast<std::size_t>(r) * M.N + c]));
        }
        rows.push_back(std::move(row));
        devs.push_back(std::move(dev));
    }
    return j;
}

inline SkewMomentMatrix skew_moments_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != skew_schema_version || j.at("type") != "skew_moment_matrix")
        throw invalid_input("not a skew_moment_matrix document of a supported schema version");
    SkewMomentMatrix M;
    M.potential = parse_potential(j.at("potential").get<std::string>());
    M.sigma = j.at("sigma").get<double>();
    M.N = j.at("N").get<int>();
    M.mantissa_bits = j.at("mantissa_bits").get<unsigned>();
    precision_scope scope(M.mantissa_bits);
    M.entries.reserve(static_cast<std::size_t>(M.N) * M.N);
    M.deviation.reserve(static_cast<std::size_t>(M.N) * M.N);
    for (int r = 0; r < M.N; ++r)
        for (int c = 0; c < M.N; ++c) {
            M.entries.push_back(parse_xreal(j.at("entries").at(r).at(c).get<std::string>()));
            M.deviation.push_back(parse_xreal(j.at("deviation").at(r).at(c).get<std::string>()));
        }
    return M;
}

inline nlohmann::json to_json(const SkewBasis& B) {
    precision_scope scope(B.mantissa_bits);
    nlohmann::json j;
    j["schema_version"] = skew_schema_version;
    j["type"] = "skew_basis";
    j["N"] = B.N;
    j["mantissa_bits"] = B.mantissa_bits;
    j["defect"] = to_decimal(B.defect);
    j["lost_bits"] = B.lost_bits;
    auto& rows = j["coeffs"] = nlohmann::json::array();
    for (int r = 0; r < B.N; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c <= r; ++c) row.push_back(to_decimal(B.coeff(r, c)));
        rows.push_back(std::move(row));
    }
    auto& lead = j["leading"] = nlohmann::json::array();
    for (const auto& a : B.leading) lead.push_back(to_decimal(a));
    return j;
}

inline SkewBasis skew_basis_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != skew_schema_version || j.at("type") != "skew_basis")
        throw invalid_input("not a skew_basis document of a supported schema version");
    SkewBasis B;
    B.N = j.at("N").get<int>();
    B.mantissa_bits = j.at("mantissa_bits").get<unsigned>();
    precision_scope scope(B.mantissa_bits);
    B.defect = parse_xreal(j.at("defect").get<std::string>());
    B.lost_bits = j.at("lost_bits").get<double>();
    B.coeffs.assign(static_cast<std::size_t>(B.N) * B.N, xreal(0));
    for (int r = 0; r < B.N; ++r)
        for (int c = 0; c <= r; ++c)
            B.coeffs[static_cast<std::size_t>(r) * B.N + c] = parse_xreal(j.at("coeffs").at(r).at(c).get<std::string>());
    for (const auto& a : j.at("leading")) B.leading.push_back(parse_xreal(a.get<std::string>()));
    return B;
}

/// Directory of cached moment matrices, one JSON file per key, guarded by flock.
class SkewCache {
public:
    explicit SkewCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<SkewMomentMatrix> load(PotentialKind kind, double sigma, int N, unsigned bits) const {
        const auto path = file_for(kind, sigma, N, bits);
        FileLock lock(lock_path(), FileLock::Mode::shared);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        try {
            auto M = skew_moments_from_json(nlohmann::json::parse(in));
            if (M.potential != kind || M.sigma != sigma || M.N != N || M.mantissa_bits != bits) return std::nullopt;
            return M;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void store(const SkewMomentMatrix& M) const {
        const auto path = file_for(M.potential, M.sigma, M.N, M.mantissa_bits);
        FileLock lock(lock_path(), FileLock::Mode::exclusive);
        const auto tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp);
            out << to_json(M).dump(1) << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path lock_path() const { return dir_ / ".lock"; }
    std::filesystem::path file_for(PotentialKind kind, double sigma, int N, unsigned bits) const {
        return dir_ / (skew_cache_key(kind, sigma, N, bits) + ".json");
    }

    std::filesystem::path dir_;
};

} // namespace gaussym::finite_n

#endif
