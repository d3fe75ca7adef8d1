#ifndef GAUSSYM_LARGE_N_EXPORT_HPP
#define GAUSSYM_LARGE_N_EXPORT_HPP

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gaussym/core/errors.hpp"
#include "gaussym/large_n/master_field.hpp"

namespace gaussym::large_n {

inline nlohmann::json field_metadata(const MasterField& mf) {
    return {{"schema_version", 1},
            {"kind", to_string(mf.kind())},
            {"t", mf.t()},
            {"support", {mf.support().lo, mf.support().hi}},
            {"source", to_string(mf.source())},
            {"mass", mf.mass()}};
}

/// `grid` samples at cell midpoints of a uniform partition of the support (so a hard edge is never hit).
inline void write_field_csv(const MasterField& mf, int grid, std::ostream& out) {
    if (grid < 2) throw invalid_input("master field grid must have at least 2 points");
    const auto [a, b] = mf.support();
    out << "lambda,rho\n" << std::setprecision(17);
    for (int i = 0; i < grid; ++i) {
        const double x = a + (b - a) * (i + 0.5) / grid;
        out << x << ',' << mf.density(x) << '\n';
    }
}

/// CSV to `path`, metadata (plus `extra`) to "<path>.json".
inline void export_master_field(const MasterField& mf, int grid, const std::filesystem::path& path,
                                const nlohmann::json& extra = nlohmann::json::object()) {
    if (grid < 2) throw invalid_input("master field grid must have at least 2 points");
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot open " + path.string());
    write_field_csv(mf, grid, out);
    auto meta = field_metadata(mf);
    meta["grid"] = grid;
    meta.update(extra);
    std::ofstream(path.string() + ".json") << meta.dump(2) << '\n';
}

} // namespace gaussym::large_n

#endif
