#ifndef GAUSSYM_MONTECARLO_IO_HPP
#define GAUSSYM_MONTECARLO_IO_HPP

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <string>

#include <json.hpp>

#include "gaussym/core/errors.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"
#include "gaussym/montecarlo/philox.hpp"

namespace gaussym::mc {

inline nlohmann::json run_metadata(const GasRun& run) {
    return {{"schema_version", 1},
            {"potential", to_string(run.kind)},
            {"N", run.N},
            {"t", run.t},
            {"beta", run.beta},
            {"seed", run.seed},
            {"rng", std::string(Philox4x32::version)},
            {"snapshots", run.snapshots()},
            {"acceptance_rate", run.acceptance_rate},
            {"step", run.step},
            {"collisions_rejected", run.collisions_rejected}};
}

/// One snapshot per CSV row; metadata goes to "<path>.json".
inline void write_snapshots(const GasRun& run, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot open " + path.string());
    out << std::setprecision(17);
    for (std::size_t s = 0; s < run.snapshots(); ++s) {
        const auto row = run.snapshot(s);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    std::ofstream meta(path.string() + ".json");
    meta << run_metadata(run).dump(2) << '\n';
}

} // namespace gaussym::mc

#endif
