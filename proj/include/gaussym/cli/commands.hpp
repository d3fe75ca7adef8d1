#ifndef GAUSSYM_CLI_COMMANDS_HPP
#define GAUSSYM_CLI_COMMANDS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gaussym/cli/cache.hpp"
#include "gaussym/cli/manifest.hpp"
#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/prefactor.hpp"
#include "gaussym/finite_n/closed_form.hpp"
#include "gaussym/finite_n/direct_quadrature.hpp"
#include "gaussym/finite_n/serialize.hpp"
#include "gaussym/finite_n/skew_partition.hpp"
#include "gaussym/large_n/export.hpp"
#include "gaussym/large_n/free_energy.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/saddle.hpp"
#include "gaussym/large_n/siegel_solver.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"
#include "gaussym/montecarlo/density.hpp"
#include "gaussym/montecarlo/importance.hpp"
#include "gaussym/montecarlo/io.hpp"
#include "gaussym/verify/acceptance.hpp"

namespace gaussym::cli {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CacheOptions {
    std::string dir; // empty: fall back to $GAUSSYM_CACHE_DIR
    bool disabled = false;

    std::optional<ResultCache> open() const {
        if (disabled) return std::nullopt;
        if (auto d = resolve_cache_dir(dir)) return ResultCache(*d);
        return std::nullopt;
    }
};

inline std::string display(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// ---------------------------------------------------------------- partition

struct PartitionArgs {
    std::string space = "pdc";
    int N = 2;
    double sigma = 0.5;
    std::string method = "auto";
    std::optional<double> beta;
    double omega = 1.0;
    double vol = 1.0;
    bool no_prefactor = false;
    std::int64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    int grid = 64;
};

inline const char* compatibility_matrix() {
    return "method  spaces                  N\n"
           "closed  pdc                     any\n"
           "skew    pdr, siegel             even, <= 24\n"
           "mc      pdr, pdc, pdq, siegel   any (samples >= 1000)\n"
           "quad    pdr, pdc, pdq, siegel   <= 4\n"
           "largen  pdr, pdc, pdq, siegel   any (siegel: natural beta only)\n"
           "auto    closed > skew > largen by availability\n"
           "A --beta different from the space's natural index is accepted by largen only.\n";
}

inline EnsembleSpec partition_spec(const PartitionArgs& a) {
    Space space;
    try {
        space = parse_space(a.space);
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
    EnsembleSpec spec{space, a.N, a.sigma, natural_beta(space), false};
    if (a.beta && *a.beta != spec.beta) {
        spec.beta = *a.beta;
        spec.generalized_beta = true;
    }
    try {
        spec.validate();
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
    return spec;
}

/// Resolves "auto" and checks the method against the compatibility matrix.
inline std::string resolve_method(const std::string& method, const EnsembleSpec& spec) {
    const bool skew_ok = (spec.space == Space::pd_real || spec.space == Space::siegel) && spec.N % 2 == 0 &&
                         spec.N <= finite_n::skew_route_max_N;
    const bool largen_ok = is_pd(spec.space) || !spec.generalized_beta;
    if (method == "auto") {
        if (spec.generalized_beta) {
            if (largen_ok) return "largen";
        } else if (spec.space == Space::pd_complex) {
            return "closed";
        } else if (skew_ok) {
            return "skew";
        } else {
            return "largen";
        }
        throw usage_error("no method available for this configuration");
    }
    bool ok = false;
    if (method == "closed") ok = spec.space == Space::pd_complex && !spec.generalized_beta;
    else if (method == "skew") ok = skew_ok && !spec.generalized_beta;
    else if (method == "mc") ok = !spec.generalized_beta;
    else if (method == "quad") ok = spec.N <= finite_n::direct_quadrature_max_N && !spec.generalized_beta;
    else if (method == "largen") ok = largen_ok;
    else throw usage_error("unknown method '" + method + "'");
    if (!ok)
        throw usage_error("method '" + method + "' is not available for space " + std::string(to_string(spec.space)) +
                          ", N=" + std::to_string(spec.N));
    return method;
}

inline nlohmann::json partition_config(const PartitionArgs& a, const EnsembleSpec& spec, const std::string& method) {
    nlohmann::json c{{"space", std::string(to_string(spec.space))},
                     {"N", spec.N},
                     {"sigma", spec.sigma},
                     {"beta", spec.beta},
                     {"method", method},
                     {"omega_beta_N", a.omega},
                     {"vol_UN", a.vol},
                     {"include_prefactor", !a.no_prefactor}};
    if (method == "mc") {
        c["samples"] = a.samples;
        c["seed"] = a.seed.value_or(0);
    }
    if (method == "quad") c["grid"] = a.grid;
    return c;
}

/// Large-N value: N^2 (beta/2) F_uni(beta t/2) on PD spaces, N^2 F_S(t) on the Siegel domain.
inline PartitionResult large_n_partition(const EnsembleSpec& spec, const PrefactorConvention& conv) {
    const double n2 = static_cast<double>(spec.N) * spec.N;
    if (is_pd(spec.space)) {
        const auto f = large_n::reduced_free_energy_pd(spec.beta, spec.t());
        return assemble_result(spec, conv, n2 * f.value, Method::large_n, n2 * f.error);
    }
    const auto sol = large_n::siegel_saddle_solve(spec.t());
    const auto f = large_n::siegel_free_energy(sol.field);
    return assemble_result(spec, conv, n2 * f.value, Method::large_n, n2 * f.error);
}

/// Result JSON text. Deterministic runs (and mc with a pinned seed) are served from the cache.
inline std::string run_partition(const PartitionArgs& a, const CacheOptions& cache_opt = {}) {
    const auto spec = partition_spec(a);
    const std::string method = resolve_method(a.method, spec);
    if (method == "mc" && a.samples < 1000) throw usage_error("mc needs --samples >= 1000");
    if (method == "quad" && a.grid < 8) throw usage_error("quad needs --grid >= 8");
    PrefactorConvention conv{a.omega, a.vol, !a.no_prefactor};
    try {
        conv.validate();
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }

    const auto config = partition_config(a, spec, method);
    const bool cacheable = method != "mc" || a.seed.has_value();
    const auto cache = cache_opt.open();
    const std::string key = config_hash("partition", config);
    if (cache && cacheable)
        if (auto hit = cache->load(key, "result.json")) return *hit;

    PartitionResult r;
    std::string warning;
    std::optional<std::uint64_t> seed;
    if (method == "closed") {
        r = finite_n::z2_closed_form(spec.N, spec.sigma, conv);
    } else if (method == "skew") {
        finite_n::SkewRouteOptions so;
        std::optional<finite_n::SkewCache> skew_cache;
        if (cache) {
            skew_cache.emplace(cache->dir() / "skew");
            so.cache = &*skew_cache;
        }
        r = finite_n::skew_route(spec, conv, so).result;
    } else if (method == "mc") {
        seed = a.seed.value_or(0);
        const auto est = mc::mc_log_partition(spec, a.samples, *seed);
        r = assemble_result(spec, conv, log_reduced_from_integral(spec, est.log_value), Method::monte_carlo,
                            est.std_error);
        warning = est.warning;
    } else if (method == "quad") {
        r = finite_n::direct_quadrature_logZ(spec, a.grid, conv);
    } else {
        r = large_n_partition(spec, conv);
        warning = "large-N leading order; error_estimate covers quadrature only, not the O(1) genus corrections";
    }

    const auto manifest = make_manifest("partition", config, seed);
    nlohmann::json j{{"schema_version", schema_version},
                     {"space", std::string(to_string(spec.space))},
                     {"N", spec.N},
                     {"sigma", spec.sigma},
                     {"beta", spec.beta},
                     {"t", spec.t()},
                     {"method", std::string(to_string(r.method))},
                     {"log_value", r.log_value},
                     {"log_value_display", display(r.log_value)},
                     {"std_error", r.error_estimate},
                     {"convention",
                      {{"omega_beta_N", r.convention.omega_beta_N},
                       {"vol_UN", r.convention.vol_UN},
                       {"include_prefactor", r.convention.include_prefactor}}},
                     {"manifest_ref", manifest.config_hash},
                     {"manifest", to_json(manifest)}};
    if (!warning.empty()) j["warning"] = warning;
    std::string text = j.dump(2) + "\n";
    if (cache && cacheable) cache->store(key, "result.json", text);
    return text;
}

// ---------------------------------------------------------------- masterfield

struct MasterFieldArgs {
    std::string kind = "SW";
    double t = 0.25;
    std::optional<double> beta; // default: 2 for Q and SW, 1 for S
    int grid = 512;
    std::string out;
    int basis = 24;
    int collocation = 48;
};

struct MasterFieldOutput {
    std::string csv;
    std::string meta; // JSON sidecar text
};

inline MasterFieldOutput run_masterfield(const MasterFieldArgs& a, const CacheOptions& cache_opt = {}) {
    PotentialKind kind;
    try {
        kind = parse_potential(a.kind);
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
    if (a.grid < 2) throw usage_error("--grid must be at least 2");
    if (!(a.t > 0.0)) throw usage_error("--t must be positive");
    const double beta = a.beta.value_or(kind == PotentialKind::s ? 1.0 : 2.0);
    if (!(beta > 0.0)) throw usage_error("--beta must be positive");

    nlohmann::json config{{"kind", std::string(to_string(kind))}, {"t", a.t}, {"beta", beta}, {"grid", a.grid}};
    if (kind == PotentialKind::s) config["solver"] = {{"basis_size", a.basis}, {"collocation", a.collocation}};
    const auto cache = cache_opt.open();
    const std::string key = config_hash("masterfield", config);
    if (cache) {
        auto csv = cache->load(key, "field.csv");
        auto meta = cache->load(key, "field.json");
        if (csv && meta) return {*csv, *meta};
    }

    nlohmann::json extra{{"beta", beta}, {"t_input", a.t}};
    std::optional<large_n::MasterField> field;
    if (kind == PotentialKind::s) {
        large_n::SiegelOptions so;
        so.basis_size = a.basis;
        so.collocation = a.collocation;
        so.beta = beta;
        if (so.basis_size < 4 || so.collocation < so.basis_size + 1)
            throw usage_error("need --basis >= 4 and --collocation >= basis + 1");
        auto sol = large_n::siegel_saddle_solve(a.t, so);
        extra["residual"] = sol.max_residual;
        extra["solver"] = {{"basis_size", so.basis_size},
                           {"collocation", so.collocation},
                           {"iterations", sol.iterations},
                           {"b", sol.b},
                           {"residual_history", sol.residual_history}};
        field.emplace(std::move(sol.field));
    } else {
        const double tt = beta * a.t / 2.0;
        field.emplace(kind == PotentialKind::q ? large_n::master_field_q(tt) : large_n::master_field_sw(tt));
        double res = 0.0;
        for (const auto& p : large_n::saddle_residual(*field, 2.0, large_n::interior_probes(*field, 10)))
            res = std::max(res, std::abs(p.residual));
        extra["residual"] = res;
    }
    const auto manifest = make_manifest("masterfield", config);
    auto meta = large_n::field_metadata(*field);
    meta["grid"] = a.grid;
    meta.update(extra);
    meta["manifest_ref"] = manifest.config_hash;
    meta["manifest"] = to_json(manifest);

    std::ostringstream csv;
    large_n::write_field_csv(*field, a.grid, csv);
    MasterFieldOutput out{csv.str(), meta.dump(2) + "\n"};
    if (cache) {
        cache->store(key, "field.csv", out.csv);
        cache->store(key, "field.json", out.meta);
    }
    return out;
}

// ---------------------------------------------------------------- gas

struct GasArgs {
    std::string potential = "SW";
    int N = 64;
    double t = 0.25;
    double beta = 2.0;
    std::int64_t sweeps = 100'000;
    std::uint64_t seed = 1;
    double step = 0.0;
    std::int64_t stride = 0;
    double burn_in = 0.2;
    std::string out;
};

/// Runs the chain, optionally writes snapshots, and returns a JSON summary. For Q and SW the
/// summary includes the KS distance to the closed-form field at beta t / 2.
inline std::string run_gas(const GasArgs& a) {
    PotentialKind kind;
    try {
        kind = parse_potential(a.potential);
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
    if (a.N < 2 || a.sweeps < 1 || !(a.t > 0.0) || !(a.beta > 0.0) || a.step < 0.0 || !(a.burn_in >= 0.0 && a.burn_in < 1.0))
        throw usage_error("gas needs N >= 2, sweeps >= 1, t > 0, beta > 0, step >= 0, 0 <= burn-in < 1");
    mc::GasOptions o;
    o.sweeps = a.sweeps;
    o.seed = a.seed;
    o.step = a.step;
    o.stride_moves = a.stride;
    o.burn_in_fraction = a.burn_in;
    const auto run = mc::coulomb_metropolis(mc::initial_gas_state(kind, a.N, a.t, a.beta), o);
    if (!a.out.empty()) mc::write_snapshots(run, a.out);

    nlohmann::json config{{"potential", std::string(to_string(kind))}, {"N", a.N}, {"t", a.t}, {"beta", a.beta},
                          {"sweeps", a.sweeps}, {"step", a.step}, {"stride", a.stride}, {"burn_in", a.burn_in}};
    auto j = mc::run_metadata(run);
    if (kind != PotentialKind::s && run.snapshots() > 0) {
        const double tt = a.beta * a.t / 2.0;
        const auto f = kind == PotentialKind::q ? large_n::master_field_q(tt) : large_n::master_field_sw(tt);
        j["ks_distance"] = mc::ks_distance(run, [&](double x) { return f.cdf(x); });
    }
    const auto manifest = make_manifest("gas", config, a.seed);
    j["manifest_ref"] = manifest.config_hash;
    j["manifest"] = to_json(manifest);
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    std::string report; // JSON report path; empty prints only the summary lines
    verify::AcceptanceOptions options;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out) {
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw usage_error("unknown suite '" + a.suite + "' (suites: " + list + ")");
    }
    const auto results =
        verify::run_suite(a.suite, a.options, [&](const auto& c) { out << verify::format_line(c) << std::endl; });
    bool all = true;
    nlohmann::json criteria = nlohmann::json::array();
    for (const auto& c : results) {
        all = all && c.passed;
        criteria.push_back(verify::to_json(c));
    }
    if (!a.report.empty()) {
        nlohmann::json config{{"suite", a.suite},
                              {"mc_samples", a.options.mc_samples},
                              {"sweeps", a.options.sweeps},
                              {"gas_N", a.options.gas_N}};
        const auto manifest = make_manifest("verify", config, a.options.seed);
        nlohmann::json j{{"schema_version", schema_version}, {"suite", a.suite},   {"passed", all},
                         {"criteria", criteria},             {"manifest_ref", manifest.config_hash},
                         {"manifest", to_json(manifest)}};
        std::ofstream(a.report) << j.dump(2) << '\n';
    }
    return all ? exit_ok : exit_failure;
}

} // namespace gaussym::cli

#endif
