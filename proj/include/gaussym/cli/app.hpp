#ifndef GAUSSYM_CLI_APP_HPP
#define GAUSSYM_CLI_APP_HPP

#include <exception>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "gaussym/cli/commands.hpp"

namespace gaussym::cli {

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw usage_error("cannot open " + path);
    f << text;
}

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on failed verification or
/// computation, 2 on usage errors.
inline int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partition functions of Gaussian distributions on symmetric spaces"};
    app.set_version_flag("--version", std::string(GAUSSYM_VERSION));
    app.set_config("--config", "", "flat key = value file; command-line flags override it");
    app.require_subcommand(1);

    CacheOptions cache;
    app.add_option("--cache-dir", cache.dir, "result cache directory (default: $GAUSSYM_CACHE_DIR)");
    app.add_flag("--no-cache", cache.disabled, "bypass the result cache");

    PartitionArgs pa;
    std::string pa_out;
    auto* part = app.add_subcommand("partition", "log partition function of one ensemble");
    part->add_option("--space", pa.space, "pdr | pdc | pdq | siegel")->required();
    part->add_option("--N", pa.N, "matrix size")->required();
    part->add_option("--sigma", pa.sigma, "dispersion sigma > 0")->required();
    part->add_option("--method", pa.method, "auto | closed | skew | mc | quad | largen")->capture_default_str();
    part->add_option("--beta", pa.beta, "generalized Dyson index (largen only)");
    part->add_option("--omega", pa.omega, "omega_beta(N) constant")->capture_default_str();
    part->add_option("--vol", pa.vol, "vol(U(N)) constant")->capture_default_str();
    part->add_flag("--reduced", pa.no_prefactor, "report log of the prefactor-free part");
    part->add_option("--samples", pa.samples, "Monte Carlo samples")->capture_default_str();
    part->add_option("--seed", pa.seed, "Monte Carlo seed (pins the result for caching)");
    part->add_option("--grid", pa.grid, "quadrature points per axis")->capture_default_str();
    part->add_option("--out", pa_out, "result JSON path (default stdout)");

    MasterFieldArgs ma;
    auto* mf = app.add_subcommand("masterfield", "sample a master field on a uniform grid");
    mf->add_option("--kind", ma.kind, "Q | SW | S")->required();
    mf->add_option("--t", ma.t, "'t Hooft parameter")->required();
    mf->add_option("--beta", ma.beta, "Dyson index (default 2 for Q/SW, 1 for S)");
    mf->add_option("--grid", ma.grid, "number of samples (>= 2)")->capture_default_str();
    mf->add_option("--out", ma.out, "CSV path; metadata goes to <out>.json")->required();
    mf->add_option("--basis", ma.basis, "Siegel solver basis size")->capture_default_str();
    mf->add_option("--collocation", ma.collocation, "Siegel solver collocation nodes")->capture_default_str();

    GasArgs ga;
    std::string ga_summary;
    auto* gas = app.add_subcommand("gas", "Metropolis Coulomb gas");
    gas->add_option("--potential", ga.potential, "Q | SW | S")->required();
    gas->add_option("--N", ga.N, "particles")->capture_default_str();
    gas->add_option("--t", ga.t, "'t Hooft parameter")->capture_default_str();
    gas->add_option("--beta", ga.beta, "Dyson index")->capture_default_str();
    gas->add_option("--sweeps", ga.sweeps, "sweeps")->capture_default_str();
    gas->add_option("--seed", ga.seed, "seed")->capture_default_str();
    gas->add_option("--step", ga.step, "initial step (0: automatic)")->capture_default_str();
    gas->add_option("--stride", ga.stride, "moves between snapshots (0: N)")->capture_default_str();
    gas->add_option("--burn-in", ga.burn_in, "burn-in fraction")->capture_default_str();
    gas->add_option("--out", ga.out, "snapshot CSV path; metadata goes to <out>.json");
    gas->add_option("--summary", ga_summary, "summary JSON path (default stdout)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    ver->add_option("--suite", va.suite, "oracles | saddle | convergence | universality | siegel | determinism | all")
        ->capture_default_str();
    ver->add_option("--report", va.report, "JSON report path");
    ver->add_option("--sweeps", va.options.sweeps, "Coulomb gas sweeps")->capture_default_str();
    ver->add_option("--samples", va.options.mc_samples, "Monte Carlo samples")->capture_default_str();
    ver->add_option("--seed", va.options.seed, "seed for stochastic criteria")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*part) {
            write_text(pa_out, run_partition(pa, cache), out);
        } else if (*mf) {
            const auto r = run_masterfield(ma, cache);
            write_text(ma.out, r.csv, out);
            write_text(ma.out + ".json", r.meta, out);
        } else if (*gas) {
            write_text(ga_summary, run_gas(ga), out);
        } else if (*ver) {
            return run_verify(va, out);
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        if (*part) err << compatibility_matrix();
        return exit_usage;
    } catch (const solver_failure& e) {
        err << "error: " << e.what() << "\nresidual history:";
        for (double r : e.residual_history()) err << ' ' << r;
        err << (e.negative_density() ? "\n(negative density)\n" : "\n");
        return exit_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

} // namespace gaussym::cli

#endif
