#ifndef GAUSSYM_VERIFY_ACCEPTANCE_HPP
#define GAUSSYM_VERIFY_ACCEPTANCE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/hash.hpp"
#include "gaussym/core/prefactor.hpp"
#include "gaussym/finite_n/closed_form.hpp"
#include "gaussym/finite_n/direct_quadrature.hpp"
#include "gaussym/finite_n/skew_partition.hpp"
#include "gaussym/large_n/free_energy.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/saddle.hpp"
#include "gaussym/large_n/siegel_solver.hpp"
#include "gaussym/large_n/trilog.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"
#include "gaussym/montecarlo/density.hpp"
#include "gaussym/montecarlo/importance.hpp"

namespace gaussym::verify {

struct Measurement {
    std::string label;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string summary;
    std::vector<Measurement> measurements;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::int64_t mc_samples = 1'000'000;
    std::int64_t sweeps = 100'000;
    int gas_N = 64;
    std::uint64_t seed = 20240917;
};

/// Bit-level fingerprints of every stochastic output, in production order.
struct DigestLog {
    std::vector<std::pair<std::string, std::uint64_t>> entries;
    void add(std::string label, std::uint64_t h) { entries.emplace_back(std::move(label), h); }
};

namespace detail {

inline std::uint64_t digest(const mc::McEstimate& e) {
    Fnv1a h;
    h.add(e.log_value);
    h.add(e.std_error);
    h.add(e.effective_sample_size);
    h.add(e.n_samples);
    return h.value();
}

inline std::uint64_t digest(const mc::GasRun& r) {
    Fnv1a h;
    h.add(r.samples);
    h.add(r.acceptance_rate);
    h.add(r.step);
    h.add(r.collisions_rejected);
    return h.value();
}

inline Measurement at_most(std::string label, double value, double threshold) {
    return {std::move(label), value, threshold, value <= threshold};
}

inline std::string fmt(double x) {
    std::ostringstream o;
    o.precision(3);
    o << x;
    return o.str();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

inline CriterionResult start(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

inline void finish(CriterionResult& r, const Timer& t, std::string summary) {
    r.passed = !r.measurements.empty() &&
               std::all_of(r.measurements.begin(), r.measurements.end(), [](const auto& m) { return m.passed; });
    r.summary = std::move(summary);
    r.seconds = t.seconds();
}

inline double worst(const std::vector<Measurement>& ms, std::size_t from = 0) {
    double w = 0.0;
    for (std::size_t i = from; i < ms.size(); ++i) w = std::max(w, ms[i].value);
    return w;
}

// Stochastic producers, shared by the criteria and the determinism re-run.

struct McJob {
    Space space;
    double sigma;
};

inline std::vector<McJob> mc_jobs() {
    return {{Space::pd_real, 0.25}, {Space::pd_real, 0.5}, {Space::siegel, 0.25}, {Space::siegel, 0.5}};
}

inline mc::McEstimate run_mc(const McJob& j, const AcceptanceOptions& opt) {
    return mc::mc_log_partition(EnsembleSpec::make(j.space, 4, j.sigma), opt.mc_samples, opt.seed);
}

struct GasJob {
    std::string label;
    PotentialKind kind;
    double beta;
    double t;
};

inline std::vector<GasJob> universality_jobs() {
    std::vector<GasJob> jobs;
    for (double b : {1.0, 2.0, 4.0}) jobs.push_back({"Q beta=" + fmt(b), PotentialKind::q, b, 0.25});
    for (double b : {1.0, 2.0, 4.0}) jobs.push_back({"SW beta=" + fmt(b), PotentialKind::sw, b, 0.25});
    return jobs;
}

inline std::vector<GasJob> siegel_jobs() {
    return {{"S t=0.1", PotentialKind::s, 1.0, 0.1}, {"S t=0.25", PotentialKind::s, 1.0, 0.25}};
}

inline mc::GasRun run_gas(const GasJob& j, const AcceptanceOptions& opt) {
    mc::GasOptions g;
    g.sweeps = opt.sweeps;
    g.seed = opt.seed;
    return mc::coulomb_metropolis(mc::initial_gas_state(j.kind, opt.gas_N, j.t, j.beta), g);
}

} // namespace detail

/// 1. Closed form against direct quadrature for N in {1,2,3}, sigma in {0.25,0.5,1}.
inline CriterionResult closed_form_vs_quadrature() {
    detail::Timer timer;
    auto r = detail::start(1, "closed form vs direct quadrature");
    PrefactorConvention conv;
    conv.include_prefactor = false;
    for (int N : {1, 2, 3})
        for (double s : {0.25, 0.5, 1.0}) {
            const auto c = finite_n::z2_closed_form(N, s, conv);
            const auto q = finite_n::direct_quadrature_logZ(EnsembleSpec::make(Space::pd_complex, N, s), 64, conv);
            const double rel = std::abs(c.log_value - q.log_value) / std::abs(c.log_value);
            r.measurements.push_back(detail::at_most("N=" + std::to_string(N) + " sigma=" + detail::fmt(s), rel, 1e-6));
        }
    detail::finish(r, timer, "max rel err " + detail::fmt(detail::worst(r.measurements)) + " (tol 1e-6)");
    return r;
}

/// 2. Skew route against quadrature (N=2, rel 1e-4) and importance sampling (N=4, 3 std errors).
inline CriterionResult skew_route_agreement(const AcceptanceOptions& opt = {}, DigestLog* log = nullptr) {
    detail::Timer timer;
    auto r = detail::start(2, "skew route vs quadrature and Monte Carlo");
    PrefactorConvention conv;
    conv.include_prefactor = false;
    double worst_rel = 0.0, worst_z = 0.0;
    for (auto space : {Space::pd_real, Space::siegel})
        for (double s : {0.25, 0.5}) {
            const auto spec = EnsembleSpec::make(space, 2, s);
            const auto k = finite_n::skew_route(spec, conv).result;
            const auto q = finite_n::direct_quadrature_logZ(spec, 64, conv);
            const double rel = std::abs(k.log_value - q.log_value) / std::abs(q.log_value);
            worst_rel = std::max(worst_rel, rel);
            r.measurements.push_back(
                detail::at_most(std::string(to_string(space)) + " N=2 sigma=" + detail::fmt(s) + " rel", rel, 1e-4));
        }
    for (const auto& job : detail::mc_jobs()) {
        const auto spec = EnsembleSpec::make(job.space, 4, job.sigma);
        const auto k = finite_n::skew_route(spec, conv).result;
        const auto est = detail::run_mc(job, opt);
        if (log) log->add("mc " + std::string(to_string(job.space)) + " sigma=" + detail::fmt(job.sigma), detail::digest(est));
        const double mc_reduced = log_reduced_from_integral(spec, est.log_value);
        const double z = std::abs(mc_reduced - k.log_value) / est.std_error;
        worst_z = std::max(worst_z, z);
        r.measurements.push_back(
            detail::at_most(std::string(to_string(job.space)) + " N=4 sigma=" + detail::fmt(job.sigma) + " |z|", z, 3.0));
    }
    detail::finish(r, timer,
                   "N=2 max rel err " + detail::fmt(worst_rel) + " (tol 1e-4), N=4 max |z| " + detail::fmt(worst_z) +
                       " (tol 3)");
    return r;
}

/// 3. Saddle residuals of the semicircle (< 1e-6) and the SW field (< 1e-5), t in {0.1,0.25,1}.
inline CriterionResult saddle_gates() {
    detail::Timer timer;
    auto r = detail::start(3, "saddle-point residuals of closed-form fields");
    double wq = 0.0, wsw = 0.0;
    for (double t : {0.1, 0.25, 1.0}) {
        for (auto [field, tol] : {std::pair{large_n::master_field_q(t), 1e-6}, std::pair{large_n::master_field_sw(t), 1e-5}}) {
            const auto probes = large_n::interior_probes(field, 10);
            double m = 0.0;
            bool rejected = false;
            for (const auto& p : large_n::saddle_residual(field, 2.0, probes)) {
                rejected = rejected || p.rejected;
                m = std::max(m, std::abs(p.residual));
            }
            if (rejected) m = std::numeric_limits<double>::infinity();
            double& w = field.kind() == PotentialKind::q ? wq : wsw;
            w = std::max(w, m);
            r.measurements.push_back(
                detail::at_most(std::string(to_string(field.kind())) + " t=" + detail::fmt(t), m, tol));
        }
    }
    detail::finish(r, timer,
                   "max residual Q " + detail::fmt(wq) + " (tol 1e-6), SW " + detail::fmt(wsw) + " (tol 1e-5)");
    return r;
}

/// 4. Delta_N = |(1/N^2) log Z~_2 - F_uni(t)| shrinks by a ratio in [0.15, 0.4] per doubling of N.
inline CriterionResult genus_convergence() {
    detail::Timer timer;
    auto r = detail::start(4, "genus-expansion convergence");
    PrefactorConvention conv;
    conv.include_prefactor = false;
    double lo = 1.0, hi = 0.0;
    for (double t : {0.25, 1.0}) {
        const double F = large_n::f_uni(t).value;
        std::vector<double> delta;
        for (int N : {16, 32, 64}) {
            const auto z = finite_n::z2_closed_form(N, std::sqrt(t / N), conv);
            delta.push_back(std::abs(z.log_value / (double(N) * N) - F));
        }
        for (std::size_t i = 0; i + 1 < delta.size(); ++i) {
            const double ratio = delta[i + 1] / delta[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            Measurement m{"t=" + detail::fmt(t) + " N=" + std::to_string(16 << i) + "->" + std::to_string(32 << i),
                          ratio, 0.4, ratio >= 0.15 && ratio <= 0.4};
            r.measurements.push_back(m);
        }
    }
    detail::finish(r, timer, "ratios in [" + detail::fmt(lo) + ", " + detail::fmt(hi) + "] (band [0.15, 0.4])");
    return r;
}

/// 5. KS distance <= 0.08 between N=64 gases and rho^Q_{beta t/2}, rho^SW_{beta t/2} at t = 0.25.
inline CriterionResult coulomb_gas_empirics(const AcceptanceOptions& opt = {}, DigestLog* log = nullptr) {
    detail::Timer timer;
    auto r = detail::start(5, "Coulomb gas vs master fields");
    for (const auto& job : detail::universality_jobs()) {
        const auto run = detail::run_gas(job, opt);
        if (log) log->add("gas " + job.label, detail::digest(run));
        const double tt = job.beta * job.t / 2.0;
        const auto field = job.kind == PotentialKind::q ? large_n::master_field_q(tt) : large_n::master_field_sw(tt);
        const double ks = mc::ks_distance(run, [&](double x) { return field.cdf(x); });
        r.measurements.push_back(detail::at_most(job.label + " KS", ks, 0.08));
    }
    detail::finish(r, timer, "max KS " + detail::fmt(detail::worst(r.measurements)) + " (tol 0.08)");
    return r;
}

/// 6. Siegel solver: positivity, mass, off-collocation residual, b(t) monotone, KS vs the S gas.
inline CriterionResult siegel_solver_checks(const AcceptanceOptions& opt = {}, DigestLog* log = nullptr) {
    detail::Timer timer;
    auto r = detail::start(6, "Siegel saddle solver");
    std::vector<double> bs;
    double worst_res = 0.0, worst_mass = 0.0, worst_ks = 0.0;
    for (double t : {0.01, 0.1, 0.25}) {
        const auto sol = large_n::siegel_saddle_solve(t);
        bs.push_back(sol.b);
        if (t == 0.01) continue;
        const auto& f = sol.field;
        double dmin = 0.0;
        for (int i = 1; i < 4000; ++i) dmin = std::min(dmin, f.density(1.0 + (sol.b - 1.0) * i / 4000.0));
        r.measurements.push_back({"t=" + detail::fmt(t) + " min density", dmin, 0.0, dmin >= 0.0});
        const double mass = std::abs(f.integrate([](double) { return 1.0; }, 1e-14).value - 1.0);
        worst_mass = std::max(worst_mass, mass);
        r.measurements.push_back(detail::at_most("t=" + detail::fmt(t) + " |mass-1|", mass, 1e-6));
        // probes on a uniform grid in lambda, not aligned with the Chebyshev collocation nodes
        std::vector<double> probes;
        for (int i = 0; i < 37; ++i) probes.push_back(1.0 + (sol.b - 1.0) * (0.02 + 0.96 * (i + 0.5) / 37.0));
        double res = 0.0;
        for (const auto& p : large_n::saddle_residual(f, 1.0, probes))
            res = std::max(res, p.rejected ? std::numeric_limits<double>::infinity() : std::abs(p.residual));
        worst_res = std::max(worst_res, res);
        r.measurements.push_back(detail::at_most("t=" + detail::fmt(t) + " residual", res, 1e-4));
    }
    const bool monotone = bs[0] < bs[1] && bs[1] < bs[2] && bs[0] - 1.0 < 0.1 * (bs[2] - 1.0);
    r.measurements.push_back({"b(0.01) < b(0.1) < b(0.25), b(0.01) -> 1", bs[0] - 1.0, bs[1] - 1.0, monotone});
    for (const auto& job : detail::siegel_jobs()) {
        const auto sol = large_n::siegel_saddle_solve(job.t);
        const auto run = detail::run_gas(job, opt);
        if (log) log->add("gas " + job.label, detail::digest(run));
        const double ks = mc::ks_distance(run, [&](double x) { return sol.field.cdf(x); });
        worst_ks = std::max(worst_ks, ks);
        r.measurements.push_back(detail::at_most(job.label + " KS", ks, 0.1));
    }
    detail::finish(r, timer,
                   "b(0.01,0.1,0.25) = " + detail::fmt(bs[0]) + ", " + detail::fmt(bs[1]) + ", " + detail::fmt(bs[2]) +
                       "; max residual " + detail::fmt(worst_res) + ", |mass-1| " + detail::fmt(worst_mass) +
                       ", KS " + detail::fmt(worst_ks));
    return r;
}

/// Independent p-series value of zeta(3): forward sum to 10^6 plus the midpoint of the tail bracket.
inline double zeta3_pseries_oracle() {
    constexpr long K = 1'000'000;
    long double s = 0.0L;
    for (long k = 1; k <= K; ++k) {
        const long double kk = k;
        s += 1.0L / (kk * kk * kk);
    }
    const long double lo = 1.0L / (2.0L * (K + 1.0L) * (K + 1.0L)), hi = 1.0L / (2.0L * K * K);
    return static_cast<double>(s + (lo + hi) / 2);
}

/// 7. trilog(1) = zeta(3) to 1e-12; at t = 20 the Li3(e^{-t}) piece of the asymptotic has vanished to 1e-8.
inline CriterionResult trilog_checks() {
    detail::Timer timer;
    auto r = detail::start(7, "trilogarithm");
    const double z = zeta3_pseries_oracle();
    const double d1 = std::abs(large_n::trilog(1.0) - z);
    r.measurements.push_back(detail::at_most("|trilog(1) - zeta(3)|", d1, 1e-12));
    double d2 = 0.0;
    for (int N : {1, 16, 64}) {
        const double t = 20.0;
        const double limit = -0.5 * std::log(2.0 * N / std::numbers::pi) + 0.75 + t / 6.0 + z / (t * t);
        d2 = std::max(d2, std::abs(large_n::z2_asymptotic(N, t) - limit));
    }
    r.measurements.push_back(detail::at_most("t=20 Li3 term", d2, 1e-8));
    detail::finish(r, timer, "|trilog(1)-zeta(3)| " + detail::fmt(d1) + " (tol 1e-12), t=20 deviation " +
                                 detail::fmt(d2) + " (tol 1e-8)");
    return r;
}

/// Runs every stochastic producer once, in the fixed order criteria 2, 5, 6 use.
inline DigestLog stochastic_digests(const AcceptanceOptions& opt = {}) {
    DigestLog log;
    for (const auto& job : detail::mc_jobs())
        log.add("mc " + std::string(to_string(job.space)) + " sigma=" + detail::fmt(job.sigma),
                detail::digest(detail::run_mc(job, opt)));
    for (const auto& job : detail::universality_jobs()) log.add("gas " + job.label, detail::digest(detail::run_gas(job, opt)));
    for (const auto& job : detail::siegel_jobs()) log.add("gas " + job.label, detail::digest(detail::run_gas(job, opt)));
    return log;
}

/// 8. Same seed, same bits: re-runs every stochastic producer and compares against `first`
/// (or against a second run when `first` is empty).
inline CriterionResult determinism(const AcceptanceOptions& opt = {}, const DigestLog& first = {}) {
    detail::Timer timer;
    auto r = detail::start(8, "seed determinism");
    const DigestLog a = first.entries.empty() ? stochastic_digests(opt) : first;
    const DigestLog b = stochastic_digests(opt);
    int mismatches = 0;
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
        const bool same = i < a.entries.size() && a.entries[i] == b.entries[i];
        mismatches += !same;
        r.measurements.push_back({b.entries[i].first + " identical", same ? 0.0 : 1.0, 0.0, same});
    }
    if (a.entries.size() != b.entries.size()) r.measurements.push_back({"run count", 1.0, 0.0, false});
    detail::finish(r, timer,
                   std::to_string(b.entries.size() - mismatches) + "/" + std::to_string(b.entries.size()) +
                       " stochastic outputs bit-identical");
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracles", "saddle",      "convergence", "universality",
                                                "siegel",  "determinism", "all"};
    return names;
}

/// Criteria grouped by suite: oracles = 1, 2, 7; saddle = 3; convergence = 4;
/// universality = 5; siegel = 6; determinism = 8; all = 1..8.
inline std::vector<CriterionResult> run_suite(const std::string& suite, const AcceptanceOptions& opt = {},
                                              const std::function<void(const CriterionResult&)>& on_result = {}) {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw invalid_input("unknown suite '" + suite + "'");
    std::vector<CriterionResult> out;
    auto emit = [&](CriterionResult c) {
        if (on_result) on_result(c);
        out.push_back(std::move(c));
    };
    const bool all = suite == "all";
    DigestLog log;
    if (all || suite == "oracles") {
        emit(closed_form_vs_quadrature());
        emit(skew_route_agreement(opt, &log));
    }
    if (all || suite == "saddle") emit(saddle_gates());
    if (all || suite == "convergence") emit(genus_convergence());
    if (all || suite == "universality") emit(coulomb_gas_empirics(opt, &log));
    if (all || suite == "siegel") emit(siegel_solver_checks(opt, &log));
    if (all || suite == "oracles") emit(trilog_checks());
    if (all || suite == "determinism") emit(determinism(opt, all ? log : DigestLog{}));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

inline nlohmann::json to_json(const CriterionResult& c) {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : c.measurements)
        ms.push_back({{"label", m.label}, {"value", m.value}, {"threshold", m.threshold}, {"passed", m.passed}});
    return {{"criterion", c.id},  {"name", c.name},       {"passed", c.passed},
            {"summary", c.summary}, {"seconds", c.seconds}, {"measurements", ms}};
}

inline std::string format_line(const CriterionResult& c) {
    std::ostringstream o;
    o << (c.passed ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << ": " << c.summary << "  ["
      << detail::fmt(c.seconds) << " s]";
    return o.str();
}

} // namespace gaussym::verify

#endif
