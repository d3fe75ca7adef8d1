#ifndef GAUSSYM_MONTECARLO_COULOMB_GAS_HPP
#define GAUSSYM_MONTECARLO_COULOMB_GAS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/potential.hpp"
#include "gaussym/montecarlo/philox.hpp"

namespace gaussym::mc {

/// N charges in the potential with logarithmic repulsion of strength beta,
/// target density  exp(-sum V(l_i; sigma) + beta sum_{i<j} log|l_i - l_j|),  sigma^2 = t/N.
struct GasState {
    PotentialKind kind = PotentialKind::sw;
    double t = 1.0;
    double beta = 2.0;
    std::vector<double> particles;

    int N() const { return static_cast<int>(particles.size()); }

    void validate() const {
        if (!(t > 0.0) || !(beta > 0.0)) throw invalid_input("gas needs t > 0 and beta > 0");
        const auto dom = Potential{kind}.domain();
        for (double x : particles)
            if (!(x > dom.lo && x < dom.hi)) throw invalid_input("gas particle outside the open domain");
        auto sorted = particles;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw invalid_input("gas particles must be distinct");
    }
};

/// Evenly spread start near the potential minimum at the scale of the expected support.
inline GasState initial_gas_state(PotentialKind kind, int N, double t, double beta) {
    GasState g{kind, t, beta, std::vector<double>(N)};
    const double w = std::sqrt(beta * t / 2.0);
    for (int i = 0; i < N; ++i) {
        const double f = (i + 0.5) / N;
        switch (kind) {
        case PotentialKind::q: g.particles[i] = 2.0 * w * (2.0 * f - 1.0); break;
        case PotentialKind::sw: g.particles[i] = std::exp(2.0 * w * (2.0 * f - 1.0)); break;
        case PotentialKind::s: g.particles[i] = 1.0 + 8.0 * beta * t * f; break;
        }
    }
    return g;
}

struct GasOptions {
    std::int64_t sweeps = 100000;
    double step = 0.0;              // initial proposal width in the move coordinate; 0 picks a default
    std::uint64_t seed = 1;
    double burn_in_fraction = 0.2;
    std::int64_t stride_moves = 0;  // moves between snapshots; 0 means N (one sweep)
    bool auto_tune = true;
    std::int64_t tune_window = 50;  // sweeps between step updates during burn-in
    double target_acceptance = 0.4;
    double min_acceptance = 0.1;
    double max_acceptance = 0.7;
};

struct GasRun {
    PotentialKind kind = PotentialKind::sw;
    double t = 0.0;
    double beta = 0.0;
    int N = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples; // snapshots, row-major
    double acceptance_rate = 0.0;
    double step = 0.0;
    std::int64_t collisions_rejected = 0;
    GasState final_state;

    std::size_t snapshots() const { return N ? samples.size() / static_cast<std::size_t>(N) : 0; }
    std::span<const double> snapshot(std::size_t i) const {
        return std::span<const double>(samples).subspan(i * static_cast<std::size_t>(N), static_cast<std::size_t>(N));
    }
    GasState snapshot_state(std::size_t i) const {
        const auto s = snapshot(i);
        return GasState{kind, t, beta, std::vector<double>(s.begin(), s.end())};
    }
};

namespace detail {

// Multiplicative moves for SW (in log l) and S (in log(l - 1)); additive for Q.
inline double propose(PotentialKind kind, double x, double delta) {
    switch (kind) {
    case PotentialKind::sw: return x * std::exp(delta);
    case PotentialKind::s: return 1.0 + (x - 1.0) * std::exp(delta);
    case PotentialKind::q: return x + delta;
    }
    return x;
}

// log of the Jacobian ratio for the move coordinate
inline double log_jacobian_ratio(PotentialKind kind, double from, double to) {
    switch (kind) {
    case PotentialKind::sw: return std::log(to / from);
    case PotentialKind::s: return std::log((to - 1.0) / (from - 1.0));
    case PotentialKind::q: return 0.0;
    }
    return 0.0;
}

inline double default_step(PotentialKind kind, int N, double t, double beta) {
    const double scale = kind == PotentialKind::s ? 1.0 : std::sqrt(beta * t / 2.0);
    return 2.0 * scale / std::max(N, 1);
}

} // namespace detail

/// log Metropolis-Hastings ratio for moving particle k of `particles` to `proposed`
/// (target ratio times the move-coordinate Jacobian); -inf on collision.
inline double log_acceptance(PotentialKind kind, double t, double beta, std::span<const double> particles, int k,
                             double proposed) {
    const int N = static_cast<int>(particles.size());
    const double sigma = std::sqrt(t / N);
    const Potential pot{kind};
    const double from = particles[k];
    double l = pot.eval(from, sigma) - pot.eval(proposed, sigma) + detail::log_jacobian_ratio(kind, from, proposed);
    double prod = 1.0;
    double logsum = 0.0;
    int block = 0;
    for (int j = 0; j < N; ++j) {
        if (j == k) continue;
        const double num = std::abs(proposed - particles[j]);
        if (num == 0.0) return -std::numeric_limits<double>::infinity();
        prod *= num / std::abs(from - particles[j]);
        if (++block == 16) {
            logsum += std::log(prod);
            prod = 1.0;
            block = 0;
        }
    }
    logsum += std::log(prod);
    return l + beta * logsum;
}

/// Single-particle Metropolis chain for the Coulomb gas.
///
/// Burn-in tunes the step towards `target_acceptance`; production acceptance must
/// land in [min_acceptance, max_acceptance] or tuning_failure is thrown.
inline GasRun coulomb_metropolis(const GasState& initial, const GasOptions& opt) {
    initial.validate();
    const int N = initial.N();
    if (N < 2) throw invalid_input("coulomb_metropolis needs N >= 2");
    if (opt.sweeps < 1) throw invalid_input("coulomb_metropolis needs at least one sweep");
    if (opt.step < 0.0) throw invalid_input("step must be positive");

    const PotentialKind kind = initial.kind;
    Philox4x32 rng(opt.seed);
    std::vector<double> x = initial.particles;
    double step = opt.step > 0.0 ? opt.step : detail::default_step(kind, N, initial.t, initial.beta);
    const std::int64_t burn = static_cast<std::int64_t>(opt.burn_in_fraction * opt.sweeps);
    const std::int64_t stride = opt.stride_moves > 0 ? opt.stride_moves : N;

    GasRun run;
    run.kind = kind;
    run.t = initial.t;
    run.beta = initial.beta;
    run.N = N;
    run.seed = opt.seed;
    const std::int64_t production_moves = (opt.sweeps - burn) * N;
    run.samples.reserve(static_cast<std::size_t>(production_moves / stride) * N);

    std::int64_t window_accepts = 0, window_moves = 0;
    std::int64_t accepts = 0, moves = 0, since_snapshot = 0;
    for (std::int64_t sweep = 0; sweep < opt.sweeps; ++sweep) {
        const bool production = sweep >= burn;
        for (int k = 0; k < N; ++k) {
            const double delta = step * (2.0 * rng.uniform() - 1.0);
            const double proposed = detail::propose(kind, x[k], delta);
            const double la = log_acceptance(kind, initial.t, initial.beta, x, k, proposed);
            bool accept = false;
            if (la == -std::numeric_limits<double>::infinity()) {
                ++run.collisions_rejected;
                rng.uniform();
            } else {
                accept = la >= 0.0 || std::log(rng.uniform()) < la;
            }
            if (accept) x[k] = proposed;
            if (production) {
                accepts += accept;
                ++moves;
                if (++since_snapshot == stride) {
                    run.samples.insert(run.samples.end(), x.begin(), x.end());
                    since_snapshot = 0;
                }
            } else {
                window_accepts += accept;
                ++window_moves;
            }
        }
        if (!production && opt.auto_tune && (sweep + 1) % opt.tune_window == 0) {
            const double rate = static_cast<double>(window_accepts) / static_cast<double>(window_moves);
            step *= std::exp(2.0 * (rate - opt.target_acceptance));
            window_accepts = window_moves = 0;
        }
    }
    run.acceptance_rate = moves ? static_cast<double>(accepts) / static_cast<double>(moves) : 0.0;
    run.step = step;
    run.final_state = GasState{kind, initial.t, initial.beta, x};
    if (moves && (run.acceptance_rate < opt.min_acceptance || run.acceptance_rate > opt.max_acceptance))
        throw tuning_failure("acceptance rate " + std::to_string(run.acceptance_rate) + " outside [" +
                                 std::to_string(opt.min_acceptance) + ", " + std::to_string(opt.max_acceptance) +
                                 "] after tuning",
                             run.acceptance_rate);
    return run;
}

} // namespace gaussym::mc

#endif
