#ifndef GAUSSYM_MONTECARLO_IMPORTANCE_HPP
#define GAUSSYM_MONTECARLO_IMPORTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/errors.hpp"
#include "gaussym/core/prefactor.hpp"
#include "gaussym/montecarlo/philox.hpp"

namespace gaussym::mc {

/// Importance-sampling estimate of log int prod w(u_i) |Delta(u)|^beta du.
struct McEstimate {
    double log_value = 0.0;
    double std_error = 0.0;      // on the log scale (delta method)
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    double effective_sample_size = 0.0;
    std::string warning;         // set when the proposal degenerates

    bool operator==(const McEstimate&) const = default;
};

/// Proposals are i.i.d. per coordinate, centred where the one-particle weight times the
/// mean-field growth of |Delta|^beta (a factor ~ e^{beta (N-1)/2 z} in the log coordinate z) peaks:
///   SW: z = log u ~ N(N_beta sigma^2, sigma^2)
///   S:  theta = |N(4 N_beta sigma^2, 4 sigma^2)|, u = cosh theta  (folded normal)
/// with N_beta = beta (N-1)/2 + 1. At N = 1 the SW proposal is exactly the normalized weight,
/// so the estimator has zero variance there.
inline McEstimate mc_log_partition(const EnsembleSpec& spec, std::int64_t n_samples, std::uint64_t seed) {
    spec.validate();
    if (n_samples < 1000) throw invalid_input("mc_log_partition needs at least 1000 samples");
    const int N = spec.N;
    const double s = spec.sigma;
    const double s2 = s * s;
    const double nb = n_beta(N, spec.beta);
    const double log_gauss_norm = std::log(std::sqrt(2.0 * std::numbers::pi) * s);
    Philox4x32 rng(seed);

    std::vector<double> logw(static_cast<std::size_t>(n_samples));
    std::vector<double> u(N);
    for (std::int64_t k = 0; k < n_samples; ++k) {
        double l = 0.0;
        for (int i = 0; i < N; ++i) {
            if (spec.space == Space::siegel) {
                // target e^{-theta^2/(8 s^2)} sinh theta dtheta
                const double mu = 4.0 * nb * s2;
                const double theta = std::abs(mu + 2.0 * s * rng.normal());
                const double a = (theta - mu) / (2.0 * s);
                const double log_q = -0.5 * a * a + std::log1p(std::exp(-2.0 * theta * mu / (4.0 * s2))) -
                                     std::log(2.0 * s) - 0.5 * std::log(2.0 * std::numbers::pi);
                u[i] = std::cosh(theta);
                l += -theta * theta / (8.0 * s2) + std::log(std::sinh(theta)) - log_q;
            } else {
                // target e^{-z^2/(2 s^2)} e^z dz
                const double mu = nb * s2;
                const double z = mu + s * rng.normal();
                const double a = (z - mu) / s;
                u[i] = std::exp(z);
                l += -z * z / (2.0 * s2) + z + 0.5 * a * a + log_gauss_norm;
            }
        }
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) l += spec.beta * std::log(std::abs(u[i] - u[j]));
        logw[static_cast<std::size_t>(k)] = l;
    }

    const double peak = *std::max_element(logw.begin(), logw.end());
    double m1 = 0.0, m2 = 0.0;
    for (double l : logw) {
        const double w = std::exp(l - peak);
        m1 += w;
        m2 += w * w;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = m1 / n;
    // second pass: the one-pass m2/n - mean^2 cancels badly when the weights are nearly equal
    double ss = 0.0;
    for (double l : logw) {
        const double d = std::exp(l - peak) - mean;
        ss += d * d;
    }
    const double var = ss / (n - 1.0);

    McEstimate est;
    est.log_value = peak + std::log(mean);
    est.std_error = std::sqrt(var / n) / mean;
    est.n_samples = n_samples;
    est.seed = seed;
    est.effective_sample_size = m1 * m1 / m2;
    if (est.effective_sample_size < 0.01 * n)
        est.warning = "degenerate proposal: effective sample size " + std::to_string(est.effective_sample_size) +
                      " below 1% of the sample count";
    return est;
}

/// Same estimate packaged as a partition result under `conv`.
inline PartitionResult mc_partition(const EnsembleSpec& spec, std::int64_t n_samples, std::uint64_t seed,
                                    const PrefactorConvention& conv = {}) {
    const auto est = mc_log_partition(spec, n_samples, seed);
    return assemble_result(spec, conv, log_reduced_from_integral(spec, est.log_value), Method::monte_carlo,
                           est.std_error);
}

} // namespace gaussym::mc

#endif
