#ifndef GAUSSYM_CORE_PREFACTOR_HPP
#define GAUSSYM_CORE_PREFACTOR_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "gaussym/core/ensemble.hpp"

namespace gaussym {

/// N_beta = beta/2 (N-1) + 1.
inline double n_beta(int N, double beta) { return 0.5 * beta * (N - 1) + 1.0; }

/// log of the factor multiplying the reduced partition function.
///
/// PD spaces: log C_{N,beta}(sigma) = log omega + N log 2pi - N N_beta log 2 - N N_beta^2 sigma^2 / 2.
/// Siegel:    log(vol(U(N)) 2^{N(N+1)/2} N!).
inline double log_prefactor(const EnsembleSpec& spec, const PrefactorConvention& conv) {
    spec.validate();
    conv.validate();
    const double N = spec.N;
    if (is_pd(spec.space)) {
        const double nb = n_beta(spec.N, spec.beta);
        return std::log(conv.omega_beta_N) + N * std::log(2.0 * std::numbers::pi) - N * nb * std::numbers::ln2 -
               N * nb * nb * spec.sigma * spec.sigma / 2.0;
    }
    return std::log(conv.vol_UN) + 0.5 * N * (N + 1) * std::numbers::ln2 + std::lgamma(N + 1.0);
}

/// Converts log of the raw eigenvalue integral  int prod w(u_i) |Delta(u)|^beta du
/// into log of the reduced partition function Z / prefactor.
inline double log_reduced_from_integral(const EnsembleSpec& spec, double log_integral) {
    if (is_pd(spec.space))
        return log_integral - spec.N * std::log(2.0 * std::numbers::pi) - std::lgamma(spec.N + 1.0);
    return log_integral;
}

inline double log_integral_from_reduced(const EnsembleSpec& spec, double log_reduced) {
    if (is_pd(spec.space))
        return log_reduced + spec.N * std::log(2.0 * std::numbers::pi) + std::lgamma(spec.N + 1.0);
    return log_reduced;
}

/// Packs a reduced value into a result under `conv`.
inline PartitionResult assemble_result(const EnsembleSpec& spec, const PrefactorConvention& conv, double log_reduced,
                                       Method method, double error) {
    PartitionResult r;
    r.log_value = conv.include_prefactor ? log_reduced + log_prefactor(spec, conv) : log_reduced;
    r.method = method;
    r.error_estimate = error;
    r.convention = conv;
    return r;
}

/// beta * sum_{i<j} log|u_i - u_j|; -inf when two points coincide.
template <class Real>
Real log_vandermonde(std::span<const Real> u, const Real& beta) {
    using std::abs;
    using std::log;
    Real acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const Real d = abs(u[i] - u[j]);
            if (d == 0) return -std::numeric_limits<Real>::infinity();
            acc += log(d);
        }
    }
    return beta * acc;
}

inline double log_vandermonde(std::span<const double> u, double beta) { return log_vandermonde<double>(u, beta); }

} // namespace gaussym

#endif
