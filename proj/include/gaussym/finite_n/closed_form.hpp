#ifndef GAUSSYM_FINITE_N_CLOSED_FORM_HPP
#define GAUSSYM_FINITE_N_CLOSED_FORM_HPP

#include <cmath>
#include <numbers>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/prefactor.hpp"

namespace gaussym::finite_n {

/// Exact log Z_2 for Hermitian positive definite matrices:
///
///   log omega - N^2 log 2 + N/2 log(2 pi sigma^2) + (N^3 - N) sigma^2 / 6
///     + sum_{k=1}^{N-1} (N - k) log(1 - e^{-k sigma^2}).
///
/// With `include_prefactor` unset the value is log(Z_2 / C_{N,2}), which is omega-free.
inline PartitionResult z2_closed_form(int N, double sigma, const PrefactorConvention& conv = {}) {
    const auto spec = EnsembleSpec::make(Space::pd_complex, N, sigma);
    conv.validate();
    const double n = N;
    const double s2 = sigma * sigma;
    double log_z = std::log(conv.omega_beta_N) - n * n * std::numbers::ln2 + 0.5 * n * std::log(2 * std::numbers::pi * s2) +
                   (n * n * n - n) * s2 / 6.0;
    for (int k = 1; k < N; ++k) log_z += (N - k) * std::log(-std::expm1(-k * s2));

    const double log_reduced = log_z - log_prefactor(spec, conv);
    // Roughly N^2 terms of size O(|log|) accumulate rounding.
    const double err = 8.0 * (n * n + 1.0) * 2.2e-16 * (std::abs(log_z) + 1.0);
    return assemble_result(spec, conv, log_reduced, Method::closed_form, err);
}

} // namespace gaussym::finite_n

#endif
