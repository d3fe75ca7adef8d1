#ifndef GAUSSYM_FINITE_N_SKEW_PARTITION_HPP
#define GAUSSYM_FINITE_N_SKEW_PARTITION_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/errors.hpp"
#include "gaussym/core/prefactor.hpp"
#include "gaussym/finite_n/gram_schmidt.hpp"
#include "gaussym/finite_n/serialize.hpp"
#include "gaussym/finite_n/skew_moments.hpp"

namespace gaussym::finite_n {

/// Largest N accepted by the skew route; beyond this use the large-N module.
inline constexpr int skew_route_max_N = 24;

struct SkewRouteOptions {
    unsigned start_bits = default_mantissa_bits;
    unsigned max_bits = max_mantissa_bits;
    const SkewCache* cache = nullptr;
};

struct SkewRoute {
    PartitionResult result;
    SkewMomentMatrix moments;
    SkewBasis basis;
};

namespace detail {

inline SkewMomentMatrix cached_moments(PotentialKind kind, double sigma, int N, unsigned bits, const SkewCache* cache) {
    if (cache) {
        if (auto hit = cache->load(kind, sigma, N, bits)) return *std::move(hit);
    }
    auto M = skew_moment_matrix(kind, sigma, N, SkewMomentOptions{bits});
    if (cache) cache->store(M);
    return M;
}

// Propagates the per-entry quadrature deviation into log |prod a_l| by redoing the
// reduction on the perturbed matrix.
inline double propagated_error(const SkewMomentMatrix& M, const SkewBasis& basis) {
    precision_scope scope(M.mantissa_bits);
    std::vector<xreal> perturbed(M.entries.size());
    for (std::size_t k = 0; k < perturbed.size(); ++k) perturbed[k] = M.entries[k] - M.deviation[k];
    try {
        const auto alt = symplectic_gram_schmidt(perturbed, M.N, M.mantissa_bits, GramSchmidtOptions{1e300, 0});
        return abs(alt.log_abs_leading_product() - basis.log_abs_leading_product()).convert_to<double>();
    } catch (const precision_escalation&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace detail

/// Skew-orthogonal-polynomial route for beta = 1 integrals at even N.
///
/// With M normalized as <f,g>_1 = 2 int int f g sign(x-y) w w, the Pfaffian identity
/// gives  int |Delta(u)| prod w(u_i) du = N! 2^{-N/2} / |prod_l a_l|  (degrees 0..N-1).
/// Precision escalates 256 -> 512 -> ... bits on pivot failure.
inline SkewRoute skew_route(const EnsembleSpec& spec, const PrefactorConvention& conv, SkewRouteOptions opt = {}) {
    spec.validate();
    conv.validate();
    if (spec.space != Space::pd_real && spec.space != Space::siegel)
        throw invalid_input("the skew route covers pd_real and siegel only");
    if (spec.N % 2 != 0) throw invalid_input("the skew route needs even N");
    if (spec.N > skew_route_max_N)
        throw invalid_input("N > " + std::to_string(skew_route_max_N) + " is beyond the skew route; use large_n");
    const PotentialKind kind = potential_for(spec.space);
    const int N = spec.N;
    const int m = N / 2;

    unsigned bits = opt.start_bits;
    for (;;) {
        try {
            auto M = detail::cached_moments(kind, spec.sigma, N, bits, opt.cache);
            auto basis = symplectic_gram_schmidt(M);
            const double log_prod = basis.log_abs_leading_product().convert_to<double>();
            const double log_integral = std::lgamma(N + 1.0) - m * std::numbers::ln2 - log_prod;
            const double err = detail::propagated_error(M, basis) + 1e-15 * (std::abs(log_integral) + 1.0);
            SkewRoute route{assemble_result(spec, conv, log_reduced_from_integral(spec, log_integral), Method::skew_poly, err),
                            std::move(M), std::move(basis)};
            return route;
        } catch (const precision_escalation& e) {
            const unsigned next = std::max(e.required_bits(), 2 * bits);
            if (next > opt.max_bits) throw;
            bits = next;
        }
    }
}

/// Z_1 of real SPD matrices from the SW skew-orthogonal leading coefficients.
inline PartitionResult z1_finite(int N, double sigma, const PrefactorConvention& conv = {}, SkewRouteOptions opt = {}) {
    return skew_route(EnsembleSpec::make(Space::pd_real, N, sigma), conv, opt).result;
}

/// Z_S of the Siegel domain from the S skew-orthogonal leading coefficients.
inline PartitionResult zS_finite(int N, double sigma, const PrefactorConvention& conv = {}, SkewRouteOptions opt = {}) {
    return skew_route(EnsembleSpec::make(Space::siegel, N, sigma), conv, opt).result;
}

} // namespace gaussym::finite_n

#endif
