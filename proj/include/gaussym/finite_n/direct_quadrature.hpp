#ifndef GAUSSYM_FINITE_N_DIRECT_QUADRATURE_HPP
#define GAUSSYM_FINITE_N_DIRECT_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/errors.hpp"
#include "gaussym/core/prefactor.hpp"
#include "gaussym/core/quadrature.hpp"

namespace gaussym::finite_n {

inline constexpr int direct_quadrature_max_N = 4;

namespace detail {

struct EigenCoordinate {
    Space space;
    double sigma;

    // u(z) and log of e^{-V(u)} du/dz
    void eval(double z, double& u, double& log_omega) const {
        if (space == Space::siegel) {
            u = std::cosh(z);
            log_omega = -z * z / (8 * sigma * sigma) + std::log(std::sinh(z));
        } else {
            u = std::exp(z);
            log_omega = z - z * z / (2 * sigma * sigma);
        }
    }
};

// log int prod w(u_i) |Delta(u)|^beta du over the ordered region z_1 < ... < z_N,
// times N!, with `n` Gauss-Legendre points per axis (16-point panels).
inline double ordered_log_integral(const EnsembleSpec& spec, int n) {
    constexpr double K = 12.0;
    const int N = spec.N;
    const double s = spec.sigma, s2 = s * s;
    const double top = 1.0 + spec.beta * (N - 1);
    double lo, hi;
    if (spec.space == Space::siegel) {
        lo = 0.0;
        hi = 4.0 * s2 * top + 2.0 * K * s;
    } else {
        lo = s2 - K * s;
        hi = s2 * top + K * s;
    }
    const EigenCoordinate coord{spec.space, s};
    const int per_panel = std::min(n, 16);
    const int panels = std::max(1, (n + per_panel - 1) / per_panel);
    const auto& rule = *gauss_legendre<double>(per_panel);

    // reference log value keeps the running products in range
    double ref = 0.0;
    {
        std::array<double, direct_quadrature_max_N> u{}, lw{};
        for (int i = 0; i < N; ++i) {
            const double peak = spec.space == Space::siegel ? 4.0 * s2 * (1.0 + spec.beta * i) : s2 * (1.0 + spec.beta * i);
            coord.eval(std::max(peak, 1e-3 * s), u[i], lw[i]);
            ref += lw[i];
            for (int j = 0; j < i; ++j) ref += spec.beta * std::log(std::abs(u[i] - u[j]));
        }
    }

    std::array<double, direct_quadrature_max_N> u{};
    double total = 0.0;
    // level k integrates z_k over [lower, hi]
    auto recurse = [&](auto&& self, int k, double lower, double log_acc) -> double {
        if (k >= direct_quadrature_max_N) return 0.0; // unreachable, N is capped; keeps u[k] visibly in range
        const double width = (hi - lower) / panels;
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = lower + p * width;
            const double half = width / 2, mid = a + half;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double z = mid + half * rule.nodes[q];
                double uk, lw;
                coord.eval(z, uk, lw);
                double l = log_acc + lw;
                for (int j = 0; j < k; ++j) l += spec.beta * std::log(std::abs(uk - u[j]));
                u[k] = uk;
                const double w = rule.weights[q] * half;
                if (k + 1 == N)
                    acc += w * std::exp(l - ref);
                else
                    acc += w * self(self, k + 1, z, l);
            }
        }
        return acc;
    };
    total = recurse(recurse, 0, lo, 0.0);
    return std::log(total) + ref + std::lgamma(N + 1.0);
}

} // namespace detail

/// Brute-force tensor-product quadrature of the N-dimensional eigenvalue integral
/// (SW weight for PD spaces, S weight for Siegel, |Delta|^beta on the full orthant).
///
/// Symmetry reduces the orthant to the ordered region, where the integrand is smooth;
/// the error estimate is the change against a 3/4-size grid.
inline PartitionResult direct_quadrature_logZ(const EnsembleSpec& spec, int gridpoints = 64,
                                              const PrefactorConvention& conv = {}) {
    spec.validate();
    conv.validate();
    if (spec.N > direct_quadrature_max_N)
        throw invalid_input("direct quadrature costs grid^N; N = " + std::to_string(spec.N) + " exceeds the cap of " +
                            std::to_string(direct_quadrature_max_N));
    if (gridpoints < 8) throw invalid_input("direct quadrature needs at least 8 points per axis");
    const double fine = detail::ordered_log_integral(spec, gridpoints);
    const double coarse = detail::ordered_log_integral(spec, std::max(8, 3 * gridpoints / 4));
    return assemble_result(spec, conv, log_reduced_from_integral(spec, fine), Method::quadrature, std::abs(fine - coarse));
}

/// log of the raw integral (no prefactors) by the same rule.
inline double direct_log_integral(const EnsembleSpec& spec, int gridpoints = 64) {
    spec.validate();
    if (spec.N > direct_quadrature_max_N) throw invalid_input("direct quadrature: N exceeds the cap");
    return detail::ordered_log_integral(spec, gridpoints);
}

} // namespace gaussym::finite_n

#endif
