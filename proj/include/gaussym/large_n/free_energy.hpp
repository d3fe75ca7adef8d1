#ifndef GAUSSYM_LARGE_N_FREE_ENERGY_HPP
#define GAUSSYM_LARGE_N_FREE_ENERGY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/quadrature.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/trilog.hpp"

namespace gaussym::large_n {

struct FreeEnergy {
    double value = 0.0;
    double error = 0.0;
};

/// int int rho(x) rho(y) log|x - y| dx dy.
///
/// The inner potential U(x) = int rho(y) log|x - y| dy is split at y = x so each half has
/// only an endpoint log singularity (handled by tanh-sinh); the outer integral uses the
/// cosine-mapped rule, with the error taken from an order doubling.
inline FreeEnergy log_energy(const MasterField& mf, double tol = 1e-9) {
    const auto [a, b] = mf.support();
    boost::math::quadrature::tanh_sinh<double> ts(12);
    // The two-argument form passes the distance to the nearest endpoint, so |x - y| stays
    // exact next to the singular endpoint.
    auto U = [&](double x) {
        auto left = [&](double y, double yc) {
            const double d = yc > 0.0 ? yc : x - y;
            return d > 0.0 ? mf.density(y) * std::log(d) : 0.0;
        };
        auto right = [&](double y, double yc) {
            const double d = yc < 0.0 ? -yc : y - x;
            return d > 0.0 ? mf.density(y) * std::log(d) : 0.0;
        };
        double acc = 0.0;
        if (x > a) acc += ts.integrate(left, a, x, 1e-14);
        if (x < b) acc += ts.integrate(right, x, b, 1e-14);
        return acc;
    };
    auto outer = [&](double x) { return mf.density(x) * U(x); };
    double prev = integrate_cosine_mapped(outer, a, b, 48);
    for (int n = 96; n <= 1536; n *= 2) {
        const double cur = integrate_cosine_mapped(outer, a, b, n);
        const double err = std::abs(cur - prev);
        if (err <= tol) return {cur, err};
        prev = cur;
    }
    throw quadrature_failure("log_energy did not converge", 0, 0, std::abs(prev));
}

/// Planar free energy of the SW field:
///   F_uni(t) = -1/(2t) int rho log^2 + int int rho rho log|x - y|.
inline FreeEnergy f_uni(double t) {
    const auto mf = master_field_sw(t);
    const auto pot = mf.integrate([](double x) {
        const double l = std::log(x);
        return l * l;
    });
    const auto le = log_energy(mf);
    return {-pot.value / (2.0 * t) + le.value, pot.error / (2.0 * t) + le.error};
}

/// Large-N value of (1/N^2) log Z~_beta on the positive-definite spaces at 't Hooft parameter t.
inline FreeEnergy reduced_free_energy_pd(double beta, double t) {
    if (!(beta > 0.0) || !(t > 0.0)) throw invalid_input("reduced_free_energy_pd needs beta, t > 0");
    const auto f = f_uni(beta * t / 2.0);
    return {beta / 2.0 * f.value, beta / 2.0 * f.error};
}

/// Planar free energy of a Siegel field (beta = 1):
///   -1/(8t) int rho acosh^2 + 1/2 int int rho rho log|x - y|.
inline FreeEnergy siegel_free_energy(const MasterField& mf) {
    if (mf.kind() != PotentialKind::s) throw invalid_input("siegel_free_energy needs an S field");
    const auto pot = mf.integrate([](double x) {
        const double a = std::acosh(std::max(1.0, x));
        return a * a;
    });
    const auto le = log_energy(mf);
    return {-pot.value / (8.0 * mf.t()) + le.value / 2.0, pot.error / (8.0 * mf.t()) + le.error / 2.0};
}

/// Trilogarithm asymptotic for (1/N^2) log Z_2 at sigma^2 = t/N:
///   -1/2 log(2N/pi) + 3/4 + t/6 - (Li3(e^{-t}) - zeta(3)) / t^2.
inline double z2_asymptotic(int N, double t) {
    if (N < 1) throw invalid_input("z2_asymptotic needs N >= 1");
    if (!(t > 0.0)) throw invalid_input("z2_asymptotic needs t > 0");
    return -0.5 * std::log(2.0 * N / std::numbers::pi) + 0.75 + t / 6.0 - (trilog(std::exp(-t)) - zeta3()) / (t * t);
}

} // namespace gaussym::large_n

#endif
