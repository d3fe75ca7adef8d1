#ifndef GAUSSYM_LARGE_N_SIEGEL_SOLVER_HPP
#define GAUSSYM_LARGE_N_SIEGEL_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/principal_value.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/saddle.hpp"

namespace gaussym::large_n {

struct SiegelOptions {
    int basis_size = 24;  // degree of the Chebyshev expansion of h
    int collocation = 48; // collocation nodes, >= basis_size + 1
    int max_iterations = 40;
    double tolerance = 1e-13; // on |int rho - 1|
    double beta = 1.0;
    double negativity_tolerance = 1e-8; // relative to max h
};

struct SiegelSolution {
    MasterField field;
    double b = 0.0;
    std::vector<double> coeffs;
    double max_residual = 0.0;           // saddle residual at off-collocation probes
    std::vector<double> residual_history; // |int rho - 1| per Newton iterate
    int iterations = 0;
    double normalization = 0.0; // int rho recomputed on the tabulated CDF
};

namespace detail {

inline double chebyshev_sum(const std::vector<double>& c, double s) {
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b0 = 2.0 * s * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return s * b1 - b2 + c[0];
}

inline double chebyshev_t(int k, double s) {
    if (std::abs(s) <= 1.0) return std::cos(k * std::acos(s));
    double p0 = 1.0, p1 = s;
    if (k == 0) return 1.0;
    for (int j = 2; j <= k; ++j) {
        const double p2 = 2.0 * s * p1 - p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

} // namespace detail

/// Solves the Siegel saddle equation
///   acosh x / (4 beta t sqrt(x^2 - 1)) = PV int_1^b rho(y) / (x - y) dy,   int rho = 1,
/// with rho(x) = h(x) sqrt((b - x)/(x - 1)): hard edge at the wall x = 1, soft edge at b.
///
/// In s = (2x - 1 - b)/(b - 1) the principal-value matrix of the Chebyshev basis does not
/// depend on b, so it is assembled and factored once. For fixed b the coefficients are the
/// least-squares collocation solution; b itself is found by damped Newton on int rho = 1.
inline SiegelSolution siegel_saddle_solve(double t, const SiegelOptions& opt = {}) {
    if (!(t > 0.0)) throw invalid_input("siegel_saddle_solve needs t > 0");
    if (opt.basis_size < 4) throw invalid_input("siegel_saddle_solve needs basis_size >= 4");
    if (opt.collocation < opt.basis_size + 1) throw invalid_input("collocation must be >= basis_size + 1");
    if (!(opt.beta > 0.0)) throw invalid_input("siegel_saddle_solve needs beta > 0");

    const int K = opt.basis_size + 1;
    const int M = opt.collocation;
    std::vector<double> nodes(M);
    for (int j = 0; j < M; ++j) nodes[j] = -std::cos(std::numbers::pi * (j + 0.5) / M);

    Eigen::MatrixXd P(M, K);
    for (int k = 0; k < K; ++k) {
        auto f = [k](double s) { return detail::chebyshev_t(k, s) * std::sqrt((1.0 - s) / (1.0 + s)); };
        for (int j = 0; j < M; ++j) P(j, k) = pv_integral(f, -1.0, 1.0, nodes[j]);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(P);

    auto coeffs_for = [&](double b) {
        Eigen::VectorXd r(M);
        for (int j = 0; j < M; ++j) {
            const double x = 1.0 + (b - 1.0) * (1.0 + nodes[j]) / 2.0;
            r(j) = saddle_lhs(PotentialKind::s, x, opt.beta, t);
        }
        const Eigen::VectorXd c = qr.solve(r);
        return std::vector<double>(c.data(), c.data() + K);
    };
    // int T_k(s) sqrt((1-s)/(1+s)) ds = pi (k = 0), -pi/2 (k = 1), 0 otherwise
    auto mass_defect = [&](double b) {
        const auto c = coeffs_for(b);
        return (b - 1.0) * std::numbers::pi / 2.0 * (c[0] - c[1] / 2.0) - 1.0;
    };

    double b = 1.0 + 4.0 * opt.beta * t;
    double g = mass_defect(b);
    std::vector<double> history{std::abs(g)};
    int it = 0;
    while (std::abs(g) > opt.tolerance) {
        if (++it > opt.max_iterations) throw solver_failure("Siegel Newton iteration did not converge", history);
        const double h = 1e-7 * (b - 1.0);
        const double dg = (mass_defect(b + h) - mass_defect(b - h)) / (2.0 * h);
        double step = (dg > 0.0) ? -g / dg : (g < 0.0 ? (b - 1.0) : -(b - 1.0) / 2.0);
        double b_new = b, g_new = g;
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving) {
            b_new = b + step;
            if (b_new > 1.0) {
                g_new = mass_defect(b_new);
                if (std::abs(g_new) < std::abs(g)) {
                    improved = true;
                    break;
                }
            }
            step /= 2.0;
        }
        if (!improved) throw solver_failure("Siegel Newton step could not reduce the residual", history);
        b = b_new;
        g = g_new;
        history.push_back(std::abs(g));
    }

    const auto c = coeffs_for(b);
    double hmax = 0.0, hmin = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double v = detail::chebyshev_sum(c, -1.0 + 2.0 * i / 4000.0);
        hmax = std::max(hmax, v);
        hmin = std::min(hmin, v);
    }
    if (hmin < -opt.negativity_tolerance * hmax)
        throw solver_failure("Siegel solution has negative density", history, true);

    auto rho = [c, b](double x) {
        const double s = (2.0 * x - 1.0 - b) / (b - 1.0);
        return std::max(0.0, detail::chebyshev_sum(c, s)) * std::sqrt((b - x) / (x - 1.0));
    };
    SiegelSolution sol{MasterField(PotentialKind::s, opt.beta * t, {1.0, b}, rho, FieldSource::solver), b, c, 0.0, {}, 0,
                       0.0};
    sol.residual_history = std::move(history);
    sol.iterations = it;
    sol.normalization = sol.field.mass();

    std::vector<double> probes;
    for (int j = 0; j + 1 < M; ++j) {
        const double s = (nodes[j] + nodes[j + 1]) / 2.0;
        probes.push_back(1.0 + (b - 1.0) * (1.0 + s) / 2.0);
    }
    for (const auto& p : saddle_residual(sol.field, 1.0, probes))
        if (!p.rejected) sol.max_residual = std::max(sol.max_residual, std::abs(p.residual));
    return sol;
}

} // namespace gaussym::large_n

#endif
