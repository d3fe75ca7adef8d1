#ifndef GAUSSYM_FINITE_N_SKEW_MOMENTS_HPP
#define GAUSSYM_FINITE_N_SKEW_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/potential.hpp"
#include "gaussym/core/precision.hpp"
#include "gaussym/core/quadrature.hpp"

namespace gaussym::finite_n {

/// M[i][j] = <x^i, x^j>_1 = 2 int int x^i y^j sign(x - y) e^{-V(x) - V(y)} dx dy, i, j < N.
///
/// Entries are extended precision; `deviation` holds the signed difference between
/// the accepted quadrature and a lower-order one and serves as the per-entry error.
struct SkewMomentMatrix {
    PotentialKind potential = PotentialKind::sw;
    double sigma = 0.0;
    int N = 0;
    unsigned mantissa_bits = default_mantissa_bits;
    std::vector<xreal> entries;
    std::vector<xreal> deviation;

    const xreal& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * N + j]; }
    xreal& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * N + j]; }

    double abs_error(int i, int j) const {
        return std::abs(deviation[static_cast<std::size_t>(i) * N + j].convert_to<double>());
    }
};

struct SkewMomentOptions {
    unsigned mantissa_bits = default_mantissa_bits;
    int max_refinements = 5;
};

namespace detail {

// Integration variable z with u(z) the eigenvalue and omega(z) = e^{-V(u)} du/dz:
//   SW: u = e^z,      omega = exp(z - z^2 / (2 sigma^2))
//   S:  u = cosh z,   omega = exp(-z^2 / (8 sigma^2)) sinh z,  z >= 0
//   Q:  u = z,        omega = exp(-z^2 / (2 sigma^2))
struct MomentVariable {
    PotentialKind kind;
    xreal sigma;

    void eval(const xreal& z, xreal& u, xreal& omega) const {
        switch (kind) {
        case PotentialKind::sw:
            u = exp(z);
            omega = exp(z - z * z / (2 * sigma * sigma));
            break;
        case PotentialKind::s:
            u = cosh(z);
            omega = exp(-z * z / (8 * sigma * sigma)) * sinh(z);
            break;
        case PotentialKind::q:
            u = z;
            omega = exp(-z * z / (2 * sigma * sigma));
            break;
        }
    }
};

struct MomentGrid {
    double lo;
    double hi;
    double panel;
};

inline MomentGrid moment_grid(PotentialKind kind, double sigma, int N, unsigned bits) {
    // Gaussian tails below 2^{-(bits + 32)} relative to the peak of every weight.
    const double K = std::sqrt(2.0 * (bits + 32) * std::log(2.0));
    const double s2 = sigma * sigma;
    switch (kind) {
    case PotentialKind::sw:
        return {s2 - K * sigma, N * s2 + K * sigma, std::min(sigma / 2, 4.0 / N)};
    case PotentialKind::s:
        return {0.0, 4.0 * s2 * N + 2.0 * K * sigma, std::min(sigma, 4.0 / N)};
    case PotentialKind::q:
        break;
    }
    const double r = (std::sqrt(static_cast<double>(N)) + K) * sigma;
    return {-r, r, sigma / 2};
}

// Skew moments at one quadrature order; returns the N x N matrix and the
// magnitude scale 2 F_i(inf) F_j(inf) of each entry.
inline std::vector<xreal> skew_moments_at(const MomentVariable& var, int N, const MomentGrid& grid, int order,
                                          std::vector<xreal>* scale) {
    const auto& rule = *gauss_legendre<xreal>(order);
    const int panels = std::max(1, static_cast<int>(std::ceil((grid.hi - grid.lo) / grid.panel)));
    const xreal lo = grid.lo;
    const xreal width = (xreal(grid.hi) - lo) / panels;
    const std::size_t n = rule.size();
    const std::size_t nodes = static_cast<std::size_t>(panels) * n;

    std::vector<xreal> node_w(nodes);   // quadrature weight * omega * u^i is built on the fly
    std::vector<xreal> node_u(nodes);
    std::vector<xreal> cumulative(nodes * N); // F_j(z_node)
    std::vector<xreal> base(N, xreal(0));     // F_j at the start of the current panel

    std::vector<xreal> pw(N);
    xreal u, om;
    for (int p = 0; p < panels; ++p) {
        const xreal a = lo + width * p;
        const xreal b = a + width;
        const xreal half = width / 2;
        const xreal mid = a + half;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t idx = static_cast<std::size_t>(p) * n + k;
            const xreal z = mid + half * rule.nodes[k];
            var.eval(z, u, om);
            node_u[idx] = u;
            node_w[idx] = rule.weights[k] * half * om;
            // partial integral over [a, z] for every degree
            const xreal sub_half = (z - a) / 2;
            const xreal sub_mid = a + sub_half;
            std::fill(pw.begin(), pw.end(), xreal(0));
            xreal su, som;
            for (std::size_t q = 0; q < n; ++q) {
                var.eval(sub_mid + sub_half * rule.nodes[q], su, som);
                xreal term = rule.weights[q] * sub_half * som;
                for (int j = 0; j < N; ++j) {
                    pw[j] += term;
                    term *= su;
                }
            }
            for (int j = 0; j < N; ++j) cumulative[idx * N + j] = base[j] + pw[j];
        }
        // full panel
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t idx = static_cast<std::size_t>(p) * n + k;
            xreal term = node_w[idx];
            for (int j = 0; j < N; ++j) {
                base[j] += term;
                term *= node_u[idx];
            }
        }
        (void)b;
    }
    const std::vector<xreal>& total = base; // F_j(inf)

    std::vector<xreal> M(static_cast<std::size_t>(N) * N, xreal(0));
    // weighted powers at each node, reused across j
    std::vector<xreal> wpow(nodes);
    for (std::size_t idx = 0; idx < nodes; ++idx) wpow[idx] = node_w[idx];
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            xreal acc = 0;
            for (std::size_t idx = 0; idx < nodes; ++idx)
                acc += wpow[idx] * (2 * cumulative[idx * N + j] - total[j]);
            M[static_cast<std::size_t>(i) * N + j] = 2 * acc;
            M[static_cast<std::size_t>(j) * N + i] = -2 * acc;
        }
        for (std::size_t idx = 0; idx < nodes; ++idx) wpow[idx] *= node_u[idx];
    }
    if (scale) {
        scale->assign(static_cast<std::size_t>(N) * N, xreal(0));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) (*scale)[static_cast<std::size_t>(i) * N + j] = 2 * abs(total[i] * total[j]);
    }
    return M;
}

} // namespace detail

/// Skew moment matrix by panel Gauss-Legendre quadrature in the substituted variable
/// (x = e^z for SW, x = cosh z for S), where the weights become Gaussian.
///
/// The panel width is halved until the accepted order and a lower order agree to
/// about 2^{-(bits-24)} relative to each entry's magnitude scale.
inline SkewMomentMatrix skew_moment_matrix(PotentialKind kind, double sigma, int N, SkewMomentOptions opt = {}) {
    if (N < 1) throw invalid_input("skew_moment_matrix: N must be positive");
    if (!(sigma > 0.0)) throw invalid_input("skew_moment_matrix: sigma must be positive");
    if (opt.mantissa_bits < 64) throw invalid_input("skew_moment_matrix: need at least 64 mantissa bits");

    precision_scope scope(opt.mantissa_bits);
    detail::MomentVariable var{kind, xreal(sigma)};
    auto grid = detail::moment_grid(kind, sigma, N, opt.mantissa_bits);
    const int order = std::max(24, static_cast<int>(opt.mantissa_bits / 8) + 8);
    const int coarse = order - std::max(4, order / 4);
    const xreal tol = ldexp(xreal(1), -static_cast<int>(opt.mantissa_bits) + 24);

    double worst_rel = 0.0;
    std::size_t worst_i = 0, worst_j = 0;
    for (int level = 0; level <= opt.max_refinements; ++level) {
        std::vector<xreal> scale;
        auto fine = detail::skew_moments_at(var, N, grid, order, &scale);
        auto rough = detail::skew_moments_at(var, N, grid, coarse, nullptr);
        worst_rel = 0.0;
        bool ok = true;
        std::vector<xreal> dev(fine.size());
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * N + j;
                dev[k] = fine[k] - rough[k];
                if (i == j) continue;
                const xreal rel = abs(dev[k]) / scale[k];
                if (rel > tol) ok = false;
                const double r = rel.convert_to<double>();
                if (r > worst_rel) {
                    worst_rel = r;
                    worst_i = static_cast<std::size_t>(i);
                    worst_j = static_cast<std::size_t>(j);
                }
            }
        }
        if (ok) {
            SkewMomentMatrix M;
            M.potential = kind;
            M.sigma = sigma;
            M.N = N;
            M.mantissa_bits = opt.mantissa_bits;
            M.entries = std::move(fine);
            M.deviation = std::move(dev);
            // exact antisymmetry and zero diagonal
            for (int i = 0; i < N; ++i) {
                M(i, i) = 0;
                M.deviation[static_cast<std::size_t>(i) * N + i] = 0;
            }
            return M;
        }
        grid.panel /= 2;
    }
    throw quadrature_failure("skew moment quadrature did not converge; worst entry (" + std::to_string(worst_i) + ", " +
                                 std::to_string(worst_j) + ")",
                             worst_i, worst_j, worst_rel);
}

} // namespace gaussym::finite_n

#endif
