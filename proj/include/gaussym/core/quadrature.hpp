#ifndef GAUSSYM_CORE_QUADRATURE_HPP
#define GAUSSYM_CORE_QUADRATURE_HPP

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/precision.hpp"

namespace gaussym {

/// n-point Gauss-Legendre rule on [-1, 1].
template <class Real>
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    std::size_t size() const { return nodes.size(); }
};

namespace detail {

template <class Real>
unsigned precision_key() {
    if constexpr (std::is_floating_point_v<Real>)
        return 0;
    else
        return mantissa_bits(Real(0));
}

template <class Real>
std::shared_ptr<const GaussLegendre<Real>> build_gauss_legendre(int n) {
    using std::abs;
    auto rule = std::make_shared<GaussLegendre<Real>>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    const Real eps = std::is_floating_point_v<Real> ? Real(4 * std::numeric_limits<Real>::epsilon())
                                                    : Real(ldexp(Real(1), -static_cast<int>(precision_key<Real>()) + 4));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi's initial guess, then Newton on P_n.
        Real x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        Real dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= eps) {
                // one more evaluation for the derivative at the converged node
                Real q0 = 1, q1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                if (n == 1) q0 = 1;
                dp = n * (x * q1 - q0) / (x * x - 1);
                break;
            }
        }
        const Real w = 2 / ((1 - x * x) * dp * dp);
        rule->nodes[i] = -x;
        rule->weights[i] = w;
        rule->nodes[n - 1 - i] = x;
        rule->weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule->nodes[n / 2] = 0;
    return rule;
}

} // namespace detail

/// Cached rule at the current working precision of Real.
template <class Real>
std::shared_ptr<const GaussLegendre<Real>> gauss_legendre(int n) {
    if (n < 1) throw invalid_input("Gauss-Legendre order must be positive");
    static std::mutex m;
    static std::map<std::pair<int, unsigned>, std::shared_ptr<const GaussLegendre<Real>>> cache;
    const auto key = std::make_pair(n, detail::precision_key<Real>());
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rule = detail::build_gauss_legendre<Real>(n);
    cache.emplace(key, rule);
    return rule;
}

/// Applies `rule` on [a, b].
template <class Real, class F>
Real integrate_rule(const F& f, const Real& a, const Real& b, const GaussLegendre<Real>& rule) {
    const Real half = (b - a) / 2;
    const Real mid = (a + b) / 2;
    Real acc = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Integral over [a, b] after x = a + (b-a) sin^2(phi/2), phi in [0, pi].
///
/// Square-root edge behaviour (soft edges, and inverse-square-root hard edges)
/// becomes smooth in phi, so plain Gauss-Legendre converges spectrally.
template <class F>
double integrate_cosine_mapped(const F& f, double a, double b, int order) {
    const auto& rule = *gauss_legendre<double>(order);
    const double half = std::numbers::pi / 2;
    double acc = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double phi = half + half * rule.nodes[i];
        const double s = std::sin(phi / 2);
        const double x = a + (b - a) * s * s;
        acc += rule.weights[i] * f(x) * (b - a) * std::sin(phi) / 2;
    }
    return acc * half;
}

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
};

/// Order doubling on the cosine-mapped rule until successive values agree.
///
/// Once the rule has converged, further doubling only samples closer to the edges, where
/// an integrand evaluated in absolute coordinates loses digits (1 + y near y = -1). When the
/// successive difference grows again after dropping below 1e-8 the noise floor has been
/// reached, and the estimate before the increase is returned.
template <class F>
AdaptiveResult integrate_cosine_mapped_adaptive(const F& f, double a, double b, double rel_tol = 1e-13,
                                                int min_order = 64, int max_order = 4096) {
    double prev = integrate_cosine_mapped(f, a, b, min_order);
    double err = std::numeric_limits<double>::infinity();
    for (int n = 2 * min_order; n <= max_order; n *= 2) {
        const double cur = integrate_cosine_mapped(f, a, b, n);
        const double diff = std::abs(cur - prev);
        const double scale = std::max(1.0, std::abs(cur));
        if (diff > err && err <= 1e-8 * scale) break;
        err = diff;
        prev = cur;
        if (err <= rel_tol * scale) break;
    }
    return {prev, err};
}

} // namespace gaussym

#endif
