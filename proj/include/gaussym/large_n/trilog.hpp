#ifndef GAUSSYM_LARGE_N_TRILOG_HPP
#define GAUSSYM_LARGE_N_TRILOG_HPP

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bernoulli.hpp>

#include "gaussym/core/errors.hpp"

namespace gaussym::large_n {

struct BoundedValue {
    double value = 0.0;
    double error_bound = 0.0; // bound on the truncation error (rounding not included)
};

namespace detail {

// sum_{k<=K} 1/k^3 plus the midpoint of the tail bracket [1/(2(K+1)^2), 1/(2K^2)].
inline BoundedValue zeta3_series() {
    constexpr long K = 200000;
    long double s = 0.0L;
    for (long k = K; k >= 1; --k) {
        const long double kk = static_cast<long double>(k);
        s += 1.0L / (kk * kk * kk);
    }
    const long double lo = 1.0L / (2.0L * (K + 1) * (K + 1));
    const long double hi = 1.0L / (2.0L * K * K);
    return {static_cast<double>(s + (lo + hi) / 2), static_cast<double>((hi - lo) / 2)};
}

// Power series for 0 <= x <= 1/2 with tail bound x^{K+1} / ((K+1)^3 (1-x)).
inline BoundedValue trilog_power(double x) {
    double s = 0.0, p = 1.0;
    for (int k = 1; k < 200; ++k) {
        p *= x;
        const double kk = k;
        s += p / (kk * kk * kk);
        const double k1 = kk + 1.0;
        const double tail = p * x / (k1 * k1 * k1 * (1.0 - x));
        if (tail < 1e-18) return {s, tail};
    }
    return {s, p * x / (1.0 - x)};
}

// Expansion in mu = log x for 1/2 < x < 1 (|mu| < log 2 << 2 pi):
//   Li3(e^mu) = zeta(3) + zeta(2) mu + (3/2 - log(-mu)) mu^2/2 - mu^3/12
//               + sum_{m>=1} zeta(1-2m) mu^{2m+2} / (2m+2)!,   zeta(1-2m) = -B_{2m}/(2m).
// Term m is bounded by 3.3 |mu|^{2m+2} / (2 pi)^{2m}.
inline BoundedValue trilog_near_one(double x, const BoundedValue& z3) {
    const double mu = std::log(x);
    const double two_pi = 2.0 * std::numbers::pi;
    const double ratio = (mu / two_pi) * (mu / two_pi);
    double s = z3.value + two_pi * two_pi / 24.0 * mu + (1.5 - std::log(-mu)) * mu * mu / 2.0 - mu * mu * mu / 12.0;
    double fact = 24.0; // (2m+2)! for m = 1
    double mp = mu * mu * mu * mu;
    for (int m = 1; m < 60; ++m) {
        if (m > 1) {
            fact *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
            mp *= mu * mu;
        }
        s += -boost::math::bernoulli_b2n<double>(m) / (2.0 * m) * mp / fact;
        const double next = 3.3 * std::abs(mp * mu * mu) / std::pow(two_pi, 2.0 * (m + 1));
        const double tail = next / (1.0 - ratio);
        if (tail < 1e-18) return {s, tail + z3.error_bound};
    }
    return {s, z3.error_bound + 1e-15};
}

} // namespace detail

/// zeta(3) = Li3(1), p-series with a bracketed tail.
inline BoundedValue zeta3_bounded() {
    static const BoundedValue z = detail::zeta3_series();
    return z;
}

inline double zeta3() { return zeta3_bounded().value; }

/// Li3(x) = sum x^k / k^3 on [-1, 1] with a truncation bound.
inline BoundedValue trilog_bounded(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw invalid_input("trilog needs |x| <= 1");
    if (x == 1.0) return zeta3_bounded();
    if (x < 0.0) {
        // Li3(x) = Li3(x^2)/4 - Li3(-x)
        const auto a = trilog_bounded(x * x);
        const auto b = trilog_bounded(-x);
        return {a.value / 4.0 - b.value, a.error_bound / 4.0 + b.error_bound};
    }
    if (x <= 0.5) return detail::trilog_power(x);
    return detail::trilog_near_one(x, zeta3_bounded());
}

inline double trilog(double x) { return trilog_bounded(x).value; }

} // namespace gaussym::large_n

#endif
