#ifndef GAUSSYM_CORE_PRINCIPAL_VALUE_HPP
#define GAUSSYM_CORE_PRINCIPAL_VALUE_HPP

#include <algorithm>
#include <cmath>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/quadrature.hpp"

namespace gaussym {

struct PvOptions {
    double rel_tol = 1e-13;
    int min_order = 64;
    int max_order = 4096;
};

struct PvResult {
    double value = 0.0;
    double error = 0.0;
};

/// Cauchy principal value of  int_a^b f(x) / (pole - x) dx  for f smooth at the pole.
///
/// Singularity subtraction:
///   int (f(x) - f(pole)) / (pole - x) dx  +  f(pole) log((pole - a) / (b - pole)),
/// the regular part by order-doubling Gauss-Legendre in the cosine-mapped variable,
/// which also absorbs square-root and inverse-square-root behaviour of f at a, b.
template <class F>
PvResult pv_integral_with_error(const F& f, double a, double b, double pole, PvOptions opt = {}) {
    if (!(a < b)) throw invalid_input("pv_integral needs a < b");
    if (!(pole > a && pole < b)) throw invalid_input("pv_integral: pole must lie strictly inside (a, b)");
    const double fp = f(pole);
    const double width = b - a;
    // g has a removable singularity at the pole, g(x) = -f'(p) - f''(p)/2 (x - p) + ...
    // Near the pole the difference quotient loses digits to cancellation, so inside
    // the guard band it is replaced by that Taylor patch (central differences).
    const double guard = 1e-5 * width;
    const double h = std::min(1e-3 * width, 0.5 * std::min(pole - a, b - pole));
    bool have_taylor = false;
    double d1 = 0.0, d2 = 0.0;
    auto g = [&](double x) {
        const double d = pole - x;
        if (std::abs(d) < guard) {
            if (!have_taylor) {
                const double fm = f(pole - h), fpl = f(pole + h);
                d1 = (fpl - fm) / (2 * h);
                d2 = (fpl - 2 * fp + fm) / (h * h);
                have_taylor = true;
            }
            return -d1 + 0.5 * d2 * d;
        }
        return (f(x) - fp) / d;
    };
    const auto reg = integrate_cosine_mapped_adaptive(g, a, b, opt.rel_tol, opt.min_order, opt.max_order);
    return {reg.value + fp * std::log((pole - a) / (b - pole)), reg.error};
}

template <class F>
double pv_integral(const F& f, double a, double b, double pole, PvOptions opt = {}) {
    return pv_integral_with_error(f, a, b, pole, opt).value;
}

} // namespace gaussym

#endif
