#ifndef GAUSSYM_LARGE_N_SADDLE_HPP
#define GAUSSYM_LARGE_N_SADDLE_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/potential.hpp"
#include "gaussym/core/principal_value.hpp"
#include "gaussym/large_n/master_field.hpp"

namespace gaussym::large_n {

/// Force term V'(x; sigma^2 = t/N) / (beta N), i.e. the left-hand side of the saddle equation
///   lhs(x) = PV int rho(y) / (x - y) dy.
///   Q:  x / (beta t)      SW: log x / (beta t x)      S: acosh x / (4 beta t sqrt(x^2 - 1))
/// The closed-form Q and SW fields at parameter t solve it with beta = 2; the Siegel field with beta = 1.
inline double saddle_lhs(PotentialKind kind, double x, double beta, double t) {
    switch (kind) {
    case PotentialKind::q: return x / (beta * t);
    case PotentialKind::sw:
        if (!(x > 0.0)) throw invalid_input("SW saddle needs x > 0");
        return std::log(x) / (beta * t * x);
    case PotentialKind::s: {
        if (!(x >= 1.0)) throw invalid_input("S saddle needs x >= 1");
        const double d = x - 1.0;
        if (d < 1e-8) return (1.0 - d / 3.0) / (4.0 * beta * t); // acosh x / sqrt(x^2-1) = 1 - (x-1)/3 + ...
        return std::acosh(x) / (4.0 * beta * t * std::sqrt(d * (x + 1.0)));
    }
    }
    return 0.0;
}

struct SaddleProbe {
    double x = 0.0;
    double residual = std::numeric_limits<double>::quiet_NaN(); // lhs - PV integral
    double pv_error = 0.0;
    bool rejected = false; // within 1% of the support width from an edge
};

inline SaddleProbe saddle_probe(const MasterField& mf, double beta, double x, PvOptions opt = {}) {
    SaddleProbe p;
    p.x = x;
    const auto [a, b] = mf.support();
    const double margin = 0.01 * (b - a);
    if (!(x >= a + margin && x <= b - margin)) {
        p.rejected = true;
        return p;
    }
    const auto pv = pv_integral_with_error([&](double y) { return mf.density(y); }, a, b, x, opt);
    p.residual = saddle_lhs(mf.kind(), x, beta, mf.t()) - pv.value;
    p.pv_error = pv.error;
    return p;
}

inline std::vector<SaddleProbe> saddle_residual(const MasterField& mf, double beta, std::span<const double> probes,
                                                PvOptions opt = {}) {
    if (!(beta > 0.0)) throw invalid_input("saddle_residual needs beta > 0");
    std::vector<SaddleProbe> out;
    out.reserve(probes.size());
    for (double x : probes) out.push_back(saddle_probe(mf, beta, x, opt));
    return out;
}

/// n probes evenly spread over the inner 90% of the support.
inline std::vector<double> interior_probes(const MasterField& mf, int n) {
    const auto [a, b] = mf.support();
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = a + (b - a) * (0.05 + 0.9 * (i + 0.5) / n);
    return p;
}

} // namespace gaussym::large_n

#endif
