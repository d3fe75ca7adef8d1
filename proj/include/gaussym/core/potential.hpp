#ifndef GAUSSYM_CORE_POTENTIAL_HPP
#define GAUSSYM_CORE_POTENTIAL_HPP

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/errors.hpp"

namespace gaussym {

/// SW: log^2(x)/(2 sigma^2) on (0, inf); S: acosh^2(x)/(8 sigma^2) on (1, inf);
/// Q: x^2/(2 sigma^2) on the real line.
enum class PotentialKind { sw, s, q };

inline std::string_view to_string(PotentialKind k) {
    switch (k) {
    case PotentialKind::sw: return "SW";
    case PotentialKind::s: return "S";
    case PotentialKind::q: return "Q";
    }
    return "?";
}

inline PotentialKind parse_potential(std::string_view s) {
    if (s == "SW" || s == "sw") return PotentialKind::sw;
    if (s == "S" || s == "s") return PotentialKind::s;
    if (s == "Q" || s == "q") return PotentialKind::q;
    throw invalid_input("unknown potential '" + std::string(s) + "' (expected SW, S, Q)");
}

inline PotentialKind potential_for(Space s) {
    return s == Space::siegel ? PotentialKind::s : PotentialKind::sw;
}

struct Interval {
    double lo;
    double hi;
};

namespace detail {

template <class Real>
Real acosh_of(const Real& x) {
    using std::log;
    using std::sqrt;
    if constexpr (std::is_floating_point_v<Real>) {
        const Real d = x - 1;
        return std::log1p(d + std::sqrt(d * (x + 1)));
    } else {
        return log(x + sqrt((x - 1) * (x + 1)));
    }
}

} // namespace detail

struct Potential {
    PotentialKind kind = PotentialKind::sw;

    Interval domain() const {
        constexpr double inf = std::numeric_limits<double>::infinity();
        switch (kind) {
        case PotentialKind::sw: return {0.0, inf};
        case PotentialKind::s: return {1.0, inf};
        case PotentialKind::q: return {-inf, inf};
        }
        return {-inf, inf};
    }

    /// Potential value. SW needs x > 0, S needs x >= 1 (V_S(1) = 0).
    template <class Real>
    Real eval(const Real& x, const Real& sigma) const {
        using std::log;
        switch (kind) {
        case PotentialKind::sw: {
            if (!(x > 0)) throw invalid_input("V_SW needs x > 0");
            const Real l = log(x);
            return l * l / (2 * sigma * sigma);
        }
        case PotentialKind::s: {
            if (!(x >= 1)) throw invalid_input("V_S needs x >= 1");
            const Real a = detail::acosh_of(x);
            return a * a / (8 * sigma * sigma);
        }
        case PotentialKind::q: return x * x / (2 * sigma * sigma);
        }
        return Real(0);
    }

    /// dV/dx. S additionally needs x > 1 (the closed form is 0/0 at the wall).
    template <class Real>
    Real deriv(const Real& x, const Real& sigma) const {
        using std::log;
        using std::sqrt;
        switch (kind) {
        case PotentialKind::sw:
            if (!(x > 0)) throw invalid_input("V_SW' needs x > 0");
            return log(x) / (sigma * sigma * x);
        case PotentialKind::s:
            if (!(x > 1)) throw invalid_input("V_S' needs x > 1");
            return detail::acosh_of(x) / (4 * sigma * sigma * sqrt((x - 1) * (x + 1)));
        case PotentialKind::q: return x / (sigma * sigma);
        }
        return Real(0);
    }
};

inline double potential_eval(Potential p, double x, double sigma) { return p.eval(x, sigma); }
inline double potential_deriv(Potential p, double x, double sigma) { return p.deriv(x, sigma); }

} // namespace gaussym

#endif
