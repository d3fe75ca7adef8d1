#ifndef GAUSSYM_LARGE_N_MASTER_FIELD_HPP
#define GAUSSYM_LARGE_N_MASTER_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/potential.hpp"
#include "gaussym/core/quadrature.hpp"

namespace gaussym::large_n {

enum class FieldSource { closed_form, solver };

inline std::string to_string(FieldSource s) { return s == FieldSource::closed_form ? "closed_form" : "solver"; }

/// Limiting eigenvalue density on a compact support.
///
/// Integrals use the cosine map x = a + (b-a) sin^2(phi/2), which is exact enough for
/// both soft (square-root) and hard (inverse-square-root) edges. The CDF is tabulated
/// at construction.
class MasterField {
public:
    MasterField(PotentialKind kind, double t, Interval support, std::function<double(double)> density,
                FieldSource source)
        : kind_(kind), t_(t), support_(support), density_(std::move(density)), source_(source) {
        if (!(t > 0.0)) throw invalid_input("master field needs t > 0");
        if (!(support.lo < support.hi)) throw invalid_input("master field support must have a < b");
        build_cdf();
    }

    PotentialKind kind() const { return kind_; }
    double t() const { return t_; }
    Interval support() const { return support_; }
    FieldSource source() const { return source_; }

    /// Density, zero outside the support.
    double density(double x) const {
        if (!(x > support_.lo && x < support_.hi)) return 0.0;
        return density_(x);
    }
    double operator()(double x) const { return density(x); }

    /// int f(x) rho(x) dx over the support.
    template <class F>
    AdaptiveResult integrate(const F& f, double rel_tol = 1e-13) const {
        return integrate_cosine_mapped_adaptive([&](double x) { return f(x) * density(x); }, support_.lo,
                                                support_.hi, rel_tol, 64, 8192);
    }

    double mass() const { return cdf_.back(); }

    /// Cumulative mass up to x.
    double cdf(double x) const {
        if (x <= support_.lo) return 0.0;
        if (x >= support_.hi) return cdf_.back();
        const double phi = to_phi(x);
        const double h = std::numbers::pi / static_cast<double>(cdf_panels);
        const auto k = std::min(static_cast<std::size_t>(phi / h), cdf_panels - 1);
        return cdf_[k] + panel_mass(k * h, phi);
    }

private:
    static constexpr std::size_t cdf_panels = 1024;

    double to_phi(double x) const {
        const double r = std::clamp((x - support_.lo) / (support_.hi - support_.lo), 0.0, 1.0);
        return 2.0 * std::asin(std::sqrt(r));
    }

    double panel_mass(double p0, double p1) const {
        const auto& rule = *gauss_legendre<double>(16);
        const double w = support_.hi - support_.lo;
        const double half = (p1 - p0) / 2, mid = (p0 + p1) / 2;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double phi = mid + half * rule.nodes[i];
            const double s = std::sin(phi / 2);
            acc += rule.weights[i] * density(support_.lo + w * s * s) * w * std::sin(phi) / 2;
        }
        return acc * half;
    }

    void build_cdf() {
        cdf_.assign(cdf_panels + 1, 0.0);
        const double h = std::numbers::pi / static_cast<double>(cdf_panels);
        for (std::size_t k = 0; k < cdf_panels; ++k) cdf_[k + 1] = cdf_[k] + panel_mass(k * h, (k + 1) * h);
    }

    PotentialKind kind_;
    double t_;
    Interval support_;
    std::function<double(double)> density_;
    FieldSource source_;
    std::vector<double> cdf_;
};

/// Semicircle of radius 2 sqrt(t).
inline MasterField master_field_q(double t) {
    if (!(t > 0.0)) throw invalid_input("master_field_q needs t > 0");
    const double r = 2.0 * std::sqrt(t);
    auto rho = [r, t](double x) { return std::sqrt(std::max(0.0, (r - x) * (r + x))) / (2.0 * std::numbers::pi * t); };
    return MasterField(PotentialKind::q, t, {-r, r}, rho, FieldSource::closed_form);
}

/// Ordered endpoints 2e^{2t} - e^t -/+ 2e^{3t/2} sqrt(e^t - 1), written as
/// e^t (sqrt(1+u) -/+ sqrt(u))^2 with u = e^t - 1 to stay accurate as t -> 0.
inline Interval sw_support(double t) {
    if (!(t > 0.0)) throw invalid_input("sw_support needs t > 0");
    const double u = std::expm1(t);
    const double s = std::sqrt(1.0 + u) + std::sqrt(u);
    const double e = std::exp(t);
    return {e / (s * s), e * s * s};
}

inline MasterField master_field_sw(double t) {
    const Interval c = sw_support(t);
    const double q = std::exp(-t);
    auto rho = [t, q](double x) {
        const double d = 1.0 + q * x;
        const double arg = std::max(0.0, 4.0 * x - d * d);
        return std::atan2(std::sqrt(arg), d) / (std::numbers::pi * t * x);
    };
    return MasterField(PotentialKind::sw, t, c, rho, FieldSource::closed_form);
}

} // namespace gaussym::large_n

#endif
