#ifndef GAUSSYM_MONTECARLO_DENSITY_HPP
#define GAUSSYM_MONTECARLO_DENSITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"

namespace gaussym::mc {

inline constexpr std::size_t min_snapshots_for_density = 100;

struct Histogram {
    std::vector<double> edges;   // bins + 1 edges
    std::vector<double> density; // normalized to unit mass on [edges.front(), edges.back()]
};

/// All particle positions of a run, sorted.
inline std::vector<double> pooled_sorted(const GasRun& run) {
    std::vector<double> v = run.samples;
    std::sort(v.begin(), v.end());
    return v;
}

/// Normalized histogram of all particle positions. Empty range defaults to the sample range.
inline Histogram empirical_density(const GasRun& run, std::size_t bins, double lo = 0.0, double hi = 0.0) {
    if (run.snapshots() < min_snapshots_for_density)
        throw invalid_input("empirical_density needs at least 100 snapshots");
    if (bins == 0) throw invalid_input("empirical_density needs at least one bin");
    if (!(hi > lo)) {
        const auto [mn, mx] = std::minmax_element(run.samples.begin(), run.samples.end());
        lo = *mn;
        hi = *mx;
        if (!(hi > lo)) hi = lo + 1.0;
    }
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    h.density.assign(bins, 0.0);
    const double width = (hi - lo) / bins;
    for (double x : run.samples) {
        if (x < lo || x > hi) continue;
        auto k = static_cast<std::size_t>((x - lo) / width);
        h.density[std::min(k, bins - 1)] += 1.0;
    }
    const double total = static_cast<double>(run.samples.size());
    for (double& d : h.density) d /= total * width;
    return h;
}

/// sup |F_emp - F| for sorted samples against a reference CDF.
inline double ks_distance_sorted(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) throw invalid_input("ks_distance needs samples");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(sorted[i]);
        d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - F)});
    }
    return d;
}

inline double ks_distance(const GasRun& run, const std::function<double(double)>& cdf) {
    const auto v = pooled_sorted(run);
    return ks_distance_sorted(v, cdf);
}

/// KS distance of a histogram against a reference CDF, evaluated at the bin edges.
inline double ks_distance(const Histogram& h, const std::function<double(double)>& cdf) {
    double acc = 0.0, d = std::abs(cdf(h.edges.front()));
    for (std::size_t i = 0; i < h.density.size(); ++i) {
        acc += h.density[i] * (h.edges[i + 1] - h.edges[i]);
        d = std::max(d, std::abs(acc - cdf(h.edges[i + 1])));
    }
    return d;
}

/// Two-sample KS statistic for sorted inputs.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw invalid_input("ks_two_sample needs samples");
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Empirical quantile of sorted samples (linear interpolation).
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw invalid_input("quantile needs samples");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= sorted.size()) return sorted.back();
    return sorted[k] + (pos - k) * (sorted[k + 1] - sorted[k]);
}

} // namespace gaussym::mc

#endif
