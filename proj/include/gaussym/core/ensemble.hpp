#ifndef GAUSSYM_CORE_ENSEMBLE_HPP
#define GAUSSYM_CORE_ENSEMBLE_HPP

#include <cmath>
#include <string>
#include <string_view>

#include "gaussym/core/errors.hpp"

namespace gaussym {

/// Riemannian symmetric spaces with a closed eigenvalue reduction.
enum class Space { pd_real, pd_complex, pd_quaternion, siegel };

inline double natural_beta(Space s) {
    switch (s) {
    case Space::pd_real: return 1.0;
    case Space::pd_complex: return 2.0;
    case Space::pd_quaternion: return 4.0;
    case Space::siegel: return 1.0;
    }
    return 1.0;
}

inline bool is_pd(Space s) { return s != Space::siegel; }

inline std::string_view to_string(Space s) {
    switch (s) {
    case Space::pd_real: return "pd_real";
    case Space::pd_complex: return "pd_complex";
    case Space::pd_quaternion: return "pd_quaternion";
    case Space::siegel: return "siegel";
    }
    return "?";
}

/// Accepts both the long names and the CLI short forms (pdr, pdc, pdq, siegel).
inline Space parse_space(std::string_view s) {
    if (s == "pd_real" || s == "pdr") return Space::pd_real;
    if (s == "pd_complex" || s == "pdc") return Space::pd_complex;
    if (s == "pd_quaternion" || s == "pdq") return Space::pd_quaternion;
    if (s == "siegel" || s == "S") return Space::siegel;
    throw invalid_input("unknown space '" + std::string(s) + "' (expected pdr, pdc, pdq, siegel)");
}

/// Which ensemble, at which size and dispersion.
///
/// `beta` must equal the space's natural Dyson index unless `generalized_beta`
/// is set; only the large-N routes accept a generalized index.
struct EnsembleSpec {
    Space space = Space::pd_complex;
    int N = 1;
    double sigma = 1.0;
    double beta = 2.0;
    bool generalized_beta = false;

    static EnsembleSpec make(Space space, int N, double sigma) {
        EnsembleSpec s{space, N, sigma, natural_beta(space), false};
        s.validate();
        return s;
    }

    /// 't Hooft parameter N sigma^2.
    double t() const { return N * sigma * sigma; }

    void validate() const {
        if (N < 1) throw invalid_input("matrix size N must be positive");
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw invalid_input("sigma must be positive and finite");
        if (!(beta > 0.0) || !std::isfinite(beta)) throw invalid_input("beta must be positive");
        if (!std::isfinite(t())) throw invalid_input("t = N sigma^2 must be finite");
        if (!generalized_beta && beta != natural_beta(space))
            throw invalid_input("beta does not match the space's Dyson index; set generalized_beta for large-N use");
    }
};

/// Constants the partition functions use but which are conventions: omega_beta(N)
/// and vol(U(N)). Every result records which ones it used.
struct PrefactorConvention {
    double omega_beta_N = 1.0;
    double vol_UN = 1.0;
    bool include_prefactor = true;

    void validate() const {
        if (!(omega_beta_N > 0.0) || !(vol_UN > 0.0))
            throw invalid_input("prefactor constants must be strictly positive");
    }
};

enum class Method { closed_form, skew_poly, monte_carlo, quadrature, large_n };

inline std::string_view to_string(Method m) {
    switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::skew_poly: return "skew_poly";
    case Method::monte_carlo: return "monte_carlo";
    case Method::quadrature: return "quadrature";
    case Method::large_n: return "large_n";
    }
    return "?";
}

/// log Z (or log of the reduced part Z / prefactor when the convention excludes it).
struct PartitionResult {
    double log_value = 0.0;
    Method method = Method::closed_form;
    double error_estimate = 0.0;
    PrefactorConvention convention{};
};

} // namespace gaussym

#endif
