#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gaussym/core/ensemble.hpp"
#include "gaussym/core/errors.hpp"
#include "gaussym/core/hash.hpp"
#include "gaussym/core/potential.hpp"
#include "gaussym/core/precision.hpp"
#include "gaussym/core/prefactor.hpp"

using namespace gaussym;

TEST(Ensemble, ParsesSpaceNames) {
    EXPECT_EQ(parse_space("pdr"), Space::pd_real);
    EXPECT_EQ(parse_space("pd_complex"), Space::pd_complex);
    EXPECT_EQ(parse_space("pdq"), Space::pd_quaternion);
    EXPECT_EQ(parse_space("siegel"), Space::siegel);
    EXPECT_THROW(parse_space("hyperbolic"), invalid_input);
}

TEST(Ensemble, NaturalBetaAndThooftParameter) {
    const auto s = EnsembleSpec::make(Space::pd_quaternion, 8, 0.25);
    EXPECT_EQ(s.beta, 4.0);
    EXPECT_DOUBLE_EQ(s.t(), 0.5);
    EXPECT_EQ(EnsembleSpec::make(Space::siegel, 2, 1.0).beta, 1.0);
}

TEST(Ensemble, RejectsInvalidSpecs) {
    EXPECT_THROW(EnsembleSpec::make(Space::pd_complex, 0, 0.5), invalid_input);
    EXPECT_THROW(EnsembleSpec::make(Space::pd_complex, 2, 0.0), invalid_input);
    EXPECT_THROW(EnsembleSpec::make(Space::pd_complex, 2, -1.0), invalid_input);
    EnsembleSpec s{Space::pd_real, 4, 0.5, 2.0, false};
    EXPECT_THROW(s.validate(), invalid_input);
    s.generalized_beta = true;
    EXPECT_NO_THROW(s.validate());
}

TEST(Ensemble, ConventionNeedsPositiveConstants) {
    PrefactorConvention c;
    EXPECT_NO_THROW(c.validate());
    c.omega_beta_N = 0.0;
    EXPECT_THROW(c.validate(), invalid_input);
}

TEST(Potential, ValuesAtSimplePoints) {
    const double e = std::exp(1.0);
    EXPECT_DOUBLE_EQ(potential_eval(Potential{PotentialKind::sw}, e, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(potential_eval(Potential{PotentialKind::q}, 3.0, 1.0), 4.5);
    EXPECT_DOUBLE_EQ(potential_eval(Potential{PotentialKind::s}, 1.0, 0.5), 0.0);
    const double x = std::cosh(2.0);
    EXPECT_NEAR(potential_eval(Potential{PotentialKind::s}, x, 0.5), 4.0 / (8 * 0.25), 1e-14);
}

TEST(Potential, DomainViolationsThrow) {
    EXPECT_THROW(potential_eval(Potential{PotentialKind::sw}, 0.0, 1.0), invalid_input);
    EXPECT_THROW(potential_eval(Potential{PotentialKind::s}, 0.999, 1.0), invalid_input);
    EXPECT_THROW(potential_deriv(Potential{PotentialKind::s}, 1.0, 1.0), invalid_input);
    EXPECT_NO_THROW(potential_eval(Potential{PotentialKind::q}, -5.0, 1.0));
}

TEST(Potential, DerivativeMatchesCentralDifference) {
    for (auto kind : {PotentialKind::sw, PotentialKind::s, PotentialKind::q}) {
        const Potential p{kind};
        for (double x : {1.3, 2.0, 5.5}) {
            const double h = 1e-5;
            const double fd = (p.eval(x + h, 0.7) - p.eval(x - h, 0.7)) / (2 * h);
            EXPECT_NEAR(p.deriv(x, 0.7), fd, 1e-7 * std::max(1.0, std::abs(fd))) << to_string(kind) << " x=" << x;
        }
    }
}

TEST(Prefactor, PositiveDefiniteFormula) {
    const auto s = EnsembleSpec::make(Space::pd_complex, 2, 0.5);
    // N_beta = 2: log 2pi * 2 - 2*2 log 2 - 2*4*0.25/2
    const double expect = 2 * std::log(2 * std::numbers::pi) - 4 * std::log(2.0) - 1.0;
    EXPECT_NEAR(log_prefactor(s, {}), expect, 1e-14);
    PrefactorConvention c;
    c.omega_beta_N = 3.0;
    EXPECT_NEAR(log_prefactor(s, c) - log_prefactor(s, {}), std::log(3.0), 1e-14);
}

TEST(Prefactor, SiegelFormula) {
    const auto s = EnsembleSpec::make(Space::siegel, 2, 0.5);
    EXPECT_NEAR(log_prefactor(s, {}), std::log(8.0 * 2.0), 1e-14);
}

TEST(Prefactor, ReducedIntegralRoundTrip) {
    for (auto sp : {Space::pd_real, Space::siegel}) {
        const auto s = EnsembleSpec::make(sp, 4, 0.3);
        EXPECT_NEAR(log_integral_from_reduced(s, log_reduced_from_integral(s, 1.25)), 1.25, 1e-14);
    }
}

TEST(Prefactor, AssembleHonoursConvention) {
    const auto s = EnsembleSpec::make(Space::pd_real, 2, 0.5);
    PrefactorConvention off;
    off.include_prefactor = false;
    EXPECT_EQ(assemble_result(s, off, -1.0, Method::quadrature, 0.0).log_value, -1.0);
    EXPECT_NEAR(assemble_result(s, {}, -1.0, Method::quadrature, 0.0).log_value, -1.0 + log_prefactor(s, {}), 1e-14);
}

TEST(Vandermonde, ProductOfGaps) {
    const std::vector<double> u{1.0, 2.0, 4.0};
    EXPECT_NEAR(log_vandermonde(u, 1.0), std::log(1.0 * 3.0 * 2.0), 1e-14);
    EXPECT_NEAR(log_vandermonde(u, 4.0), 4 * std::log(6.0), 1e-13);
    const std::vector<double> c{1.0, 2.0, 1.0};
    EXPECT_EQ(log_vandermonde(c, 1.0), -std::numeric_limits<double>::infinity());
}

// MPFR precision is requested in decimal digits, so the carried bits may round up slightly.
TEST(Precision, ScopeSetsAndRestoresBits) {
    auto near = [](unsigned got, unsigned want) { return got >= want && got < want + 8; };
    const unsigned before = mantissa_bits(xreal(1));
    {
        precision_scope outer(512);
        EXPECT_PRED2(near, mantissa_bits(xreal(1)), 512u);
        {
            precision_scope inner(1024);
            EXPECT_PRED2(near, mantissa_bits(xreal(1)), 1024u);
        }
        EXPECT_PRED2(near, mantissa_bits(xreal(1)), 512u);
    }
    EXPECT_EQ(mantissa_bits(xreal(1)), before);
}

TEST(Precision, DecimalRoundTrip) {
    precision_scope p(256);
    const xreal third = xreal(1) / 3;
    const xreal back = parse_xreal(to_decimal(third));
    EXPECT_LT(abs(back - third), xreal(1e-70));
}

TEST(Hash, KnownFnv1aVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}
