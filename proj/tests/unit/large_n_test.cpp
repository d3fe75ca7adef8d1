#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gaussym/large_n/export.hpp"
#include "gaussym/large_n/free_energy.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/saddle.hpp"
#include "gaussym/large_n/trilog.hpp"

using namespace gaussym;
using namespace gaussym::large_n;

namespace {

constexpr double apery = 1.2020569031595942854;

// Li3 by brute-force summation, valid for 0 <= x <= 0.95 or so.
double li3_series(double x) {
    double s = 0.0, p = 1.0;
    for (int k = 1; k < 2000; ++k) {
        p *= x;
        s += p / (static_cast<double>(k) * k * k);
        if (p < 1e-20) break;
    }
    return s;
}

double planar(double t) {
    return 2.0 * t / 3.0 - std::numbers::pi * std::numbers::pi / (6.0 * t) + (apery - li3_series(std::exp(-t))) / (t * t);
}

} // namespace

TEST(MasterFieldQ, SemicircleMoments) {
    for (double t : {0.25, 1.0, 3.0}) {
        const auto f = master_field_q(t);
        EXPECT_NEAR(f.mass(), 1.0, 1e-12);
        EXPECT_NEAR(f.integrate([](double x) { return x; }).value, 0.0, 1e-12);
        EXPECT_NEAR(f.integrate([](double x) { return x * x; }).value, t, 1e-12 * t);
        EXPECT_NEAR(f.integrate([](double x) { return x * x * x * x; }).value, 2.0 * t * t, 1e-11 * t * t);
        EXPECT_NEAR(f.cdf(0.0), 0.5, 1e-12);
    }
}

TEST(MasterFieldSW, EndpointsAreQuadraticRoots) {
    for (double t : {1e-3, 0.1, 0.25, 1.0, 2.0}) {
        const auto [a, b] = sw_support(t);
        const double e = std::exp(t);
        // roots of e^{-2t} x^2 + (2 e^{-t} - 4) x + 1
        EXPECT_NEAR(a * b, e * e, 1e-12 * e * e);
        EXPECT_NEAR(a + b, (4.0 - 2.0 / e) * e * e, 1e-12 * (a + b));
        const auto f = master_field_sw(t);
        EXPECT_NEAR(f.mass(), 1.0, 1e-9) << t;
        EXPECT_GT(f.density(std::sqrt(a * b)), 0.0);
    }
}

TEST(MasterFieldSW, SupportCollapsesAsTGoesToZero) {
    double prev = 1e300;
    for (double t : {1.0, 0.1, 0.01, 1e-4, 1e-6}) {
        const auto [a, b] = sw_support(t);
        EXPECT_LT(b - a, prev);
        prev = b - a;
        if (t <= 0.01) {
            EXPECT_NEAR(b - a, 4.0 * std::sqrt(t), 8.0 * t); // leading order width
            EXPECT_NEAR(0.5 * (a + b), 1.0, 4.0 * t);
        }
    }
}

TEST(MasterField, CdfMonotone) {
    const auto f = master_field_sw(0.5);
    const auto [a, b] = f.support();
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double c = f.cdf(a + (b - a) * i / 400.0);
        EXPECT_GE(c, prev);
        prev = c;
    }
    EXPECT_EQ(f.cdf(a - 1.0), 0.0);
    EXPECT_NEAR(f.cdf(b + 1.0), 1.0, 1e-9);
}

TEST(MasterField, RejectsBadParameters) {
    EXPECT_THROW(master_field_q(0.0), invalid_input);
    EXPECT_THROW(master_field_sw(-1.0), invalid_input);
    EXPECT_THROW(MasterField(PotentialKind::q, 1.0, {1.0, 1.0}, [](double) { return 1.0; }, FieldSource::solver),
                 invalid_input);
}

TEST(Saddle, ClosedFormFieldsSolveAtBetaTwo) {
    for (double t : {0.1, 0.25, 1.0}) {
        const auto q = master_field_q(t);
        const auto sw = master_field_sw(t);
        for (const auto& p : saddle_residual(q, 2.0, interior_probes(q, 17))) {
            ASSERT_FALSE(p.rejected);
            EXPECT_LT(std::abs(p.residual), 1e-6);
        }
        for (const auto& p : saddle_residual(sw, 2.0, interior_probes(sw, 17))) EXPECT_LT(std::abs(p.residual), 1e-5);
        // wrong beta leaves an O(1) residual
        const auto bad = saddle_probe(q, 1.0, 0.3 * q.support().hi);
        EXPECT_GT(std::abs(bad.residual), 0.1);
    }
}

TEST(Saddle, ZeroDensityLeavesTheForceTerm) {
    const MasterField empty(PotentialKind::sw, 0.5, {0.5, 2.0}, [](double) { return 0.0; }, FieldSource::solver);
    for (double x : {0.7, 1.0, 1.8}) {
        const auto p = saddle_probe(empty, 2.0, x);
        EXPECT_NEAR(p.residual, std::log(x) / (2.0 * 0.5 * x), 1e-15);
    }
}

TEST(Saddle, EdgeProbesRejected) {
    const auto q = master_field_q(1.0);
    EXPECT_TRUE(saddle_probe(q, 2.0, 1.999).rejected);
    EXPECT_TRUE(saddle_probe(q, 2.0, -3.0).rejected);
    EXPECT_TRUE(std::isnan(saddle_probe(q, 2.0, 1.999).residual));
    EXPECT_FALSE(saddle_probe(q, 2.0, 1.9).rejected);
}

TEST(Saddle, ForceTerms) {
    EXPECT_DOUBLE_EQ(saddle_lhs(PotentialKind::q, 1.5, 2.0, 0.5), 1.5);
    EXPECT_NEAR(saddle_lhs(PotentialKind::s, 1.0, 1.0, 0.25), 1.0, 1e-15);
    EXPECT_NEAR(saddle_lhs(PotentialKind::s, 1.0 + 1e-7, 1.0, 0.25), saddle_lhs(PotentialKind::s, 1.0 + 2e-8, 1.0, 0.25),
                1e-7);
    EXPECT_THROW(saddle_lhs(PotentialKind::sw, 0.0, 2.0, 1.0), invalid_input);
    EXPECT_THROW(saddle_lhs(PotentialKind::s, 0.5, 1.0, 1.0), invalid_input);
}

TEST(FreeEnergy, MatchesPlanarFormula) {
    for (double t : {0.05, 0.125, 0.5, 1.0, 3.0}) {
        const auto f = f_uni(t);
        EXPECT_NEAR(f.value, planar(t), 1e-7 * std::max(1.0, std::abs(planar(t)))) << t;
        EXPECT_LT(f.error, 1e-6);
    }
}

TEST(FreeEnergy, BetaScaling) {
    for (double beta : {1.0, 2.0, 4.0}) {
        const double t = 0.2;
        EXPECT_NEAR(reduced_free_energy_pd(beta, t).value, beta / 2.0 * planar(beta * t / 2.0), 1e-7);
    }
    EXPECT_THROW(reduced_free_energy_pd(0.0, 1.0), invalid_input);
}

TEST(FreeEnergy, TrilogAsymptotic) {
    const double t = 0.5;
    const int N = 100;
    const double expected = -0.5 * std::log(2.0 * N / std::numbers::pi) + 0.75 + t / 6.0 -
                            (li3_series(std::exp(-t)) - apery) / (t * t);
    EXPECT_NEAR(z2_asymptotic(N, t), expected, 1e-13);
    EXPECT_THROW(z2_asymptotic(0, t), invalid_input);
    EXPECT_THROW(z2_asymptotic(4, 0.0), invalid_input);
}

TEST(Trilog, SpecialValues) {
    EXPECT_EQ(trilog(0.0), 0.0);
    EXPECT_NEAR(trilog(1.0), apery, 1e-15);
    EXPECT_NEAR(zeta3(), apery, 1e-15);
    EXPECT_NEAR(trilog(-1.0), -0.75 * apery, 1e-15);
    // Li3(1/2) = 7/8 zeta(3) - pi^2 log 2 / 12 + log^3 2 / 6
    const double l2 = std::log(2.0);
    EXPECT_NEAR(trilog(0.5), 7.0 / 8.0 * apery - std::numbers::pi * std::numbers::pi * l2 / 12.0 + l2 * l2 * l2 / 6.0,
                1e-15);
    EXPECT_NEAR(trilog(0.5), li3_series(0.5), 1e-15);
}

TEST(Trilog, AgreesWithSeriesAndBound) {
    for (double x : {0.1, 0.4, 0.51, 0.6, 0.8, 0.9, 0.95, -0.3, -0.7, -0.99}) {
        const double ref = x >= 0 ? li3_series(x) : li3_series(x * x) / 4.0 - li3_series(-x);
        if (std::abs(x) > 0.95) continue;
        EXPECT_NEAR(trilog(x), ref, 1e-14) << x;
        EXPECT_LT(trilog_bounded(x).error_bound, 1e-14) << x;
    }
}

TEST(Trilog, PositiveAndIncreasingOnUnitInterval) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        EXPECT_GT(trilog(b), 0.0);
        EXPECT_LE(trilog(a), trilog(b));
        EXPECT_LE(trilog(b), apery);
    }
    EXPECT_THROW(trilog(1.0001), invalid_input);
    EXPECT_THROW(trilog(-1.5), invalid_input);
}

TEST(Export, CsvAndSidecar) {
    const auto f = master_field_q(1.0);
    std::ostringstream s;
    write_field_csv(f, 4, s);
    std::istringstream in(s.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "lambda,rho");
    std::vector<double> xs;
    while (std::getline(in, line)) xs.push_back(std::stod(line.substr(0, line.find(','))));
    ASSERT_EQ(xs.size(), 4u);
    EXPECT_DOUBLE_EQ(xs.front(), -1.5);
    EXPECT_DOUBLE_EQ(xs.back(), 1.5);

    const auto path =
        std::filesystem::temp_directory_path() / ("gaussym_field_" + std::to_string(std::random_device{}()) + ".csv");
    export_master_field(f, 16, path, {{"note", "x"}});
    const auto meta = nlohmann::json::parse(std::ifstream(path.string() + ".json"));
    EXPECT_EQ(meta.at("grid"), 16);
    EXPECT_EQ(meta.at("note"), "x");
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".json");
    EXPECT_THROW(write_field_csv(f, 1, s), invalid_input);
    EXPECT_THROW(export_master_field(f, 1, path), invalid_input);
}
