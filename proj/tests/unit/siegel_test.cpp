#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gaussym/large_n/free_energy.hpp"
#include "gaussym/large_n/saddle.hpp"
#include "gaussym/large_n/siegel_solver.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"
#include "gaussym/montecarlo/density.hpp"

using namespace gaussym;
using namespace gaussym::large_n;

TEST(Siegel, SolutionAtQuarter) {
    const auto s = siegel_saddle_solve(0.25);
    EXPECT_NEAR(s.field.mass(), 1.0, 1e-8);
    EXPECT_NEAR(s.normalization, 1.0, 1e-8);
    EXPECT_EQ(s.field.support().lo, 1.0);
    EXPECT_DOUBLE_EQ(s.field.support().hi, s.b);
    EXPECT_LT(s.max_residual, 1e-4);
    EXPECT_FALSE(s.residual_history.empty());
    const auto [a, b] = s.field.support();
    for (int i = 1; i < 200; ++i) EXPECT_GE(s.field.density(a + (b - a) * i / 200.0), 0.0);
    // independent residual check at beta = 1
    for (const auto& p : saddle_residual(s.field, 1.0, interior_probes(s.field, 11))) EXPECT_LT(std::abs(p.residual), 1e-4);
}

TEST(Siegel, SmallTEdge) {
    const double t = 1e-3;
    const auto s = siegel_saddle_solve(t);
    EXPECT_NEAR(s.b, 1.0 + 8.0 * t, 2.0 * t);
}

TEST(Siegel, EdgeGrowsWithT) {
    double prev = 1.0;
    for (double t : {0.01, 0.05, 0.1, 0.25, 0.5}) {
        const double b = siegel_saddle_solve(t).b;
        EXPECT_GT(b, prev) << t;
        prev = b;
    }
}

TEST(Siegel, RejectsBadOptions) {
    EXPECT_THROW(siegel_saddle_solve(0.0), invalid_input);
    SiegelOptions o;
    o.collocation = o.basis_size;
    EXPECT_THROW(siegel_saddle_solve(0.25, o), invalid_input);
    o = {};
    o.basis_size = 0;
    EXPECT_THROW(siegel_saddle_solve(0.25, o), invalid_input);
}

TEST(Siegel, MatchesGas) {
    const double t = 0.25;
    const auto s = siegel_saddle_solve(t);
    mc::GasOptions o;
    o.sweeps = 20000;
    o.seed = 11;
    const auto run = mc::coulomb_metropolis(mc::initial_gas_state(PotentialKind::s, 64, t, 1.0), o);
    EXPECT_LT(mc::ks_distance(run, [&](double x) { return s.field.cdf(x); }), 0.1);
}

TEST(Siegel, FreeEnergyFinite) {
    const auto s = siegel_saddle_solve(0.25);
    const auto f = siegel_free_energy(s.field);
    EXPECT_TRUE(std::isfinite(f.value));
    EXPECT_LT(f.error, 1e-6);
    EXPECT_THROW(siegel_free_energy(master_field_q(1.0)), invalid_input);
}
