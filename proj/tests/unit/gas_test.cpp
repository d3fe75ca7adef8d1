#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gaussym/large_n/master_field.hpp"
#include "gaussym/montecarlo/coulomb_gas.hpp"
#include "gaussym/montecarlo/density.hpp"
#include "gaussym/montecarlo/io.hpp"

using namespace gaussym;
using namespace gaussym::mc;

namespace {

GasRun run(PotentialKind kind, int N, double t, double beta, std::int64_t sweeps, std::uint64_t seed) {
    GasOptions o;
    o.sweeps = sweeps;
    o.seed = seed;
    return coulomb_metropolis(initial_gas_state(kind, N, t, beta), o);
}

// Exact Metropolis kernel of a 2-particle toy on a grid: pick a particle (1/2), propose any
// other grid site uniformly (symmetric in the move coordinate y), accept with min(1, e^{log_acceptance}).
// Detailed balance: pi(s) P(s -> s') == pi(s') P(s' -> s) with pi the target in y-coordinates.
void check_detailed_balance(PotentialKind kind, const std::vector<double>& sites, double t, double beta,
                            double (*log_jac)(double)) {
    const int G = static_cast<int>(sites.size());
    const double sigma2 = t / 2.0;
    const Potential pot{kind};
    auto log_pi = [&](double a, double b) {
        return -pot.eval(a, std::sqrt(sigma2)) - pot.eval(b, std::sqrt(sigma2)) + beta * std::log(std::abs(a - b)) +
               log_jac(a) + log_jac(b);
    };
    auto P = [&](int a, int b, int c, int d) {
        // (a, b) -> (c, d) moving exactly one particle
        double p = 0.0;
        const std::vector<double> x{sites[a], sites[b]};
        if (b == d && a != c && c != b) p += 0.5 / (G - 1) * std::min(1.0, std::exp(log_acceptance(kind, t, beta, x, 0, sites[c])));
        if (a == c && b != d && d != a) p += 0.5 / (G - 1) * std::min(1.0, std::exp(log_acceptance(kind, t, beta, x, 1, sites[d])));
        return p;
    };
    int checked = 0;
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) {
            if (a == b) continue;
            for (int c = 0; c < G; ++c)
                for (int d = 0; d < G; ++d) {
                    if (c == d) continue;
                    const double fwd = std::exp(log_pi(sites[a], sites[b])) * P(a, b, c, d);
                    const double bwd = std::exp(log_pi(sites[c], sites[d])) * P(c, d, a, b);
                    if (fwd == 0.0 && bwd == 0.0) continue;
                    EXPECT_NEAR(fwd, bwd, 1e-12 * std::max(fwd, bwd));
                    ++checked;
                }
        }
    EXPECT_GT(checked, 0);
}

double no_jacobian(double) { return 0.0; }
double log_jacobian(double x) { return std::log(x); }
double log_jacobian_wall(double x) { return std::log(x - 1.0); }

} // namespace

TEST(GasKernel, DetailedBalanceAdditive) {
    std::vector<double> sites;
    for (int i = 0; i < 7; ++i) sites.push_back(-1.5 + 0.5 * i);
    check_detailed_balance(PotentialKind::q, sites, 1.0, 2.0, no_jacobian);
}

TEST(GasKernel, DetailedBalanceMultiplicative) {
    std::vector<double> sites, wall;
    for (int i = 0; i < 7; ++i) {
        sites.push_back(std::exp(-0.9 + 0.3 * i));
        wall.push_back(1.0 + std::exp(-2.0 + 0.5 * i));
    }
    check_detailed_balance(PotentialKind::sw, sites, 0.5, 1.0, log_jacobian);
    check_detailed_balance(PotentialKind::s, wall, 0.5, 1.0, log_jacobian_wall);
}

TEST(Gas, SemicircleAtUnitT) {
    const auto r = run(PotentialKind::q, 64, 1.0, 2.0, 20000, 3);
    const auto f = large_n::master_field_q(1.0);
    EXPECT_DOUBLE_EQ(f.support().hi, 2.0);
    EXPECT_LT(ks_distance(r, [&](double x) { return f.cdf(x); }), 0.08);
    EXPECT_GT(r.acceptance_rate, 0.1);
    EXPECT_LT(r.acceptance_rate, 0.7);
}

TEST(Gas, SWSupportWithinFivePercent) {
    const auto r = run(PotentialKind::sw, 64, 0.25, 2.0, 20000, 4);
    const auto c = large_n::sw_support(0.25);
    const auto v = pooled_sorted(r);
    const double w = c.hi - c.lo;
    EXPECT_GE(quantile_sorted(v, 0.001), c.lo - 0.05 * w);
    EXPECT_LE(quantile_sorted(v, 0.999), c.hi + 0.05 * w);
    EXPECT_GT(v.front(), 0.0);
}

TEST(Gas, TwoParticlesNeverCollide) {
    const auto r = run(PotentialKind::q, 2, 1e4, 1.0, 20000, 5);
    for (std::size_t s = 0; s < r.snapshots(); ++s) {
        const auto x = r.snapshot(s);
        ASSERT_NE(x[0], x[1]);
    }
    EXPECT_NE(r.final_state.particles[0], r.final_state.particles[1]);
}

TEST(Gas, SameSeedSameChain) {
    const auto a = run(PotentialKind::s, 8, 0.25, 1.0, 2000, 77);
    const auto b = run(PotentialKind::s, 8, 0.25, 1.0, 2000, 77);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.step, b.step);
    EXPECT_NE(a.samples, run(PotentialKind::s, 8, 0.25, 1.0, 2000, 78).samples);
}

TEST(Gas, SnapshotsAfterBurnInAtStride) {
    GasOptions o;
    o.sweeps = 1000;
    o.burn_in_fraction = 0.25;
    o.stride_moves = 16;
    const auto r = coulomb_metropolis(initial_gas_state(PotentialKind::q, 8, 1.0, 2.0), o);
    EXPECT_EQ(r.snapshots(), static_cast<std::size_t>(750 * 8 / 16));
}

TEST(Gas, TuningFailureReported) {
    GasOptions o;
    o.sweeps = 500;
    o.auto_tune = false;
    o.step = 50.0;
    EXPECT_THROW(coulomb_metropolis(initial_gas_state(PotentialKind::q, 16, 1.0, 2.0), o), tuning_failure);
}

TEST(Gas, InvalidStatesRejected) {
    GasState g{PotentialKind::sw, 1.0, 2.0, {1.0, 1.0, 2.0}};
    EXPECT_THROW(coulomb_metropolis(g, {}), invalid_input);
    g.particles = {1.0, -2.0};
    EXPECT_THROW(coulomb_metropolis(g, {}), invalid_input);
    g.particles = {1.0};
    EXPECT_THROW(coulomb_metropolis(g, {}), invalid_input);
}

TEST(Density, HistogramIntegratesToOne) {
    const auto r = run(PotentialKind::q, 32, 1.0, 2.0, 2000, 6);
    const auto h = empirical_density(r, 50);
    double mass = 0;
    for (std::size_t i = 0; i < h.density.size(); ++i) mass += h.density[i] * (h.edges[i + 1] - h.edges[i]);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_LE(h.edges.front(), *std::min_element(r.samples.begin(), r.samples.end()));
    EXPECT_GE(h.edges.back(), *std::max_element(r.samples.begin(), r.samples.end()));
}

TEST(Density, NeedsHundredSnapshots) {
    const auto r = run(PotentialKind::q, 4, 1.0, 2.0, 100, 6);
    ASSERT_LT(r.snapshots(), 100u);
    EXPECT_THROW(empirical_density(r, 10), invalid_input);
}

TEST(Density, BinRefinementStable) {
    const auto r = run(PotentialKind::sw, 64, 0.25, 2.0, 100000, 8);
    const auto f = large_n::master_field_sw(0.25);
    auto cdf = [&](double x) { return f.cdf(x); };
    const double k1 = ks_distance(empirical_density(r, 64), cdf);
    const double k2 = ks_distance(empirical_density(r, 128), cdf);
    EXPECT_LT(std::abs(k1 - k2), 0.01);
}

TEST(Density, KsDistanceAgainstKnownCdf) {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back((i + 0.5) / 1000.0);
    EXPECT_NEAR(ks_distance_sorted(v, [](double x) { return x; }), 0.0005, 1e-12);
    std::vector<double> w(v.begin(), v.end());
    for (double& x : w) x = x * 0.5;
    EXPECT_NEAR(ks_two_sample(v, w), 0.5, 2e-3);
    EXPECT_EQ(ks_two_sample(v, v), 0.0);
}

// beta rescaling: the gas at (beta = 1, t) and at (beta = 2, t/2) share one master field.
TEST(Universality, RescaledGasesAgree) {
    auto a = pooled_sorted(run(PotentialKind::sw, 64, 0.25, 1.0, 50000, 21));
    auto b = pooled_sorted(run(PotentialKind::sw, 64, 0.125, 2.0, 50000, 22));
    EXPECT_LT(ks_two_sample(a, b), 0.05);
}

TEST(GasIo, SnapshotsWithSidecar) {
    const auto r = run(PotentialKind::q, 4, 1.0, 2.0, 200, 9);
    const auto path = std::filesystem::temp_directory_path() / ("gaussym_gas_" + std::to_string(std::random_device{}()) + ".csv");
    write_snapshots(r, path);
    std::ifstream in(path);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
    }
    EXPECT_EQ(rows, r.snapshots());
    const auto meta = nlohmann::json::parse(std::ifstream(path.string() + ".json"));
    EXPECT_EQ(meta.at("schema_version"), 1);
    EXPECT_EQ(meta.at("seed"), 9);
    EXPECT_EQ(meta.at("rng"), "philox4x32-10/1");
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".json");
}
