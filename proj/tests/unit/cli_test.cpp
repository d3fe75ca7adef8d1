#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gaussym/cli/app.hpp"
#include "gaussym/finite_n/closed_form.hpp"
#include "gaussym/large_n/free_energy.hpp"

using namespace gaussym;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gaussym");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = gaussym::cli::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& stem) {
    const auto p = std::filesystem::temp_directory_path() / ("gaussym_cli_" + stem + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST(CliPartition, ClosedFormValue) {
    const auto r = run_cli({"--no-cache", "partition", "--space", "pdc", "--N", "8", "--sigma", "0.3", "--method", "closed"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const auto ref = finite_n::z2_closed_form(8, 0.3, {});
    EXPECT_DOUBLE_EQ(j.at("log_value").get<double>(), ref.log_value);
    EXPECT_EQ(j.at("method"), "closed_form");
    for (const char* k : {"schema_version", "space", "N", "sigma", "beta", "t", "log_value_display", "std_error",
                          "convention", "manifest_ref", "manifest"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j.at("manifest").at("config_hash"), j.at("manifest_ref"));
    EXPECT_FALSE(j.at("manifest").at("timestamp").get<std::string>().empty());
}

TEST(CliPartition, LargeNLeadingOrder) {
    const auto r =
        run_cli({"--no-cache", "partition", "--space", "pdr", "--N", "64", "--sigma", "0.0625", "--method", "largen", "--reduced"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const double t = 0.0625 * 0.0625 * 64;
    EXPECT_NEAR(j.at("t").get<double>(), t, 1e-15);
    EXPECT_NEAR(j.at("log_value").get<double>(), 64.0 * 64.0 * 0.5 * large_n::f_uni(0.5 * t).value, 1e-9);
    EXPECT_TRUE(j.contains("warning"));
}

TEST(CliPartition, IncompatibleMethodIsUsageError) {
    const auto r = run_cli({"--no-cache", "partition", "--space", "pdr", "--N", "4", "--sigma", "0.3", "--method", "closed"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("usage error"), std::string::npos);
    EXPECT_NE(r.err.find("closed"), std::string::npos);
    EXPECT_EQ(run_cli({"partition", "--space", "pdc"}).code, 2);
    EXPECT_EQ(run_cli({"partition", "--space", "nope", "--N", "2", "--sigma", "0.3"}).code, 2);
}

TEST(CliPartition, CacheReplaysBytes) {
    const auto dir = scratch("cache");
    const std::vector<std::string> args{"--cache-dir", dir.string(), "partition", "--space", "pdr",
                                        "--N",         "4",          "--sigma",   "0.3",     "--method",
                                        "skew"};
    const auto a = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(std::filesystem::exists(dir / "results"));
    std::filesystem::remove_all(dir);
}

TEST(CliPartition, FlagsOverrideConfigFile) {
    const auto dir = scratch("config");
    const auto cfg = dir / "run.ini";
    std::ofstream(cfg) << "[partition]\nspace = pdc\nN = 4\nsigma = 0.9\nmethod = closed\n";
    const auto r = run_cli({"--no-cache", "--config", cfg.string(), "partition", "--sigma", "0.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("N"), 4);
    EXPECT_DOUBLE_EQ(j.at("sigma").get<double>(), 0.3);
    std::filesystem::remove_all(dir);
}

TEST(CliMasterField, WritesCsvAndSidecar) {
    const auto dir = scratch("mf");
    for (const char* kind : {"SW", "Q"}) {
        const auto out = dir / (std::string(kind) + ".csv");
        const auto r = run_cli({"masterfield", "--kind", kind, "--t", "0.25", "--grid", "32", "--out", out.string()});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto csv = slurp(out);
        EXPECT_EQ(csv.rfind("lambda,rho\n", 0), 0u);
        EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 33);
        const auto meta = json::parse(slurp(out.string() + ".json"));
        EXPECT_EQ(meta.at("grid"), 32);
    }
    std::filesystem::remove_all(dir);
}

TEST(CliMasterField, TinyGridIsUsageError) {
    const auto dir = scratch("mf1");
    EXPECT_EQ(run_cli({"masterfield", "--kind", "Q", "--t", "1", "--grid", "1", "--out", (dir / "x.csv").string()}).code, 2);
    EXPECT_EQ(run_cli({"masterfield", "--kind", "Z", "--t", "1", "--out", (dir / "x.csv").string()}).code, 2);
    std::filesystem::remove_all(dir);
}

TEST(CliGas, SummaryHasKs) {
    const auto r = run_cli({"gas", "--potential", "Q", "--N", "16", "--t", "1", "--sweeps", "2000", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("seed"), 4);
    EXPECT_LT(j.at("ks_distance").get<double>(), 0.2);
}

TEST(CliVerify, SaddleSuitePasses) {
    const auto dir = scratch("verify");
    const auto report = dir / "report.json";
    const auto r = run_cli({"verify", "--suite", "saddle", "--report", report.string()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    const auto j = json::parse(slurp(report));
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("criteria").size(), 1u);
    std::filesystem::remove_all(dir);
    EXPECT_EQ(run_cli({"verify", "--suite", "bogus"}).code, 2);
}

TEST(CliBinary, Version) {
    std::unique_ptr<FILE, int (*)(FILE*)> p(popen((std::string(GAUSSYM_CLI_PATH) + " --version").c_str(), "r"), pclose);
    ASSERT_TRUE(p);
    char buf[128] = {};
    ASSERT_NE(fgets(buf, sizeof buf, p.get()), nullptr);
    EXPECT_EQ(std::string(buf).substr(0, std::string(GAUSSYM_VERSION).size()), GAUSSYM_VERSION);
}
