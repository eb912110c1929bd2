// Configuration parsing, reports and the command layer (run in-process).

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhsf/cli.hpp"

using namespace qhsf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::path(testing::TempDir()) / ("qhsf_" + name);
    fs::remove_all(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(CliOptions o) {
    std::ostringstream out, err;
    const int code = run_command(o, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
    const RunConfig c = parse_config(R"({"tier": "fast", "seed": 42, "grid": {"n_max": 3}, "quadrature": {"t_nodes": 20}})");
    EXPECT_EQ(c.tier, Tier::fast);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.grid.n_max, 3);
    EXPECT_EQ(c.quadrature_config().t_nodes, 20);
    EXPECT_EQ(c.quadrature_config().sft_t_nodes, QuadratureConfig::for_tier(Tier::fast).sft_t_nodes);
    const nlohmann::json round = c;
    EXPECT_EQ(round.get<RunConfig>().seed, 42u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("{\"tier\": \"fast\","), InputError);
    EXPECT_THROW(parse_config(R"({"teir": "fast"})"), InputError);
    EXPECT_THROW(parse_config(R"({"tier": "slow"})"), InputError);
    EXPECT_THROW(parse_config(R"({"q": 0})"), InputError);
    EXPECT_THROW(parse_config(R"({"lp_j_min": 4, "lp_j_max": 2})"), InputError);
    EXPECT_THROW(parse_config("[1, 2]"), InputError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), InputError);
}

TEST(Report, ChecksCarryValueAndThreshold) {
    const Check a = check_le("x", 1, 0.5, 1.0), b = check_le("y", 1, std::nan(""), 1.0), c = check_ge("z", 2, 0.5, 1.0);
    EXPECT_EQ(a.status, Status::pass);
    EXPECT_EQ(b.status, Status::fail);
    EXPECT_EQ(c.status, Status::fail);
    const nlohmann::json j = b;
    EXPECT_TRUE(j.at("value").is_string());
    EXPECT_EQ(j.at("threshold"), 1.0);
    Report r;
    r.checks = {a, b, report_value("w", 0, 3.0)};
    EXPECT_FALSE(r.all_passed());
    EXPECT_EQ(r.count(Status::report), 1);
    EXPECT_EQ(nlohmann::json(r).at("counts").at("fail"), 1);
}

TEST(Cli, TransformWritesCsvAndMetadata) {
    const fs::path d = fresh_dir("transform");
    CliOptions o;
    o.command = "transform";
    o.out = d.string();
    o.tier = "fast";
    const CliRun r = run(o);
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(d / "transform.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6 * 4 * 9 + 1);
    const auto meta = nlohmann::json::parse(slurp(d / "transform_meta.json"));
    EXPECT_EQ(meta.at("grid").at("rows"), 216);
    EXPECT_FALSE(meta.contains("roundtrip_relative_l2_error"));

    // identical configuration ⇒ identical bytes
    ASSERT_EQ(run(o).code, 0);
    EXPECT_EQ(slurp(d / "transform.csv"), csv);
}

TEST(Cli, TransformRoundTripAndIsft) {
    const fs::path d = fresh_dir("roundtrip");
    CliOptions o;
    o.command = "transform";
    o.out = d.string();
    o.tier = "fast";
    o.roundtrip = true;
    const CliRun r = run(o);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto meta = nlohmann::json::parse(slurp(d / "transform_meta.json"));
    EXPECT_LE(meta.at("roundtrip_relative_l2_error").get<double>(), 5e-2);
    EXPECT_TRUE(fs::exists(d / "calibration.json"));

    o.command = "isft";
    o.roundtrip = false;
    const CliRun i = run(o);
    ASSERT_EQ(i.code, 0) << i.err;
    EXPECT_NE(i.out.find("reusing calibration"), std::string::npos);
    EXPECT_EQ(slurp(d / "isft.csv").substr(0, 15), "ray,norm,re,im\n");

    // a spectral CSV that does not match the configured grid is bad input
    std::ofstream(d / "bad.csv") << "lambda_x,lambda_y,lambda_z,n,re,im\n9,9,9,0,1,0\n";
    o.input = (d / "bad.csv").string();
    EXPECT_EQ(run(o).code, 2);
}

TEST(Cli, ZeroFunctionAndUnknownFunction) {
    const fs::path d = fresh_dir("zero");
    CliOptions o;
    o.command = "transform";
    o.out = d.string();
    o.function = "zero";
    ASSERT_EQ(run(o).code, 0);
    std::istringstream csv(slurp(d / "transform.csv"));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) EXPECT_EQ(line.substr(line.size() - 4), ",0,0") << line;

    o.function = "nosuch";
    const CliRun r = run(o);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown function"), std::string::npos);
}

TEST(Cli, FunctionParametersFromFlags) {
    CliOptions o;
    o.function = "hermite-modulated";
    o.params = {"a=1.5", "k=3"};
    const RunConfig c = resolve_config(o);
    EXPECT_EQ(c.function.at("a"), 1.5);
    EXPECT_EQ(c.function.at("k"), 3);
    o.params = {"novalue"};
    EXPECT_THROW(resolve_config(o), InputError);
}

TEST(Cli, ConvolveReportsTheoremResidual) {
    const fs::path d = fresh_dir("convolve");
    CliOptions o;
    o.command = "convolve";
    o.out = d.string();
    ASSERT_EQ(run(o).code, 0);
    const auto meta = nlohmann::json::parse(slurp(d / "convolve_meta.json"));
    EXPECT_LE(meta.at("convolution_theorem_residual").get<double>(), 5e-4);
}

TEST(Cli, CalibrateReusesMatchingFile) {
    const fs::path d = fresh_dir("calibrate");
    CliOptions o;
    o.command = "calibrate";
    o.out = d.string();
    o.tier = "fast";
    ASSERT_EQ(run(o).code, 0);
    const auto cal = nlohmann::json::parse(slurp(d / "calibration.json"));
    for (const char* k : {"c", "a", "rep_coefficients", "residuals"}) EXPECT_TRUE(cal.contains(k)) << k;
    EXPECT_FALSE(nlohmann::json::parse(slurp(d / "calibrate_report.json")).at("reused").get<bool>());

    ASSERT_EQ(run(o).code, 0);
    EXPECT_TRUE(nlohmann::json::parse(slurp(d / "calibrate_report.json")).at("reused").get<bool>());

    // a different configuration invalidates the stored calibration
    o.seed = 5;
    ASSERT_EQ(run(o).code, 0);
    EXPECT_FALSE(nlohmann::json::parse(slurp(d / "calibrate_report.json")).at("reused").get<bool>());
}

TEST(Cli, MultiplierRejectsBadSymbol) {
    const fs::path d = fresh_dir("symbol");
    CliOptions o;
    o.command = "multiplier";
    o.out = d.string();
    o.symbol = "nosuch";
    EXPECT_EQ(run(o).code, 2);
    o.symbol = R"({"name": "table", "nu": [1, 2, 3, 4], "re": [1, 1, 1, 1]})";  // does not cover the spectrum
    EXPECT_EQ(run(o).code, 2);
    o.symbol = "{not json";
    EXPECT_EQ(run(o).code, 2);
}

TEST(Cli, CorruptedConfigIsBadInput) {
    const fs::path d = fresh_dir("corrupt");
    fs::create_directories(d);
    std::ofstream(d / "bad.json") << "{\"tier\": ";
    CliOptions o;
    o.command = "invariants";
    o.config_path = (d / "bad.json").string();
    const CliRun r = run(o);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("parse error"), std::string::npos);
}

TEST(Cli, UnknownCommand) {
    CliOptions o;
    o.command = "frobnicate";
    EXPECT_EQ(run(o).code, 2);
}
