#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ctcx/cli.hpp"

using namespace ctcx;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ctcx");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "ctcx_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, CheckKoebePasses) {
    const auto r = run_cli({"check", "--f", "koebe", "--g", "koebe", "--k", "1", "--lambda", "0", "--mu", "0", "--A",
                            "1", "--B", "-1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["semantics"], "sampled sub-disk certificate");
    EXPECT_GT(j["margin"].get<double>(), 1e-9);
}

TEST(Cli, CatalogPrefixIsAccepted) {
    const auto r = run_cli({"check", "--f", "catalog:koebe", "--g", "catalog:koebe"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, CheckFailureExitsOne) {
    const auto f = scratch("z_plus_2z2.json");
    write_text_file(f.string(), series_to_json(Series(std::vector<Complex>{0, 1, 2}).truncated(64)).dump());
    const auto r = run_cli({"check", "--f", f.string(), "--g", "catalog:identity"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "fail");
}

TEST(Cli, MuAboveLambdaIsUsageError) {
    const auto r = run_cli({"check", "--f", "koebe", "--g", "koebe", "--k", "1", "--lambda", "0.5", "--mu", "0.7"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("InvariantViolation"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--k", "abc"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--f", "koebe", "--g", "koebe", "--A", "0", "--B", "0.5"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--f", "koebe", "--g", "koebe", "--order", "4"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--f", "/nonexistent/f.json", "--g", "koebe"}).code, 2);
    EXPECT_EQ(run_cli({"catalog", "--name", "not_a_function"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--g", "koebe"}).code, 2);
    EXPECT_EQ(run_cli({"check", "--f", "koebe", "--g", "koebe", "--grid-radii", "0.5,1.2"}).code, 2);
}

TEST(Cli, ParseErrorInSeriesFile) {
    const auto bad = scratch("bad.json");
    write_text_file(bad.string(), "{\"order\": 2, \"coeffs\": [[0,0]]}");
    const auto r = run_cli({"bounds", "--f", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST(Cli, SynthThenBounds) {
    const auto member = scratch("member.json");
    const auto s = run_cli({"synth", "--k", "2", "--lambda", "0.5", "--mu", "0.25", "--A", "0.8", "--B", "-0.6",
                            "--g", "gen_koebe(0.5)", "--seed", "7", "--out", member.string()});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto b = run_cli({"bounds", "--member", member.string(), "--nmax", "16", "--k", "2", "--lambda", "0.5",
                            "--mu", "0.25", "--A", "0.8", "--B", "-0.6"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto rows = nlohmann::json::parse(b.out);
    ASSERT_EQ(rows.size(), 15u);
    for (const auto& row : rows) {
        EXPECT_GE(row["slack"].get<double>(), -1e-9);
    }
}

TEST(Cli, SynthDefaultsThenBounds) {
    const auto member = scratch("member_default.json");
    ASSERT_EQ(run_cli({"synth", "--out", member.string()}).code, 0);
    EXPECT_EQ(run_cli({"bounds", "--member", member.string(), "--nmax", "16"}).code, 0);
}

TEST(Cli, SynthWithBernardi) {
    const auto plain = run_cli({"synth", "--seed", "3"});
    const auto transformed = run_cli({"synth", "--seed", "3", "--gamma", "1"});
    ASSERT_EQ(transformed.code, 0);
    const Series f = series_from_json(nlohmann::json::parse(plain.out));
    const Series t = series_from_json(nlohmann::json::parse(transformed.out));
    EXPECT_NEAR(std::abs(t[2] - f[2] * (2.0 / 3.0)), 0.0, 1e-15);
    EXPECT_EQ(run_cli({"synth", "--gamma", "-1"}).code, 2);
}

TEST(Cli, FsCommand) {
    const auto r = run_cli({"fs", "--f", "koebe", "--delta", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["functional"].get<double>(), 3.0, 1e-12);
    EXPECT_NEAR(j["bound"].get<double>(), 3.0, 1e-12);
    EXPECT_EQ(j["within_bound"], true);
    EXPECT_EQ(j["caveats"][0], "printed-formula");
}

TEST(Cli, SufficientCommand) {
    const auto f = scratch("half.json");
    write_text_file(f.string(), series_to_json(Series(std::vector<Complex>{0, 1, 0.5})).dump());
    EXPECT_EQ(run_cli({"sufficient", "--f", f.string(), "--g", "identity"}).code, 0);
    write_text_file(f.string(), series_to_json(Series(std::vector<Complex>{0, 1, 0.8})).dump());
    const auto r = run_cli({"sufficient", "--f", f.string(), "--g", "identity"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["lhs"].get<double>(), 3.2, 1e-15);
}

TEST(Cli, CatalogCommand) {
    const auto r = run_cli({"catalog", "--name", "gen_koebe", "--alpha", "0.5", "--order", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Series s = series_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(s.order(), 8u);
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_NEAR(std::abs(s[n] - 1.0), 0.0, 1e-15);
    }
    EXPECT_EQ(run_cli({"catalog", "--name", "moebius(0.5,-0.5)", "--order", "8"}).code, 0);
}

TEST(Cli, CustomGrid) {
    const auto grid = scratch("grid.json");
    write_text_file(grid.string(), R"({"radii": [0.2, 0.6], "angles": 64})");
    const auto r = run_cli({"check", "--f", "koebe", "--g", "koebe", "--grid", grid.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["grid"], "r<=0.6 circles=2 angles=64");
    const auto radii = run_cli({"check", "--f", "koebe", "--g", "koebe", "--grid-radii", "0.4,0.8", "--grid-angles", "90"});
    EXPECT_EQ(radii.code, 0) << radii.err;
}

TEST(Cli, SuiteWithZeroTrialsIsEmpty) {
    const auto r = run_cli({"suite", "--trials", "0"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["properties"].empty());
    EXPECT_EQ(j["all_passed"], true);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const std::vector<std::string> synth{"synth", "--seed", "99", "--k", "3", "--lambda", "1", "--mu", "1"};
    EXPECT_EQ(run_cli(synth).out, run_cli(synth).out);
    const std::vector<std::string> suite{"suite", "--trials", "2", "--seed", "5"};
    EXPECT_EQ(run_cli(suite).out, run_cli(suite).out);
    const std::vector<std::string> check{"check", "--f", "koebe", "--g", "koebe"};
    EXPECT_EQ(run_cli(check).out, run_cli(check).out);
}

TEST(Cli, OutWritesFile) {
    const auto path = scratch("out.json");
    std::filesystem::remove(path);
    const auto r = run_cli({"catalog", "--name", "identity", "--order", "8", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(series_from_json(read_json_file(path.string())).order(), 8u);
    EXPECT_EQ(run_cli({"catalog", "--name", "identity", "--out", "/nonexistent/dir/x.json"}).code, 2);
}
