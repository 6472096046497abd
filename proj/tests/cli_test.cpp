#include "rankone/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace rankone;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = RANKONE_CONFIG_DIR;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rankone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / ("rankone_cli_test_" + std::string(info->name()) + "_" + name);
  fs::remove_all(dir);
  return dir;
}

fs::path write_config(const std::string& body) {
  const fs::path path = scratch("config.json");
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int config_error_code(const cli::Json& doc) {
  try {
    cli::parse_config(doc);
  } catch (const Error& e) {
    return cli::exit_code_for(e.kind());
  }
  return 0;
}

}  // namespace

TEST(Cli, StagesReportContainsTheStageTwoRow) {
  const fs::path out = scratch("out");
  const auto r = run_cli({"stages", "--config", (kConfigs / "powers_d11.json").string(), "--out", out.string(), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp(out / "stages.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,r_j,h_j,w_j,mu_X_j,w_j_decimal,mu_X_j_decimal,spacers,offsets");
  EXPECT_NE(csv.find("\n2,4,134,1/2,67,"), std::string::npos);
  EXPECT_NE(csv.find("\n3,8,2158472,1/8,269809,"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);

  const auto json = cli::Json::parse(slurp(out / "stages.json"));
  EXPECT_EQ(json["provenance"]["params"]["sidon_powers"]["d"], "11");
  EXPECT_EQ(json["provenance"]["seed"], "42");
  EXPECT_EQ(json["rows"][1]["h_j"], "134");
}

TEST(Cli, DisplayStatsRowsCarryExactRationals) {
  const fs::path out = scratch("out");
  ASSERT_EQ(run_cli({"theorem3", "--config", (kConfigs / "powers_d11.json").string(), "--out", out.string(), "--quiet"}).code, 0);
  const std::string csv = slurp(out / "theorem3.csv");
  EXPECT_NE(csv.find("X2,2,forward,4,67,0,67/2,67/2,"), std::string::npos);
  EXPECT_NE(csv.find("X2,3,forward,8,67,0,201/4,"), std::string::npos);
  EXPECT_NE(csv.find("X2,2,inverse,4,67,67/2,0,"), std::string::npos);
}

TEST(Cli, NegativeDIsAConfigErrorAndWritesNothing) {
  const fs::path out = scratch("out");
  const auto r = run_cli({"stages", "--config", (kConfigs / "invalid_negative_d.json").string(), "--out", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("config error"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, SchemaRejectsUnknownAndMalformedValues) {
  const cli::Json good = cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}}})");
  EXPECT_EQ(config_error_code(good), 0);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}}, "colour": 1})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11", "e": 2}}})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "eleven"}}})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}, "explicit": []}})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"explicit": [{"r": 2, "s": ["1"]}]}})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}}, "precision": 101})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}}, "seed": "-1"})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "11"}, "base_width": "0"}})")), 2);
  EXPECT_EQ(config_error_code(cli::Json::parse(R"({})")), 2);

  // Arbitrary-precision values survive as decimal strings.
  const auto big = cli::parse_config(cli::Json::parse(R"({"params": {"sidon_powers": {"d": "100000000000000000000000"}}})"));
  EXPECT_EQ(std::get<SidonPowerRule>(big.params.rule).d, BigInt("100000000000000000000000"));
}

TEST(Cli, CommandBlocksAreValidatedBeforeAnyOutput) {
  const fs::path out = scratch("out");
  const auto cfg = write_config(R"({"params": {"sidon_powers": {"d": "11"}},
      "theorem3": [{"set": "X2", "j": 2, "directon": ["forward"]}]})");
  EXPECT_EQ(run_cli({"theorem3", "--config", cfg.string(), "--out", out.string()}).code, 2);
  EXPECT_EQ(run_cli({"sidon", "--config", cfg.string(), "--out", out.string()}).code, 2);  // no block
  const auto unknown_set = write_config(R"({"params": {"sidon_powers": {"d": "11"}}, "mixing": [{"a": "Y", "b": "X1", "n": [1]}]})");
  EXPECT_EQ(run_cli({"mixing", "--config", unknown_set.string(), "--out", out.string()}).code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, ResourceLimitsExitWithThree) {
  const fs::path out = scratch("out");
  const auto cfg = write_config(R"({"params": {"sidon_powers": {"d": "11"}}, "stages": {"from": 1, "to": 5}})");
  const auto capped = run_cli({"stages", "--config", cfg.string(), "--stage-cap", "4", "--out", out.string()});
  EXPECT_EQ(capped.code, 3);
  EXPECT_NE(capped.err.find("resource-limit"), std::string::npos);
  EXPECT_EQ(run_cli({"oracle-check", "--config", (kConfigs / "tiny_explicit_a.json").string(), "--budget-floors", "50",
                     "--out", out.string()})
                .code,
            3);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, SidonViolationExitsWithOneAndStillReports) {
  const fs::path out = scratch("out");
  const auto cfg = write_config(R"({"params": {"explicit": [{"r": 3, "s": ["1", "1", "1"]}, {"r": 2, "s": ["5", "50"]}]},
      "sidon": {"stages": [1]}})");
  const auto r = run_cli({"sidon", "--config", cfg.string(), "--out", out.string(), "--quiet"});
  EXPECT_EQ(r.code, 1);
  const std::string csv = slurp(out / "sidon.csv");
  EXPECT_NE(csv.find("1,2,violation,1;2,"), std::string::npos);
  EXPECT_EQ(cli::Json::parse(slurp(out / "sidon.json"))["summary"]["violations"], 1);
}

TEST(Cli, OverridesApply) {
  const fs::path a = scratch("a"), b = scratch("b");
  const std::string cfg = (kConfigs / "powers_d11.json").string();
  ASSERT_EQ(run_cli({"poisson-exact", "--config", cfg, "--precision", "30", "--out", a.string(), "--quiet"}).code, 0);
  EXPECT_NE(slurp(a / "poisson-exact.csv").find("0.367879441171442321595523770161"), std::string::npos);
  EXPECT_EQ(run_cli({"stages", "--config", cfg, "--precision", "0"}).code, 2);
  EXPECT_EQ(run_cli({"stages", "--config", cfg, "--stage-cap", "61"}).code, 2);
  ASSERT_EQ(run_cli({"oracle-check", "--config", cfg, "--seed", "7", "--out", b.string(), "--quiet"}).code, 0);
  EXPECT_EQ(cli::Json::parse(slurp(b / "oracle-check.json"))["summary"]["seed"], "7");
}

TEST(Cli, SmallDWarns) {
  const auto cfg = write_config(R"({"params": {"sidon_powers": {"d": "3"}}})");
  const auto r = run_cli({"stages", "--config", cfg.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.out.find("mu_X_j"), std::string::npos);
}

TEST(Cli, ArgumentErrors) {
  EXPECT_EQ(run_cli({"stages"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate", "--config", "x.json"}).code, 2);
  EXPECT_EQ(run_cli({"stages", "--config", "/nonexistent/config.json"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, CsvQuotesAwkwardFields) {
  cli::Report r;
  r.command = "t";
  r.columns = {"a", "b"};
  r.rows = {{"x,y", "say \"hi\""}};
  EXPECT_EQ(cli::render_csv(r), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::string cfg = (kConfigs / "tiny_explicit_a.json").string();
  for (const std::string cmd : {"stages", "sidon", "theorem3", "asymmetry", "oracle-check"}) {
    const fs::path a = scratch(cmd + "_a"), b = scratch(cmd + "_b");
    // The tiny rule is not Sidon, so sidon reports violations with exit code 1.
    const int first = run_cli({cmd, "--config", cfg, "--out", a.string(), "--quiet"}).code;
    ASSERT_EQ(first, cmd == "sidon" ? 1 : 0) << cmd;
    ASSERT_EQ(run_cli({cmd, "--config", cfg, "--out", b.string(), "--quiet"}).code, first) << cmd;
    EXPECT_EQ(slurp(a / (cmd + ".csv")), slurp(b / (cmd + ".csv")));
    EXPECT_EQ(slurp(a / (cmd + ".json")), slurp(b / (cmd + ".json")));
  }
}
