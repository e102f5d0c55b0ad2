#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "run_config.hpp"
#include "vtorus/io.hpp"

using vtorus::cli::cli_main;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::path(VTORUS_TEST_TMPDIR) / name).string();
}

}  // namespace

TEST(Cli, MissingKernelNamesTheFlag) {
  const auto r = run({"admissibility"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--kernel"), std::string::npos) << r.err;
}

TEST(Cli, RangeErrorNamesTheFlag) {
  const auto r = run({"admissibility", "--kernel", "exp", "--n-max", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--n-max"), std::string::npos) << r.err;
}

TEST(Cli, UnknownFlagIsAUsageError) {
  EXPECT_EQ(run({"admissibility", "--kernel", "exp", "--bogus", "1"}).code, 1);
  EXPECT_EQ(run({"nosuchcommand"}).code, 1);
}

TEST(Cli, NegativeNumbersAreValues) {
  const auto c = vtorus::cli::parse_config({"regularity", "--alpha", "-1", "--d", "1"},
                                           std::cout, std::cerr);
  ASSERT_TRUE(c.run);
  EXPECT_EQ(c.config.alpha, -1.0);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto path = tmp("cfg.json");
  {
    std::ofstream os(path);
    os << R"({"kernel": "texp", "n_max": 32, "tol": 1e-5})";
  }
  std::ostringstream sink;
  const auto a = vtorus::cli::parse_config({"admissibility", "--config", path}, sink, sink);
  ASSERT_TRUE(a.run);
  EXPECT_EQ(a.config.n_max, 32);
  EXPECT_EQ(a.config.kernel, "texp");
  EXPECT_EQ(a.config.tol, 1e-5);
  const auto b =
      vtorus::cli::parse_config({"admissibility", "--config", path, "--n-max", "64"}, sink, sink);
  ASSERT_TRUE(b.run);
  EXPECT_EQ(b.config.n_max, 64);
  EXPECT_EQ(b.config.tol, 1e-5);

  {
    std::ofstream os(tmp("bad.json"));
    os << R"({"kernel": "texp", "seed": 3})";
  }
  const auto c = run({"admissibility", "--config", tmp("bad.json")});
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.err.find("seed"), std::string::npos);
}

TEST(Cli, HelpListsEveryFlagWithDefaults) {
  for (const auto& info : vtorus::cli::commands()) {
    const auto r = run({info.name, "--help"});
    EXPECT_EQ(r.code, 0) << info.name;
    const std::string text = r.out + r.err;
    for (const auto& flag : info.flags) {
      EXPECT_NE(text.find("--" + flag.name), std::string::npos) << info.name << " --" << flag.name;
      if (!flag.is_switch && !flag.default_value.empty()) {
        EXPECT_NE(text.find("[" + flag.default_value + "]"), std::string::npos)
            << info.name << " --" << flag.name;
      }
    }
  }
}

TEST(Cli, TExpSummaryLine) {
  const auto r = run({"admissibility", "--kernel", "texp", "--n-max", "1024", "--output",
                      tmp("texp.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("C_b ≈ 0.2500 (converged)"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(tmp("texp.json")));
}

TEST(Cli, AssumptionViolationExitsThree) {
  const auto r = run({"admissibility", "--kernel", "one", "--output", tmp("one.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, StiffnessGuardExitsTwo) {
  const auto r = run({"resolvent", "--kernel", "exp", "--mu", "-1000", "--dt", "0.01", "--output",
                      tmp("stiff.json")});
  EXPECT_EQ(r.code, 2) << r.out << r.err;
}

TEST(Cli, RegularityBoundaryIsDivergent) {
  const auto r = run({"regularity", "--d", "2", "--beta", "1", "--alpha", "0", "--output",
                      tmp("reg.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("divergent"), std::string::npos) << r.out;
}

TEST(Cli, OutputsAreIdempotent) {
  const std::vector<std::vector<std::string>> cases{
      {"admissibility", "--kernel", "exp", "--n-max", "64", "--format", "json"},
      {"gd", "--points", "4"},
      {"uniqueness", "--kernel", "texp", "--k-max", "8", "--n-max", "4"},
      {"hypothesis-h", "--kernel", "exp", "--n-max", "8", "--lag-min-exp", "-5"},
  };
  int i = 0;
  for (auto args : cases) {
    const auto a = tmp("idem_a_" + std::to_string(i));
    const auto b = tmp("idem_b_" + std::to_string(i));
    ++i;
    auto args_a = args, args_b = args;
    args_a.insert(args_a.end(), {"--output", a});
    args_b.insert(args_b.end(), {"--output", b});
    ASSERT_EQ(run(args_a).code, 0) << args[0];
    ASSERT_EQ(run(args_b).code, 0) << args[0];
    EXPECT_EQ(vtorus::read_text(a), vtorus::read_text(b)) << args[0];
  }
}

TEST(Cli, SimulateIsByteIdenticalForAFixedSeed) {
  const std::vector<std::string> base{"simulate", "--kernel", "exp", "--d", "1", "--spectrum",
                                      "parametric", "--beta", "1", "--n-max", "4", "--n-times", "3",
                                      "--n-paths", "20", "--seed", "7"};
  auto a = base, b = base;
  a.insert(a.end(), {"--output", tmp("s7a.vtens"), "--field", tmp("s7a.field.csv"), "--threads", "1"});
  b.insert(b.end(), {"--output", tmp("s7b.vtens"), "--field", tmp("s7b.field.csv"), "--threads", "3"});
  const auto ra = run(a);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(run(b).code, 0);
  // the header records the output-independent config, so files compare whole
  EXPECT_EQ(vtorus::read_text(tmp("s7a.vtens")), vtorus::read_text(tmp("s7b.vtens")));
  EXPECT_EQ(vtorus::read_text(tmp("s7a.vtens.moments.csv")),
            vtorus::read_text(tmp("s7b.vtens.moments.csv")));
  EXPECT_EQ(vtorus::read_text(tmp("s7a.field.csv")), vtorus::read_text(tmp("s7b.field.csv")));
}

TEST(Cli, SwitchesParseWithoutAValue) {
  const auto c = vtorus::cli::parse_config(
      {"hoelder", "--kernel", "exp", "--no-mc"}, std::cout, std::cerr);
  ASSERT_TRUE(c.run);
  EXPECT_TRUE(c.config.no_mc);
  const auto g = vtorus::cli::parse_config(
      {"admissibility", "--kernel", "exp", "--force-grid"}, std::cout, std::cerr);
  ASSERT_TRUE(g.run);
  EXPECT_TRUE(g.config.force_grid);
  const auto u = vtorus::cli::parse_config({"uniqueness", "--kernel", "exp"}, std::cout, std::cerr);
  ASSERT_TRUE(u.run);
  EXPECT_FALSE(u.config.numeric);
}
