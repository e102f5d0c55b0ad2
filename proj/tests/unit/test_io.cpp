#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "vtorus/ensemble_io.hpp"
#include "vtorus/error.hpp"
#include "vtorus/io.hpp"
#include "vtorus/serialize.hpp"

using namespace vtorus;

namespace {

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::path(VTORUS_TEST_TMPDIR) / name;
}

}  // namespace

TEST(Io, DoublesRoundTripAt17Digits) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Io, CsvWriteAndParse) {
  std::ostringstream os;
  write_csv(os, {"a", "b"}, {{1.0, 0.1}, {-2.0, 1e-20}});
  const auto t = parse_csv(os.str());
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], 0.1);
  EXPECT_EQ(t.rows[1][1], 1e-20);
  EXPECT_THROW(parse_csv("a,b\n1\n"), InvalidArgument);
  EXPECT_THROW(parse_csv(""), InvalidArgument);
}

TEST(Io, JsonPrecisionAndNonFinite) {
  nlohmann::json j;
  j["x"] = 0.1;
  j["y"] = std::numeric_limits<double>::infinity();
  const auto text = dump_json(j);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_TRUE(nlohmann::json::parse(text)["y"].is_null());
}

TEST(Io, EnsembleRoundTripIsByteIdentical) {
  SimulationConfig c;
  c.d = 2;
  c.n_max = 2;
  c.time_grid = {1.0, 0.01, 3};
  c.n_paths = 5;
  c.seed = 9;
  const auto e = simulate_convolution(Kernel::exp(), CovarianceSpectrum::white(2, 1.0), c);
  write_ensemble(tmp("a.vtens"), e);
  const auto back = read_ensemble(tmp("a.vtens"));
  EXPECT_EQ(back.data, e.data);
  EXPECT_EQ(back.n_paths, e.n_paths);
  EXPECT_EQ(back.n_times, e.n_times);
  EXPECT_EQ(back.n_slots, e.n_slots);
  EXPECT_EQ(back.index_set.coords, e.index_set.coords);
  EXPECT_EQ(back.kernel_id, "exp");
  EXPECT_EQ(back.config.seed, 9u);
  write_ensemble(tmp("b.vtens"), back);
  EXPECT_EQ(read_text(tmp("a.vtens")), read_text(tmp("b.vtens")));
}

TEST(Io, RejectsForeignFiles) {
  write_text(tmp("junk.vtens"), "not an ensemble at all");
  EXPECT_THROW(read_ensemble(tmp("junk.vtens")), InvalidArgument);
  EXPECT_THROW(read_ensemble(tmp("missing.vtens")), InvalidArgument);
}

TEST(Io, SimulationConfigJsonRoundTrip) {
  SimulationConfig c;
  c.d = 3;
  c.alpha = 0.25;
  c.time_grid = {0.5, 0.125, 7};
  c.zero_mode = ZeroModePolicy::Brownian;
  c.seed = 123456789012345ull;
  const auto back = simulation_config_from_json(to_json(c));
  EXPECT_EQ(back.d, 3);
  EXPECT_EQ(back.alpha, 0.25);
  EXPECT_EQ(back.time_grid.count, 7u);
  EXPECT_EQ(back.zero_mode, ZeroModePolicy::Brownian);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(to_json(back), to_json(c));
}
