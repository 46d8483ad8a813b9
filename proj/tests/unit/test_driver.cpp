#include <gtest/gtest.h>

#include "hvci/driver.hpp"

using namespace hvci;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Driver, DefaultsMatchDeskConfiguration) {
  const Config c = parse_config("{}");
  EXPECT_EQ(c.theta, 1.0);
  EXPECT_EQ(c.grid_size, 192);
  ASSERT_EQ(c.lambda_list.size(), 1u);
  EXPECT_EQ(c.lambda_list[0], 25);
  ASSERT_TRUE(c.wave.has_value());
  EXPECT_EQ(c.wave->sigma_inv, 5);
  EXPECT_EQ(c.time_samples.size(), 5u);
  EXPECT_EQ(c.time_samples.front().kind, TimeSpec::Kind::RampLeft);
}

TEST(Driver, SchemaErrorsNameThePath) {
  EXPECT_NE(error_of(R"({"theta": "one"})").find("/theta"), std::string::npos);
  EXPECT_NE(error_of(R"({"seed": {"amplitude": []}})").find("/seed/amplitude"), std::string::npos);
  EXPECT_NE(error_of(R"({"lambda_list": [25, 2.5]})").find("/lambda_list/1"), std::string::npos);
  EXPECT_NE(error_of(R"({"time_samples": ["soon"]})").find("/time_samples/0"), std::string::npos);
  EXPECT_NE(error_of(R"({"bogus": 1})").find("/bogus"), std::string::npos);
  EXPECT_NE(error_of(R"({"tolerances": {"nope": 1}})").find("/tolerances/nope"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("malformed"), std::string::npos);
}

TEST(Driver, RoundTripThroughJson) {
  Config c = parse_config(R"({"theta": 1.2, "wave": null, "lambda_list": [25, 50], "time_samples": [0.5, "ramp+"]})");
  const Config back = parse_config(config_to_json(c));
  EXPECT_EQ(back.theta, 1.2);
  EXPECT_FALSE(back.wave.has_value());
  EXPECT_EQ(back.lambda_list, c.lambda_list);
  EXPECT_EQ(back.time_samples[1].kind, TimeSpec::Kind::RampRight);
}

TEST(Driver, ToleranceOverride) {
  Config c;
  apply_tolerance_override(c, "residual=1e-4");
  EXPECT_EQ(c.tolerance("residual"), 1e-4);
  EXPECT_THROW(apply_tolerance_override(c, "unknown=1"), ConfigError);
  EXPECT_THROW(apply_tolerance_override(c, "residual=abc"), ConfigError);
}

TEST(Driver, RampTimesSitInsideTheRamps) {
  const IntervalSet support = IntervalSet::from_doubles(0.25, 0.75);
  const std::vector<TimeSpec> specs{{TimeSpec::Kind::RampLeft, 0}, {TimeSpec::Kind::Value, 0.5},
                                    {TimeSpec::Kind::RampRight, 0}};
  const auto t = resolve_times(specs, support, 1.0);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_LT(t[0], 0.25);
  EXPECT_GT(t[0], 0.25 - 1.0);
  EXPECT_EQ(t[1], 0.5);
  EXPECT_GT(t[2], 0.75);
  const TimeCutoff psi(support, 1.0);
  EXPECT_GT(psi(t[0]), 0.0);
  EXPECT_LT(psi(t[0]), 1.0);
}

TEST(Driver, DeskOverrideKeepsHardFlags) {
  const Config c;
  const Schedule s = schedule_for(c, 1.0, c.theta);
  const WaveChoice w = wave_for_round(c, s, 0);
  EXPECT_EQ(w.params.mu, 4.0);
  EXPECT_TRUE(w.flags.hard());
  EXPECT_FALSE(w.flags.chain);
}

TEST(Driver, UnknownCommandIsAConfigError) {
  Config c;
  c.output_dir = std::filesystem::temp_directory_path() / "hvci_driver_test";
  std::ostringstream log;
  EXPECT_THROW((void)run("frobnicate", c, log), ConfigError);
}
