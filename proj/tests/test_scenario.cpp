#include <algorithm>
#include <string>

#include <gtest/gtest.h>

#include "ghzpur/scenario.hpp"

using namespace ghzpur;
using nlohmann::json;

namespace {

std::string config_error(const std::string& text) {
  try {
    scenario_from_json(parse_json_text(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Scenario, DefaultsAndWerner) {
  const Scenario s = scenario_from_json(json::parse(R"({"initial": {"type": "werner", "x": 0.8}})"));
  EXPECT_EQ(s.n_qubits, 3);
  EXPECT_EQ(s.schedule.label(), "P1,P2");
  EXPECT_EQ(s.engine, Engine::Fast);
  EXPECT_NEAR(ensemble_fidelity(build_initial(s).ensemble), 0.825, 1e-15);
}

TEST(Scenario, FullConfig) {
  const Scenario s = scenario_from_json(json::parse(R"({
    "n_qubits": 4, "initial": {"type": "binary", "F": 0.9, "error": "0010", "error_sign": "-"},
    "schedule": ["P2"], "mode": "six-mode-pbs", "engine": "exact", "seed": 7,
    "stop": {"rounds": 3}, "grid": {"param": "F", "range": "0.6:0.9:0.1"}})"));
  EXPECT_EQ(s.schedule.mode.kind, ModeKind::SixModePBS);
  EXPECT_EQ(std::get<FixedRounds>(s.schedule.stop).rounds, 3);
  ASSERT_TRUE(s.grid.has_value());
  EXPECT_EQ(s.grid->values.size(), 4u);
  EXPECT_EQ(s.grid->parameter, SweepParameter::Fidelity);
  EXPECT_NEAR(build_initial(s).ensemble.weight(GhzLabel::from_string("0010", Sign::Minus)), 0.1, 1e-15);
}

TEST(Scenario, DiagnosticsNameTheField) {
  EXPECT_NE(config_error(R"({"initial": {"type": "werner", "x": 1.5}})").find("initial.x"), std::string::npos);
  EXPECT_NE(config_error(R"({"initial": {"type": "werner", "x": 0.5}, "colour": 1})").find("colour"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"initial": {"type": "binary", "F": 0.8, "error": "01"}})").find("initial.error"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"initial": {"type": "werner", "x": 0.5}, "mode": "fast"})").find("mode"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"n_qubits": 7, "engine": "exact", "initial": {"type": "werner", "x": 0.5}})")
                .find("n_qubits"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"initial": {"type": "werner", "x": 0.5}, "epsilon": 0.01})").find("epsilon"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"initial": {"type": "werner", "x": 0.5}, "stop": {"threshold": 0.3}})").find("stop"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"schedule": ["P1"]})").find("initial"), std::string::npos);
}

TEST(Scenario, SyntaxErrorsReportLineAndColumn) {
  const std::string msg = config_error("{\n  \"n_qubits\": 3,\n  oops\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Scenario, GridRange) {
  const auto v = parse_grid_range("0.6:0.9:0.1");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_NEAR(v.back(), 0.9, 1e-12);
  EXPECT_THROW(parse_grid_range("0.6:0.9"), ConfigError);
  EXPECT_THROW(parse_grid_range("0.6:0.9:0"), ConfigError);
}

TEST(Scenario, DegenerateBinaryInputWarns) {
  const Scenario s = scenario_from_json(json::parse(R"({"initial": {"type": "binary", "F": 0.7, "error": "000"}})"));
  const auto built = build_initial(s);
  EXPECT_EQ(built.warnings.size(), 1u);
  EXPECT_DOUBLE_EQ(ensemble_fidelity(built.ensemble), 1.0);
}

TEST(Output, TraceCsvHasOneRowPerRound) {
  const Scenario s = scenario_from_json(json::parse(R"({"initial": {"type": "werner", "x": 0.8}})"));
  const auto trace = run_schedule(build_initial(s).ensemble, s.schedule, s.engine);
  const std::string csv = trace_csv(trace);
  EXPECT_EQ(csv.rfind("round,step,fidelity,keep_probability,cumulative_yield\n0,init,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(trace.rows.size()) + 1);
  EXPECT_NE(csv.find("0.82500000000000007"), std::string::npos);
  const json summary = run_summary(s, trace, {});
  EXPECT_EQ(summary["rounds"], trace.rounds_applied());
  EXPECT_TRUE(summary["converged"].get<bool>());
}

TEST(Output, FormatDoubleUses17Digits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
}
