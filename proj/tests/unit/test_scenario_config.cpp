#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "wva/errors.hpp"
#include "wva/scenario_config.hpp"

namespace {

using namespace wva;
using namespace wva::experiments;

ScenarioSpec parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

TEST(NumberList, CommaSeparated) {
    EXPECT_EQ(parse_number_list("0.1, 0.2,0.3"), (std::vector<double>{0.1, 0.2, 0.3}));
    EXPECT_THROW(parse_number_list(""), DomainError);
    EXPECT_THROW(parse_number_list("0.1, x"), DomainError);
    EXPECT_THROW(parse_number_list("0.1abc"), DomainError);
}

TEST(NumberList, Ranges) {
    const auto lin = parse_number_list("linspace(0, 1, 5)");
    ASSERT_EQ(lin.size(), 5u);
    EXPECT_DOUBLE_EQ(lin[2], 0.5);
    const auto lg = parse_number_list(" logspace(0.1, 100, 4) ");
    ASSERT_EQ(lg.size(), 4u);
    EXPECT_NEAR(lg[1], 1.0, 1e-12);
    EXPECT_NEAR(lg[3], 100.0, 1e-12);
    EXPECT_THROW(parse_number_list("logspace(0, 1, 3)"), DomainError);
    EXPECT_THROW(parse_number_list("linspace(0, 1, 2.5)"), DomainError);
    EXPECT_THROW(parse_number_list("linspace(0, 1)"), DomainError);
}

TEST(ScenarioFile, FullExample) {
    const auto spec = parse(R"(name = delta-scan
delta = 0.05, 0.1, 0.2          # three imbalances
e0 = 10, 30
sigma = 0.5
bs_mode = exact                 ; unitary splitter
methods = quantum, exact, quadrature, mc
mc_trials = 20000
mc_seed = 7
mc_estimator = rejection

[metadata]
note = anything
)");
    EXPECT_EQ(spec.name, "delta-scan");
    ASSERT_EQ(spec.grid.size(), 6u);
    EXPECT_EQ(spec.grid[1].delta, 0.05);
    EXPECT_EQ(spec.grid[1].E0, 30.0);
    EXPECT_EQ(spec.grid[2].delta, 0.1);
    EXPECT_EQ(spec.grid[5].id, 5u);
    EXPECT_EQ(spec.grid[0].bs_mode, BeamSplitterMode::ExactUnitary);
    EXPECT_EQ(spec.methods.size(), 4u);
    EXPECT_EQ(spec.mc.n_trials, 20000u);
    EXPECT_EQ(spec.mc.seed, 7u);
    EXPECT_EQ(spec.mc.estimator, mc::Estimator::Rejection);
    ASSERT_EQ(spec.metadata.size(), 1u);
    EXPECT_EQ(spec.metadata[0].second, "anything");
}

TEST(ScenarioFile, DarkportIntensitySetsAmplitude) {
    const auto spec = parse("delta = 0.2\ndarkport_intensity = 4\n");
    ASSERT_EQ(spec.grid.size(), 1u);
    EXPECT_NEAR(spec.grid[0].E0 * spec.grid[0].delta, 2.0, 1e-12);
}

TEST(ScenarioFile, AmplitudeKeysAreExclusive) {
    EXPECT_THROW(parse("delta = 0.1\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\ne0 = 3\nalpha = 3\n"), DomainError);
}

TEST(ScenarioFile, BadValues) {
    EXPECT_THROW(parse("delta = 0\ne0 = 3\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\ne0 = 3\nmc_seed = -4\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\ne0 = 3\nmc_seed = abc\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\ne0 = 3\nmc_trials = 1.5\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\ne0 = 3\nmethods = exact, nope\n"), DomainError);
    EXPECT_THROW(parse("delta = 0.1\n[broken\n"), DomainError);
    EXPECT_THROW(load_scenario("/nonexistent/scenario.ini"), DomainError);
}

}  // namespace
