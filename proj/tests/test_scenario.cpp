// Copyright 2026 The hamamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hamamp/errors.hpp"
#include "hamamp/scenario.hpp"

namespace hamamp {
namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool mentions(const ParseResult& r, std::size_t line, const std::string& fragment) {
    for (const auto& e : r.errors) {
        if (e.line == line && e.message.find(fragment) != std::string::npos) return true;
    }
    return false;
}

TEST(ParseScenarioTest, MinimalAmplifyMap) {
    const auto r = parse_scenario("kind = amplify_map\nomega = 0.5\nr = 0.6585\n");
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r.errors.empty());
    EXPECT_EQ(r.scenario->kind, ExperimentKind::amplify_map);
    EXPECT_EQ(r.scenario->number("r"), 0.6585);
    EXPECT_EQ(r.scenario->output, "amplify_map");
    EXPECT_EQ(r.scenario->seed, 0u);
    EXPECT_EQ(sweep_grid(*r.scenario).size(), 1u);
}

TEST(ParseScenarioTest, LogSweep) {
    const auto r = parse_scenario(
        "# error against spacing\n"
        "kind = trotter_sweep\n"
        "omega = 0.5   # single oscillator\n"
        "lambda = 2\n"
        "sweep dt = 1e-3:1e-1:log:20\n");
    ASSERT_TRUE(r.ok()) << r.errors.front().message;
    ASSERT_EQ(r.scenario->sweeps.size(), 1u);
    const auto& v = r.scenario->sweeps[0].values;
    ASSERT_EQ(v.size(), 20u);
    EXPECT_EQ(v.front(), 1e-3);
    EXPECT_EQ(v.back(), 1e-1);
    for (std::size_t k = 1; k < v.size(); ++k) EXPECT_NEAR(v[k] / v[k - 1], std::pow(100.0, 1.0 / 19.0), 1e-12);
    EXPECT_EQ(sweep_grid(*r.scenario).size(), 20u);
}

TEST(ParseScenarioTest, LinearSweepHitsRoundValues) {
    const auto r = parse_scenario("kind = bound_check\nomega = 1\ndt = 0.01\nsweep r = 0:1:lin:6\n");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.scenario->sweeps[0].values, (std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0}));
}

TEST(ParseScenarioTest, MissingKindIsSingleError) {
    const auto r = parse_scenario("omega = 0.5\nr = 0.3\n");
    EXPECT_FALSE(r.ok());
    ASSERT_EQ(r.errors.size(), 1u);
    EXPECT_EQ(r.errors[0].line, 0u);
    EXPECT_EQ(r.errors[0].message, "missing key 'kind'");
}

TEST(ParseScenarioTest, ReportsEveryErrorWithLine) {
    const auto r = parse_scenario(
        "kind = trotter_sweep\n"   // 1
        "omega = 0.5\n"            // 2
        "this line is broken\n"    // 3
        "lambda = 2\n"             // 4
        "lambda = 3\n"             // 5
        "sweep dt = 1:2:cubic:4\n" // 6
        "t = 1e\n"                 // 7
        "seed = -4\n");            // 8
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(mentions(r, 3, "expected 'key = value'"));
    EXPECT_TRUE(mentions(r, 5, "duplicate key 'lambda'"));
    EXPECT_TRUE(mentions(r, 6, "lin' or 'log"));
    EXPECT_TRUE(mentions(r, 7, "unparsable number"));
    EXPECT_TRUE(mentions(r, 8, "seed"));
    for (std::size_t k = 1; k < r.errors.size(); ++k) EXPECT_LE(r.errors[k - 1].line, r.errors[k].line);
}

TEST(ParseScenarioTest, KindSpecificProblems) {
    auto r = parse_scenario("kind = teleport\n");
    EXPECT_TRUE(mentions(r, 1, "unknown kind 'teleport'"));
    r = parse_scenario("kind = amplify_map\nomega = 1\nr = 0.3\ncutoff = 10\n");
    EXPECT_TRUE(mentions(r, 4, "unknown key 'cutoff'"));
    r = parse_scenario("kind = amplify_map\nomega = fast\nr = 0.3\n");
    EXPECT_TRUE(mentions(r, 2, "unparsable number 'fast'"));
    r = parse_scenario("kind = trotter_sweep\nomega = 1\nlambda = 2\ndt = 0.01\nsweep pulse = 1, 2\n");
    EXPECT_TRUE(mentions(r, 5, "cannot be swept"));
    r = parse_scenario("kind = amplify_map\nomega = 1\nr =\n");
    EXPECT_TRUE(mentions(r, 3, "missing value"));
    r = parse_scenario("kind = amplify_map\nomega = 1\n");
    EXPECT_TRUE(mentions(r, 0, "exactly one of 'r' and 'lambda'"));
}

TEST(ParseScenarioTest, Units) {
    const auto r = parse_scenario(
        "kind = jc_swap_sweep\n"
        "omega_r = 2.5 GHz\n"
        "omega_q = 15GHz\n"
        "g = 50 MHz\n"
        "r = 0.4\n"
        "dt = 1 ps\n"
        "t_final = 1.5 us\n"
        "sweep samples = 10, 20\n");
    ASSERT_TRUE(r.ok()) << r.errors.front().message;
    const double two_pi = 2.0 * std::numbers::pi;
    EXPECT_DOUBLE_EQ(r.scenario->number("omega_r"), two_pi * 2.5);
    EXPECT_DOUBLE_EQ(r.scenario->number("omega_q"), two_pi * 15.0);
    EXPECT_DOUBLE_EQ(r.scenario->number("g"), two_pi * 0.05);
    EXPECT_DOUBLE_EQ(r.scenario->number("dt"), 1e-3);
    EXPECT_DOUBLE_EQ(r.scenario->number("t_final"), 1500.0);
    const auto ms = parse_scenario("kind = jc_swap_sweep\nomega_r = 1 kHz\nomega_q = 3 Hz\ng = 1\nr = 0\n"
                                   "dt = 2 ns\nt_final = 1 ms\n");
    ASSERT_TRUE(ms.ok());
    EXPECT_DOUBLE_EQ(ms.scenario->number("omega_r"), two_pi * 1e-6);
    EXPECT_DOUBLE_EQ(ms.scenario->number("omega_q"), two_pi * 3e-9);
    EXPECT_DOUBLE_EQ(ms.scenario->number("t_final"), 1e6);
    EXPECT_FALSE(parse_scenario("kind = jc_swap_sweep\nomega_r = 1 THz\nomega_q = 3\ng = 1\nr = 0\n"
                                "dt = 1\nt_final = 10\n")
                     .ok());
}

TEST(ParseScenarioTest, RangeValidation) {
    auto r = parse_scenario("kind = amplify_map\nomega = 1\nlambda = 0.5\n");
    EXPECT_TRUE(mentions(r, 3, "'lambda' must be >= 1"));
    r = parse_scenario("kind = bound_check\nomega = 1\nr = 0.2\nsweep dt = 0.1, 0, 0.2\n");
    EXPECT_TRUE(mentions(r, 4, "'dt' must be > 0"));
    r = parse_scenario("kind = amplify_map\nomega = 1\nr = 0.2\nmodes = 2.5\n");
    EXPECT_TRUE(mentions(r, 4, "'modes'"));
    r = parse_scenario("kind = amplify_map\nomega = 1\nr = 0.2\nset = ha_dd\n");
    EXPECT_TRUE(mentions(r, 0, "ha_dd"));
    r = parse_scenario("kind = noise_ensemble\nnoise = thermal\nsigma = 0.1\nomega = 1\nr = 0.3\ndt = 0.01\n");
    EXPECT_TRUE(mentions(r, 2, "'noise' must be one of"));
    r = parse_scenario("kind = jc_swap_sweep\nomega_r = 1\nomega_q = 3\ng = 0.1\nr = 0\ndt = 1\n"
                       "t_final = 10\ncutoff = 40\nmax_cutoff = 60\n");
    EXPECT_TRUE(mentions(r, 9, "max_cutoff"));
    r = parse_scenario("kind = pulse_design\nfamily = exsol1\nk = 1\nlambda = 2\n");
    EXPECT_FALSE(r.ok());
    r = parse_scenario("kind = pulse_design\nfamily = exsol3\ncoefficients = 0.5, -0.25, 1e-2\n");
    EXPECT_TRUE(r.ok()) << r.errors.front().message;
    r = parse_scenario("kind = pulse_design\nfamily = exsol3\ncoefficients = 0.5, x\n");
    EXPECT_TRUE(mentions(r, 3, "coefficients"));
}

TEST(ScenarioTest, Accessors) {
    const auto r = parse_scenario("kind = trotter_sweep\nomega = 0.5\nlambda = 2\ndt = 0.01\npulse = smooth\n");
    ASSERT_TRUE(r.ok());
    const Scenario& s = *r.scenario;
    EXPECT_TRUE(s.has("omega"));
    EXPECT_EQ(s.number_or("t", 1.0), 1.0);
    EXPECT_EQ(s.word_or("pulse", "both"), "smooth");
    EXPECT_THROW(s.number("t"), InvalidArgument);
    EXPECT_THROW(s.number("pulse"), InvalidArgument);
}

TEST(SweepGridTest, LastAxisFastest) {
    Scenario s;
    s.kind = ExperimentKind::bound_check;
    s.sweeps = {SweepAxis{"r", {0.1, 0.2}}, SweepAxis{"dt", {1.0, 2.0, 3.0}}};
    const auto grid = sweep_grid(s);
    ASSERT_EQ(grid.size(), 6u);
    EXPECT_EQ(grid[0], (std::vector<double>{0.1, 1.0}));
    EXPECT_EQ(grid[1], (std::vector<double>{0.1, 2.0}));
    EXPECT_EQ(grid[3], (std::vector<double>{0.2, 1.0}));
    EXPECT_EQ(grid[5], (std::vector<double>{0.2, 3.0}));
}

TEST(KindsTest, TableIsComplete) {
    ASSERT_EQ(all_experiment_kinds().size(), 7u);
    for (const ExperimentKind k : all_experiment_kinds()) {
        EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
        EXPECT_FALSE(keys_for(k).empty());
    }
    EXPECT_FALSE(parse_experiment_kind("nope").has_value());
}

TEST(RoundTripTest, ShippedScenarios) {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(HAMAMP_SCENARIO_DIR)) {
        if (entry.path().extension() != ".scn") continue;
        ++seen;
        const auto first = parse_scenario(read_file(entry.path()));
        ASSERT_TRUE(first.ok()) << entry.path() << ": " << first.errors.front().message;
        const auto second = parse_scenario(render_scenario(*first.scenario));
        ASSERT_TRUE(second.ok()) << entry.path();
        EXPECT_EQ(*second.scenario, *first.scenario) << entry.path();
    }
    EXPECT_GE(seen, 5u);
}

TEST(RoundTripTest, RandomScenarios) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const char* pulses[] = {"bangbang", "smooth", "both"};
    for (int trial = 0; trial < 200; ++trial) {
        Scenario s;
        s.seed = rng();
        s.output = "run_" + std::to_string(trial);
        switch (trial % 3) {
            case 0:
                s.kind = ExperimentKind::trotter_sweep;
                s.params["omega"] = unit(rng) * 3.0;
                s.params["lambda"] = 1.0 + unit(rng) * 4.0;
                s.params["pulse"] = std::string(pulses[rng() % 3]);
                s.sweeps.push_back(SweepAxis{"dt", {unit(rng) * 1e-2 + 1e-300, unit(rng) + 1e-9}});
                break;
            case 1:
                s.kind = ExperimentKind::amplify_map;
                s.params["omega"] = -unit(rng);
                s.params["r"] = unit(rng) * 1e-7;
                s.params["modes"] = static_cast<double>(1 + rng() % 8);
                s.params["coupling"] = unit(rng) * 1e5;
                break;
            default:
                s.kind = ExperimentKind::noise_ensemble;
                s.params["noise"] = std::string(trial % 2 ? "angle" : "amplitude");
                s.params["sigma"] = unit(rng) / 3.0;
                s.params["omega"] = unit(rng);
                s.params["r"] = unit(rng);
                s.params["trajectories"] = static_cast<double>(1 + rng() % 50);
                s.sweeps.push_back(SweepAxis{"dt", {unit(rng) + 0.1}});
                s.sweeps.push_back(SweepAxis{"alpha", {unit(rng), -unit(rng), 0.0}});
                break;
        }
        const std::string text = render_scenario(s);
        const auto r = parse_scenario(text);
        ASSERT_TRUE(r.ok()) << text << r.errors.front().message;
        EXPECT_EQ(*r.scenario, s) << text;
    }
}

}  // namespace
}  // namespace hamamp
