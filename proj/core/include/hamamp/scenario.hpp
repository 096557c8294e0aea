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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hamamp {

enum class ExperimentKind {
    amplify_map,
    trotter_sweep,
    bound_check,
    pulse_design,
    noise_ensemble,
    gaussian_fidelity_sweep,
    jc_swap_sweep,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);
const std::vector<ExperimentKind>& all_experiment_kinds();

/// Scenario values are numbers (unit suffixes already converted) or words.
using ParamValue = std::variant<double, std::string>;

struct SweepAxis {
    std::string key;
    std::vector<double> values;

    bool operator==(const SweepAxis&) const = default;
};

struct Scenario {
    ExperimentKind kind = ExperimentKind::amplify_map;
    std::map<std::string, ParamValue> params;
    std::vector<SweepAxis> sweeps;  ///< outer axis first
    std::string output;             ///< file stem of the CSV outputs
    std::uint64_t seed = 0;

    bool operator==(const Scenario&) const = default;

    bool has(const std::string& key) const;
    /// Throws InvalidArgument when absent or not numeric.
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string word_or(const std::string& key, const std::string& fallback) const;
};

/// Key reference for one experiment kind.
struct KeySpec {
    std::string name;
    bool required = false;
    bool numeric = true;
    std::string help;
};

const std::vector<KeySpec>& keys_for(ExperimentKind kind);

struct ScenarioIssue {
    std::size_t line = 0;  ///< 1-based; 0 when not tied to a line
    std::string message;
};

struct ParseResult {
    std::optional<Scenario> scenario;
    std::vector<ScenarioIssue> errors;

    bool ok() const { return scenario.has_value(); }
};

/// Line-oriented `key = value` text with `#` comments. `sweep key = a:b:lin:n`,
/// `sweep key = a:b:log:n` or `sweep key = v1, v2, ...` define grid axes.
/// Frequencies accept Hz/kHz/MHz/GHz (read as omega/2pi, stored as angular
/// frequency in rad/ns) and times accept ps/ns/us/ms (stored in ns). Every
/// problem found is reported, not only the first.
ParseResult parse_scenario(std::string_view text);

/// Canonical text form; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

/// Range and presence checks for an already parsed scenario.
std::vector<ScenarioIssue> validate_scenario(const Scenario& s);

/// Cartesian product of the sweep axes in row-major order (last axis
/// fastest). A scenario without sweeps yields one empty point.
std::vector<std::vector<double>> sweep_grid(const Scenario& s);

}  // namespace hamamp
