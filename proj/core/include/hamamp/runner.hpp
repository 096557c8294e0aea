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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamamp/scenario.hpp"

namespace hamamp {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Tables produced by one grid point, keyed by file suffix ("" is the main
/// table).
using PointTables = std::map<std::string, Table>;

/// Evaluates a scenario without sweeps (sweep values already substituted
/// into params). `seed` feeds the noise ensembles.
PointTables run_point(const Scenario& point, std::uint64_t seed);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
    std::size_t workers = 1;
};

struct RunArtifacts {
    std::vector<std::filesystem::path> csv_files;
    std::filesystem::path plot_script;
    std::size_t points = 0;
};

/// Runs every grid point on a pool of `workers` threads, then writes
/// `<output>.csv` (plus `<output>_<suffix>.csv` for secondary tables) with
/// sweep columns first, rows in grid order, and `<output>_plot.py`.
/// Throws InvalidArgument for scenarios that fail validation and
/// NumericalError (or a subclass) when a module fails.
RunArtifacts run_scenario(const Scenario& s, const RunOptions& options = {});

/// Shortest round-trip decimal form, no locale.
std::string format_csv_number(double v);

std::string render_csv(const Table& table);

/// Matplotlib script reading the CSV files written for `s`.
std::string plot_script(const Scenario& s, const std::map<std::string, Table>& tables);

}  // namespace hamamp
