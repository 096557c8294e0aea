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

// hamamp: scenario-driven runner for the amplification experiments.
//
//   hamamp run <scenario-file> [--out DIR] [--seed N] [--workers K] [--validate-only]
//   hamamp kinds
//
// Exit codes: 0 success, 1 scenario error, 2 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hamamp/errors.hpp"
#include "hamamp/runner.hpp"
#include "hamamp/scenario.hpp"

namespace {

constexpr int kExitScenario = 1;
constexpr int kExitNumerical = 2;

std::string quoted(std::string s) {
    for (char& c : s) {
        if (c == '"' || c == '\n') c = '\'';
    }
    return '"' + s + '"';
}

void error_line(const std::string& type, std::size_t line, const std::string& message) {
    std::cerr << "error: type=" << type;
    if (line > 0) std::cerr << " line=" << line;
    std::cerr << " message=" << quoted(message) << '\n';
}

int list_kinds() {
    for (const auto kind : hamamp::all_experiment_kinds()) {
        std::cout << hamamp::to_string(kind) << '\n';
        for (const auto& key : hamamp::keys_for(kind)) {
            std::cout << "  " << key.name << (key.required ? " (required)" : "") << (key.numeric ? "" : " [word]")
                      << ": " << key.help << '\n';
        }
    }
    return 0;
}

int run(const std::string& file, const std::string& out_dir, const std::optional<std::uint64_t>& seed,
        std::size_t workers, bool validate_only) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        error_line("scenario", 0, "cannot read " + file);
        return kExitScenario;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const hamamp::ParseResult parsed = hamamp::parse_scenario(buffer.str());
    if (!parsed.ok()) {
        for (const auto& issue : parsed.errors) error_line("scenario", issue.line, issue.message);
        return kExitScenario;
    }
    const hamamp::Scenario& s = *parsed.scenario;
    if (validate_only) {
        std::cout << "ok: kind=" << hamamp::to_string(s.kind) << " points=" << hamamp::sweep_grid(s).size() << '\n';
        return 0;
    }
    try {
        hamamp::RunOptions options;
        options.out_dir = out_dir;
        options.seed = seed;
        options.workers = workers;
        const auto artifacts = hamamp::run_scenario(s, options);
        for (const auto& path : artifacts.csv_files) std::cout << "wrote " << path.string() << '\n';
        std::cout << "wrote " << artifacts.plot_script.string() << '\n';
    } catch (const hamamp::ResonanceError& e) {
        error_line("resonance", 0, e.what());
        return kExitNumerical;
    } catch (const hamamp::TruncationError& e) {
        error_line("truncation", 0, e.what());
        return kExitNumerical;
    } catch (const hamamp::NumericalError& e) {
        error_line("numerical", 0, e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        error_line("scenario", 0, e.what());
        return kExitScenario;
    } catch (const std::exception& e) {
        error_line("numerical", 0, e.what());
        return kExitNumerical;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian amplification experiments for quadratic bosonic systems"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
    std::string file;
    std::string out_dir = ".";
    std::uint64_t seed_value = 0;
    std::size_t workers = 1;
    bool validate_only = false;
    run_cmd->add_option("scenario", file, "Scenario file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory");
    auto* seed_opt = run_cmd->add_option("--seed", seed_value, "Override the scenario seed");
    run_cmd->add_option("--workers", workers, "Worker threads for sweep points")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--validate-only", validate_only, "Parse and validate without running");

    app.add_subcommand("kinds", "List experiment kinds and their keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitScenario;
    }

    if (app.got_subcommand("kinds")) return list_kinds();
    std::optional<std::uint64_t> seed;
    if (seed_opt->count() > 0) seed = seed_value;
    return run(file, out_dir, seed, workers, validate_only);
}
