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

#include "hamamp/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kKindNames{{
    {ExperimentKind::amplify_map, "amplify_map"},
    {ExperimentKind::trotter_sweep, "trotter_sweep"},
    {ExperimentKind::bound_check, "bound_check"},
    {ExperimentKind::pulse_design, "pulse_design"},
    {ExperimentKind::noise_ensemble, "noise_ensemble"},
    {ExperimentKind::gaussian_fidelity_sweep, "gaussian_fidelity_sweep"},
    {ExperimentKind::jc_swap_sweep, "jc_swap_sweep"},
}};

KeySpec num(std::string name, bool required, std::string help) {
    return KeySpec{std::move(name), required, true, std::move(help)};
}

KeySpec word(std::string name, bool required, std::string help) {
    return KeySpec{std::move(name), required, false, std::move(help)};
}

// r and lambda = cosh(2r) are alternatives; validate_scenario demands one.
const KeySpec kR = num("r", false, "squeezing parameter (or give lambda)");
const KeySpec kLambda = num("lambda", false, "amplification factor cosh(2r) (or give r)");

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_plain_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

// Scale from a unit suffix to rad/ns (frequencies) or ns (times).
std::optional<double> unit_scale(std::string_view unit) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (unit.empty()) return 1.0;
    if (unit == "GHz") return two_pi;
    if (unit == "MHz") return two_pi * 1e-3;
    if (unit == "kHz") return two_pi * 1e-6;
    if (unit == "Hz") return two_pi * 1e-9;
    if (unit == "ps") return 1e-3;
    if (unit == "ns") return 1.0;
    if (unit == "us") return 1e3;
    if (unit == "ms") return 1e6;
    return std::nullopt;
}

// Number with an optional unit suffix, e.g. "2.5 GHz", "1ps", "-0.3".
std::optional<double> parse_quantity(std::string_view s) {
    s = trim(s);
    std::size_t split = s.size();
    while (split > 0 && std::isalpha(static_cast<unsigned char>(s[split - 1]))) --split;
    std::string_view number = trim(s.substr(0, split));
    std::string_view unit = s.substr(split);
    auto scale = unit_scale(unit);
    if (!scale) {
        number = s;
        scale = 1.0;
    }
    const auto v = parse_plain_double(number);
    if (!v) return std::nullopt;
    return *v * *scale;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw NumericalError("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// `a:b:lin|log:count` or a comma list.
std::optional<std::vector<double>> parse_sweep_values(std::string_view spec, std::string& why) {
    const auto colon = split(spec, ':');
    if (colon.size() == 4) {
        const auto a = parse_quantity(colon[0]);
        const auto b = parse_quantity(colon[1]);
        const auto count = parse_plain_double(colon[3]);
        if (!a || !b) {
            why = "unparsable number in range '" + std::string(spec) + "'";
            return std::nullopt;
        }
        if (!count || *count < 1 || std::floor(*count) != *count) {
            why = "sweep count must be a positive integer in '" + std::string(spec) + "'";
            return std::nullopt;
        }
        const auto n = static_cast<std::size_t>(*count);
        std::vector<double> values(n);
        if (colon[2] == "lin") {
            for (std::size_t k = 0; k < n; ++k) {
                values[k] = n == 1 ? *a
                                   : (*a * static_cast<double>(n - 1 - k) + *b * static_cast<double>(k)) /
                                         static_cast<double>(n - 1);
            }
        } else if (colon[2] == "log") {
            if (!(*a > 0.0) || !(*b > 0.0)) {
                why = "log sweep needs positive endpoints in '" + std::string(spec) + "'";
                return std::nullopt;
            }
            const double la = std::log10(*a);
            const double lb = std::log10(*b);
            for (std::size_t k = 0; k < n; ++k) {
                values[k] = n == 1 ? *a
                                   : std::pow(10.0, la + (lb - la) * static_cast<double>(k) / static_cast<double>(n - 1));
            }
            values.front() = *a;
            values.back() = *b;
        } else {
            why = "sweep spacing must be 'lin' or 'log', got '" + std::string(colon[2]) + "'";
            return std::nullopt;
        }
        return values;
    }
    if (colon.size() != 1) {
        why = "sweep must be start:stop:lin|log:count or a comma list";
        return std::nullopt;
    }
    std::vector<double> values;
    for (const auto item : split(spec, ',')) {
        const auto v = parse_quantity(item);
        if (!v) {
            why = "unparsable number '" + std::string(item) + "'";
            return std::nullopt;
        }
        values.push_back(*v);
    }
    return values;
}

bool is_identifier(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

const KeySpec* find_key(ExperimentKind kind, std::string_view name) {
    for (const KeySpec& k : keys_for(kind)) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> v;
        for (const auto& [k, name] : kKindNames) v.push_back(k);
        return v;
    }();
    return kinds;
}

const std::vector<KeySpec>& keys_for(ExperimentKind kind) {
    static const std::map<ExperimentKind, std::vector<KeySpec>> table = {
        {ExperimentKind::amplify_map,
         {num("omega", true, "oscillator frequency"), kR, kLambda, num("modes", false, "number of modes (default 1)"),
          num("coupling", false, "x-x coupling between neighbouring modes (default 0)"),
          num("t", false, "evolution time (default 1)"), num("n", false, "Trotter cycles (default 1000)"),
          word("set", false, "ha or ha_dd (default ha); ha_dd amplifies mode 0 and decouples the rest")}},
        {ExperimentKind::trotter_sweep,
         {num("omega", true, "oscillator frequency"), kR, kLambda, num("dt", true, "control spacing t/(2n)"),
          num("t", false, "evolution time (default 1)"), num("modes", false, "number of modes (default 1)"),
          word("pulse", false, "bangbang, smooth or both (default both)"),
          num("substeps", false, "midpoint substeps per smooth period (default 256)")}},
        {ExperimentKind::bound_check,
         {num("omega", true, "oscillator frequency"), kR, kLambda, num("dt", true, "control spacing t/(2n)"),
          num("t", false, "evolution time (default 1)"), num("modes", false, "number of modes (default 1)")}},
        {ExperimentKind::pulse_design,
         {word("family", true, "cosine_first_order, exsol1, exsol3, exsol4 or exsol2_n"),
          num("k", false, "amplitude for single-coefficient families"),
          num("lambda", false, "target gain I0(K); exsol2_n only"),
          word("coefficients", false, "comma list of series coefficients"),
          num("period", false, "pulse period (default 1)"), num("harmonic", false, "n of exsol2_n (default 1)"),
          num("samples", false, "waveform samples per period (default 101)")}},
        {ExperimentKind::noise_ensemble,
         {word("noise", true, "angle or amplitude"), num("sigma", true, "noise standard deviation"),
          num("omega", true, "oscillator frequency"), kR, kLambda, num("dt", true, "control spacing t/(2n)"),
          num("t", false, "evolution time (default 1)"), num("trajectories", false, "ensemble size (default 100)"),
          num("alpha", false, "initial coherent amplitude (default 1)"),
          num("substeps", false, "substeps per smooth period for amplitude noise (default 64)")}},
        {ExperimentKind::gaussian_fidelity_sweep,
         {num("omega", true, "oscillator frequency"), kR, kLambda, num("dt", true, "control spacing t/(2n)"),
          num("alpha", true, "initial coherent amplitude (real)"), num("t", false, "evolution time (default 1)")}},
        {ExperimentKind::jc_swap_sweep,
         {num("omega_r", true, "resonator frequency"), num("omega_q", true, "qubit frequency"),
          num("g", true, "qubit-resonator coupling"), num("r", true, "squeezing parameter"),
          num("dt", true, "free-evolution slice between squeezes"), num("t_final", true, "evolution window"),
          num("samples", false, "time samples per trace (default 200)"),
          num("cutoff", false, "initial Fock cutoff d (default 40)"),
          num("max_cutoff", false, "largest cutoff tried (default 160)")}},
    };
    return table.at(kind);
}

bool Scenario::has(const std::string& key) const { return params.contains(key); }

double Scenario::number(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw InvalidArgument("scenario: missing key '" + key + "'");
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    throw InvalidArgument("scenario: key '" + key + "' is not numeric");
}

double Scenario::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::string Scenario::word_or(const std::string& key, const std::string& fallback) const {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (const std::string* w = std::get_if<std::string>(&it->second)) return *w;
    return format_double(std::get<double>(it->second));
}

ParseResult parse_scenario(std::string_view text) {
    ParseResult result;
    std::vector<ScenarioIssue>& errors = result.errors;
    Scenario s;
    std::optional<ExperimentKind> kind;
    bool kind_seen = false;
    std::map<std::string, std::size_t> key_line;
    std::set<std::string> sweep_keys;
    bool has_output = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back({line_no, "expected 'key = value'"});
            continue;
        }
        std::string_view lhs = trim(line.substr(0, eq));
        const std::string_view rhs = trim(line.substr(eq + 1));
        bool is_sweep = false;
        if (lhs.starts_with("sweep") && lhs.size() > 5 && (lhs[5] == ' ' || lhs[5] == '\t')) {
            is_sweep = true;
            lhs = trim(lhs.substr(5));
        }
        if (!is_identifier(lhs)) {
            errors.push_back({line_no, "invalid key '" + std::string(lhs) + "'"});
            continue;
        }
        const std::string key(lhs);
        if (rhs.empty()) {
            errors.push_back({line_no, "missing value for '" + key + "'"});
            continue;
        }
        if (key_line.contains(key)) {
            errors.push_back({line_no, "duplicate key '" + key + "' (first on line " +
                                           std::to_string(key_line[key]) + ")"});
            continue;
        }
        key_line[key] = line_no;

        if (is_sweep) {
            std::string why;
            if (auto values = parse_sweep_values(rhs, why)) {
                s.sweeps.push_back(SweepAxis{key, std::move(*values)});
                sweep_keys.insert(key);
            } else {
                errors.push_back({line_no, "sweep '" + key + "': " + why});
            }
            continue;
        }
        if (key == "kind") {
            kind_seen = true;
            kind = parse_experiment_kind(rhs);
            if (kind) {
                s.kind = *kind;
            } else {
                errors.push_back({line_no, "unknown kind '" + std::string(rhs) + "'"});
            }
        } else if (key == "output") {
            s.output = std::string(rhs);
            has_output = true;
        } else if (key == "seed") {
            std::uint64_t seed = 0;
            const auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), seed);
            if (ec != std::errc() || ptr != rhs.data() + rhs.size()) {
                errors.push_back({line_no, "seed must be a non-negative integer, got '" + std::string(rhs) + "'"});
            } else {
                s.seed = seed;
            }
        } else if (const auto v = parse_quantity(rhs)) {
            s.params[key] = *v;
        } else {
            s.params[key] = std::string(rhs);
        }
    }

    if (!kind_seen) {
        errors.push_back({0, "missing key 'kind'"});
    } else if (kind) {
        for (const auto& [key, line] : key_line) {
            if (key == "kind" || key == "output" || key == "seed") continue;
            const KeySpec* spec = find_key(*kind, key);
            if (!spec) {
                errors.push_back({line, "unknown key '" + key + "' for kind " + std::string(to_string(*kind))});
                continue;
            }
            const auto it = s.params.find(key);
            if (spec->numeric && it != s.params.end() && !std::holds_alternative<double>(it->second)) {
                errors.push_back({line, "unparsable number '" + std::get<std::string>(it->second) + "' for '" + key + "'"});
            }
            if (!spec->numeric && sweep_keys.contains(key)) {
                errors.push_back({line, "key '" + key + "' cannot be swept"});
            }
        }
        if (errors.empty()) {
            if (!has_output) s.output = std::string(to_string(*kind));
            for (ScenarioIssue& issue : validate_scenario(s)) {
                if (issue.line == 0) {
                    // Attach range errors to the line of the first key the message names.
                    std::size_t first = std::string::npos;
                    for (const auto& [key, line] : key_line) {
                        const auto at = issue.message.find("'" + key + "'");
                        if (at < first) {
                            first = at;
                            issue.line = line;
                        }
                    }
                }
                errors.push_back(std::move(issue));
            }
        }
    }

    std::stable_sort(errors.begin(), errors.end(),
                     [](const ScenarioIssue& a, const ScenarioIssue& b) { return a.line < b.line; });
    if (errors.empty()) result.scenario = std::move(s);
    return result;
}

std::string render_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "kind = " << to_string(s.kind) << '\n';
    out << "output = " << s.output << '\n';
    out << "seed = " << s.seed << '\n';
    for (const auto& [key, value] : s.params) {
        out << key << " = ";
        if (const double* v = std::get_if<double>(&value)) {
            out << format_double(*v);
        } else {
            out << std::get<std::string>(value);
        }
        out << '\n';
    }
    for (const SweepAxis& axis : s.sweeps) {
        out << "sweep " << axis.key << " = ";
        for (std::size_t k = 0; k < axis.values.size(); ++k) {
            if (k > 0) out << ", ";
            out << format_double(axis.values[k]);
        }
        out << '\n';
    }
    return out.str();
}

std::vector<ScenarioIssue> validate_scenario(const Scenario& s) {
    std::vector<ScenarioIssue> issues;
    auto present = [&](const std::string& key) {
        if (s.params.contains(key)) return true;
        return std::any_of(s.sweeps.begin(), s.sweeps.end(), [&](const SweepAxis& a) { return a.key == key; });
    };
    // All values a numeric key takes across params and sweeps.
    auto values_of = [&](const std::string& key) {
        std::vector<double> v;
        if (const auto it = s.params.find(key); it != s.params.end()) {
            if (const double* d = std::get_if<double>(&it->second)) v.push_back(*d);
        }
        for (const SweepAxis& a : s.sweeps) {
            if (a.key == key) v.insert(v.end(), a.values.begin(), a.values.end());
        }
        return v;
    };
    auto check = [&](const std::string& key, auto pred, const std::string& requirement) {
        for (const double v : values_of(key)) {
            if (!pred(v)) {
                issues.push_back({0, "'" + key + "' must be " + requirement + ", got " + format_double(v)});
                return;
            }
        }
    };

    for (const KeySpec& k : keys_for(s.kind)) {
        if (k.required && !present(k.name)) issues.push_back({0, "missing key '" + k.name + "'"});
    }
    for (const auto& [key, value] : s.params) {
        if (!find_key(s.kind, key)) issues.push_back({0, "unknown key '" + key + "'"});
    }
    for (const SweepAxis& a : s.sweeps) {
        const KeySpec* k = find_key(s.kind, a.key);
        if (!k) {
            issues.push_back({0, "unknown key '" + a.key + "'"});
        } else if (!k->numeric) {
            issues.push_back({0, "key '" + a.key + "' cannot be swept"});
        } else if (s.params.contains(a.key)) {
            issues.push_back({0, "key '" + a.key + "' is both set and swept"});
        }
        if (a.values.empty()) issues.push_back({0, "sweep '" + a.key + "' has no values"});
    }
    if (s.output.empty() || s.output.find('/') != std::string::npos) {
        issues.push_back({0, "'output' must be a plain file stem"});
    }

    const bool uses_gain = find_key(s.kind, "lambda") != nullptr && s.kind != ExperimentKind::pulse_design;
    if (uses_gain && s.kind != ExperimentKind::jc_swap_sweep) {
        const bool has_r = present("r");
        const bool has_lambda = present("lambda");
        if (has_r == has_lambda) issues.push_back({0, "give exactly one of 'r' and 'lambda'"});
    }

    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    auto count_at_least = [](double lo) { return [lo](double v) { return is_integer(v) && v >= lo; }; };

    check("r", non_negative, "finite and >= 0");
    check("lambda", [](double v) { return std::isfinite(v) && v >= 1.0; }, ">= 1");
    check("dt", positive, "> 0");
    check("t", positive, "> 0");
    check("t_final", positive, "> 0");
    check("period", positive, "> 0");
    check("n", count_at_least(1), "an integer >= 1");
    check("modes", [](double v) { return is_integer(v) && v >= 1 && v <= 64; }, "an integer in [1, 64]");
    check("cutoff", count_at_least(4), "an integer >= 4");
    check("max_cutoff", count_at_least(4), "an integer >= 4");
    check("samples", count_at_least(2), "an integer >= 2");
    check("substeps", count_at_least(16), "an integer >= 16");
    check("trajectories", count_at_least(1), "an integer >= 1");
    check("harmonic", count_at_least(1), "an integer >= 1");
    check("sigma", non_negative, ">= 0");
    check("omega", [](double v) { return std::isfinite(v); }, "finite");

    auto word_in = [&](const std::string& key, std::initializer_list<std::string_view> allowed) {
        const auto it = s.params.find(key);
        if (it == s.params.end()) return;
        const auto* w = std::get_if<std::string>(&it->second);
        if (!w || std::find(allowed.begin(), allowed.end(), *w) == allowed.end()) {
            std::string list;
            for (const auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
            issues.push_back({0, "'" + key + "' must be one of " + list});
        }
    };
    word_in("set", {"ha", "ha_dd"});
    word_in("pulse", {"bangbang", "smooth", "both"});
    word_in("noise", {"angle", "amplitude"});
    word_in("family", {"cosine_first_order", "exsol1", "exsol3", "exsol4", "exsol2_n"});

    if (const auto it = s.params.find("coefficients"); it != s.params.end()) {
        const std::string text = std::holds_alternative<double>(it->second)
                                     ? format_double(std::get<double>(it->second))
                                     : std::get<std::string>(it->second);
        for (const auto item : split(text, ',')) {
            if (!parse_plain_double(item)) {
                issues.push_back({0, "unparsable number '" + std::string(item) + "' in 'coefficients'"});
                break;
            }
        }
    }
    if (s.kind == ExperimentKind::pulse_design) {
        const int given = static_cast<int>(present("k")) + static_cast<int>(present("lambda")) +
                          static_cast<int>(present("coefficients"));
        if (given != 1) issues.push_back({0, "give exactly one of 'k', 'lambda' and 'coefficients'"});
        if (present("lambda") && s.word_or("family", "") != "exsol2_n") {
            issues.push_back({0, "'lambda' is only defined for family exsol2_n"});
        }
    }
    if (s.kind == ExperimentKind::amplify_map && s.word_or("set", "ha") == "ha_dd") {
        for (const double m : values_of("modes")) {
            if (m < 2) {
                issues.push_back({0, "'modes' must be >= 2 for set ha_dd"});
                break;
            }
        }
        if (!present("modes")) issues.push_back({0, "'modes' must be >= 2 for set ha_dd"});
    }
    if (s.kind == ExperimentKind::jc_swap_sweep && present("cutoff") && present("max_cutoff")) {
        if (s.number_or("max_cutoff", 160) < 2 * s.number_or("cutoff", 40)) {
            issues.push_back({0, "'max_cutoff' must be at least twice 'cutoff'"});
        }
    }
    return issues;
}

std::vector<std::vector<double>> sweep_grid(const Scenario& s) {
    std::vector<std::vector<double>> grid{{}};
    for (const SweepAxis& axis : s.sweeps) {
        std::vector<std::vector<double>> next;
        next.reserve(grid.size() * axis.values.size());
        for (const auto& point : grid) {
            for (const double v : axis.values) {
                auto p = point;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        grid = std::move(next);
    }
    return grid;
}

}  // namespace hamamp
