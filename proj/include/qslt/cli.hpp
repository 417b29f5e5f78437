// Copyright 2026 qslt contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cli.hpp — command-line front end: figure presets, custom sweeps, oracle
// validation. Exit codes: 0 success, 1 validation failure, 2 bad input.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qslt/oracles.hpp"
#include "qslt/output.hpp"

namespace qslt {

// Configuration error carrying the offending key and constraint.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model = "phase-damping"; // phase-damping | rtn
    double s = 1.0;
    double omega_c = 1.0;
    double alpha = 1.0;
    double delta = 1.0;
    std::vector<double> ks{0.1, 0.3, 0.5, 0.7, 0.9};
    TauGrid grid{0.0, 10.0, 400};
    double tau_d = 1.0;
    QslVariant variant = QslVariant::paper;
    int resolution = 512;
    std::string out = "sweep.csv";
    std::string format = "csv"; // csv | json | svg
    std::uint64_t seed = 20260810;
};

inline std::vector<double> parse_k_list(const std::string& text) {
    std::vector<double> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument("trailing characters");
            ks.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("k: cannot parse '" + item + "' as a number");
        }
    }
    if (ks.empty()) throw ConfigError("k: list must be nonempty");
    return ks;
}

inline void validate(const RunConfig& cfg) {
    if (cfg.model != "phase-damping" && cfg.model != "rtn")
        throw ConfigError("model: must be 'phase-damping' or 'rtn', got '" + cfg.model + "'");
    if (cfg.model == "phase-damping") {
        if (!(cfg.s > 0.0)) throw ConfigError("s: must be > 0");
        if (!(cfg.omega_c > 0.0)) throw ConfigError("omega_c: must be > 0");
    } else {
        if (!(cfg.alpha > 0.0)) throw ConfigError("alpha: must be > 0");
        if (!(cfg.delta > 0.0)) throw ConfigError("delta: must be > 0");
    }
    for (double k : cfg.ks)
        if (!(k > 0.0 && k < 1.0))
            throw ConfigError("k: every value must lie strictly in (0, 1), got " +
                              format_g12(k));
    if (cfg.grid.start < 0.0) throw ConfigError("tau_start: must be >= 0");
    if (!(cfg.grid.end >= cfg.grid.start)) throw ConfigError("tau_end: must be >= tau_start");
    if (cfg.grid.steps < 1) throw ConfigError("steps: must be >= 1");
    if (!(cfg.tau_d > 0.0)) throw ConfigError("tau_d: must be > 0");
    if (cfg.resolution < 64) throw ConfigError("resolution: must be >= 64");
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg")
        throw ConfigError("format: must be csv, json or svg, got '" + cfg.format + "'");
    if (cfg.out.empty()) throw ConfigError("out: must be a nonempty path");
}

// Flat key=value config document; '#' starts a comment; unknown keys are
// hard errors (a silent typo in a physics parameter is the costliest
// failure mode).
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int line_no = 0;
    auto trim = [](std::string t) {
        const auto a = t.find_first_not_of(" \t\r");
        const auto b = t.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    auto to_double = [&](const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            throw ConfigError(key + ": cannot parse '" + v + "' as a number");
        }
    };
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "model") cfg.model = value;
        else if (key == "s") cfg.s = to_double(key, value);
        else if (key == "omega_c") cfg.omega_c = to_double(key, value);
        else if (key == "alpha") cfg.alpha = to_double(key, value);
        else if (key == "delta") cfg.delta = to_double(key, value);
        else if (key == "k") cfg.ks = parse_k_list(value);
        else if (key == "tau_start") cfg.grid.start = to_double(key, value);
        else if (key == "tau_end") cfg.grid.end = to_double(key, value);
        else if (key == "steps") cfg.grid.steps = static_cast<int>(to_double(key, value));
        else if (key == "tau_d") cfg.tau_d = to_double(key, value);
        else if (key == "variant") {
            if (value == "paper") cfg.variant = QslVariant::paper;
            else if (value == "ml") cfg.variant = QslVariant::ml;
            else throw ConfigError("variant: must be 'paper' or 'ml', got '" + value + "'");
        }
        else if (key == "resolution") cfg.resolution = static_cast<int>(to_double(key, value));
        else if (key == "out") cfg.out = value;
        else if (key == "format") cfg.format = value;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_double(key, value));
        else throw ConfigError("config: unknown key '" + key + "' (line " +
                               std::to_string(line_no) + ")");
    }
}

inline DephasingChannel build_channel(const RunConfig& cfg) {
    if (cfg.model == "phase-damping")
        return make_pd_channel_tabulated(make_ohmic_spec(cfg.s, cfg.omega_c),
                                         cfg.grid.end + cfg.tau_d);
    return make_rtn_channel(make_rtn_spec(cfg.alpha, cfg.delta));
}

inline std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> p;
    p.emplace_back("model", cfg.model);
    if (cfg.model == "phase-damping") {
        p.emplace_back("s", format_g12(cfg.s));
        p.emplace_back("omega_c", format_g12(cfg.omega_c));
    } else {
        p.emplace_back("alpha", format_g12(cfg.alpha));
        p.emplace_back("delta", format_g12(cfg.delta));
    }
    std::string klist;
    for (std::size_t i = 0; i < cfg.ks.size(); ++i)
        klist += (i ? "," : "") + format_g12(cfg.ks[i]);
    p.emplace_back("k", klist);
    p.emplace_back("tau_start", format_g12(cfg.grid.start));
    p.emplace_back("tau_end", format_g12(cfg.grid.end));
    p.emplace_back("steps", std::to_string(cfg.grid.steps));
    p.emplace_back("tau_d", format_g12(cfg.tau_d));
    p.emplace_back("variant", to_string(cfg.variant));
    p.emplace_back("resolution", std::to_string(cfg.resolution));
    p.emplace_back("seed", std::to_string(cfg.seed));
    return p;
}

inline SweepOutput run_sweep(const RunConfig& cfg) {
    validate(cfg);
    const DephasingChannel channel = build_channel(cfg);
    const QuadConfig quad{cfg.resolution, 1e-10};
    SweepOutput out;
    out.params = describe(cfg);
    out.rows = sweep(channel, cfg.ks, cfg.grid, cfg.tau_d, quad, cfg.variant);
    return out;
}

// Figure presets. Only the channel parameter named in the corresponding
// figure caption is pinned; everything else uses the documented defaults.
inline RunConfig figure_preset(const std::string& name) {
    RunConfig cfg;
    if (name == "fig1") { cfg.model = "phase-damping"; cfg.s = 0.5; }
    else if (name == "fig2") { cfg.model = "phase-damping"; cfg.s = 1.0; }
    else if (name == "fig3") { cfg.model = "phase-damping"; cfg.s = 3.5; }
    else if (name == "fig4") { cfg.model = "rtn"; cfg.alpha = 0.2; cfg.delta = 1.0; }
    else if (name == "fig5") { cfg.model = "rtn"; cfg.alpha = 2.0; cfg.delta = 1.0; }
    else throw ConfigError("figure: unknown preset '" + name + "' (expected fig1..fig5)");
    return cfg;
}

// Writes <name>.csv (and <name>.svg when requested) into out_dir.
// Returns the paths written.
inline std::vector<std::string> cmd_figure(const std::string& name, const std::string& out_dir,
                                           bool svg) {
    RunConfig cfg = figure_preset(name);
    const SweepOutput out = run_sweep(cfg);
    std::vector<std::string> written;
    const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
    std::filesystem::create_directories(dir);
    const std::string csv_path = (dir / (name + ".csv")).string();
    write_file(csv_path, to_csv(out));
    written.push_back(csv_path);
    if (svg) {
        const std::string svg_path = (dir / (name + ".svg")).string();
        write_file(svg_path, to_svg(out, name + " (" + cfg.model + ")"));
        written.push_back(svg_path);
    }
    return written;
}

inline std::string cmd_sweep(const RunConfig& cfg) {
    const SweepOutput out = run_sweep(cfg);
    if (cfg.format == "csv") write_file(cfg.out, to_csv(out));
    else if (cfg.format == "json") write_file(cfg.out, to_json(out));
    else write_file(cfg.out, to_svg(out, "sweep (" + cfg.model + ")"));
    return cfg.out;
}

// Runs the oracle suite, printing one line per check. Returns true when
// every check passed.
inline bool cmd_validate(ValidationLevel level, std::uint64_t seed, std::ostream& os) {
    const auto results = run_validation(level, seed);
    bool all = true;
    for (const CheckResult& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name << ": measured=" << format_g12(r.measured)
           << " tolerance=" << format_g12(r.tolerance);
        if (!r.detail.empty()) os << " (" << r.detail << ")";
        os << "\n";
        all = all && r.pass;
    }
    os << (all ? "validation passed" : "validation FAILED") << "\n";
    return all;
}

// Full argument-vector entry point (what main delegates to).
inline int run_cli(const std::vector<std::string>& args, std::ostream& os = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"quantum speed limit times for filtered qubit dephasing channels"};
    app.require_subcommand(1);

    // figure
    auto* fig = app.add_subcommand("figure", "write a preset sweep (fig1..fig5) as CSV");
    std::string fig_name;
    std::string fig_out = ".";
    bool fig_svg = false;
    fig->add_option("name", fig_name, "preset name: fig1..fig5")->required();
    fig->add_option("--out", fig_out, "output directory");
    fig->add_flag("--svg", fig_svg, "also write an SVG line plot");

    // sweep
    auto* sw = app.add_subcommand("sweep", "run a custom (k, tau) sweep");
    std::string sw_config;
    std::optional<std::string> sw_model, sw_out, sw_format, sw_variant, sw_k;
    std::optional<double> sw_s, sw_wc, sw_alpha, sw_delta, sw_tau_start, sw_tau_end, sw_tau_d;
    std::optional<int> sw_steps, sw_resolution;
    sw->add_option("--config", sw_config, "flat key=value config file");
    sw->add_option("--model", sw_model, "phase-damping | rtn");
    sw->add_option("--s", sw_s, "Ohmicity parameter");
    sw->add_option("--omega-c", sw_wc, "bath cutoff frequency");
    sw->add_option("--alpha", sw_alpha, "RTN coupling amplitude");
    sw->add_option("--delta", sw_delta, "RTN correlation time");
    sw->add_option("--k", sw_k, "comma-separated filtering parameters in (0,1)");
    sw->add_option("--tau-start", sw_tau_start, "first initial time");
    sw->add_option("--tau-end", sw_tau_end, "last initial time");
    sw->add_option("--steps", sw_steps, "tau grid steps");
    sw->add_option("--tau-d", sw_tau_d, "driving time");
    sw->add_option("--variant", sw_variant, "paper | ml");
    sw->add_option("--resolution", sw_resolution, "time-average grid points per window");
    sw->add_option("--out", sw_out, "output file");
    sw->add_option("--format", sw_format, "csv | json | svg");

    // validate
    auto* val = app.add_subcommand("validate", "run the brute-force oracle suite");
    std::string val_level = "quick";
    std::uint64_t val_seed = 20260810;
    val->add_option("--level", val_level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    val->add_option("--seed", val_seed, "Monte-Carlo seed");

    std::vector<const char*> argv;
    argv.push_back("qslt");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        os << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (fig->parsed()) {
            for (const std::string& path : cmd_figure(fig_name, fig_out, fig_svg))
                os << "wrote " << path << "\n";
            return 0;
        }
        if (sw->parsed()) {
            RunConfig cfg;
            if (!sw_config.empty()) apply_config_file(cfg, sw_config);
            if (sw_model) cfg.model = *sw_model;
            if (sw_s) cfg.s = *sw_s;
            if (sw_wc) cfg.omega_c = *sw_wc;
            if (sw_alpha) cfg.alpha = *sw_alpha;
            if (sw_delta) cfg.delta = *sw_delta;
            if (sw_k) cfg.ks = parse_k_list(*sw_k);
            if (sw_tau_start) cfg.grid.start = *sw_tau_start;
            if (sw_tau_end) cfg.grid.end = *sw_tau_end;
            if (sw_steps) cfg.grid.steps = *sw_steps;
            if (sw_tau_d) cfg.tau_d = *sw_tau_d;
            if (sw_variant) {
                if (*sw_variant == "paper") cfg.variant = QslVariant::paper;
                else if (*sw_variant == "ml") cfg.variant = QslVariant::ml;
                else throw ConfigError("variant: must be 'paper' or 'ml', got '" + *sw_variant + "'");
            }
            if (sw_resolution) cfg.resolution = *sw_resolution;
            if (sw_out) cfg.out = *sw_out;
            if (sw_format) cfg.format = *sw_format;
            os << "wrote " << cmd_sweep(cfg) << "\n";
            return 0;
        }
        if (val->parsed()) {
            const ValidationLevel level =
                val_level == "full" ? ValidationLevel::full : ValidationLevel::quick;
            return cmd_validate(level, val_seed, os) ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qslt
