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

// acceptance.cpp — end-to-end acceptance suite. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qslt/cli.hpp"

using namespace qslt;
namespace fs = std::filesystem;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion-%d %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ------------------------- parsed figure CSV tables --------------------------

struct CsvTable {
    // column name -> values, plus the raw bytes for determinism checks
    std::map<std::string, std::vector<double>> cols;
    std::string bytes;
};

CsvTable parse_csv(const fs::path& path) {
    CsvTable table;
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("acceptance: cannot read " + path.string());
    std::ostringstream raw;
    raw << file.rdbuf();
    table.bytes = raw.str();

    std::istringstream lines(table.bytes);
    std::string line;
    std::vector<std::string> names;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (names.empty()) {
            names = cells;
            continue;
        }
        for (std::size_t i = 0; i < cells.size(); ++i)
            table.cols[names[i]].push_back(std::stod(cells[i]));
    }
    return table;
}

// Column of y-values for one k, ordered by tau (rows are already (k, tau)
// sorted).
std::vector<double> column_for_k(const CsvTable& t, double k, const std::string& col) {
    std::vector<double> out;
    const auto& ks = t.cols.at("k");
    const auto& vals = t.cols.at(col);
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (std::abs(ks[i] - k) < 1e-12) out.push_back(vals[i]);
    return out;
}

// Local extrema on the closed domain: boundary points are compared one-sided.
bool is_local_min(const std::vector<double>& v, std::size_t i) {
    const bool left = (i == 0) || v[i] < v[i - 1];
    const bool right = (i + 1 == v.size()) || v[i] < v[i + 1];
    return left && right;
}
bool is_local_max(const std::vector<double>& v, std::size_t i) {
    const bool left = (i == 0) || v[i] > v[i - 1];
    const bool right = (i + 1 == v.size()) || v[i] > v[i + 1];
    return left && right;
}

// At least one local minimum followed by a local maximum, with the minimum
// strictly interior (a monotone column fails).
bool min_then_max(const std::vector<double>& v) {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!is_local_min(v, i)) continue;
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (is_local_max(v, j)) return true;
    }
    return false;
}

int sign_changes(const std::vector<double>& v) {
    int changes = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] * v[i + 1] < 0.0) ++changes;
    return changes;
}

// ------------------------------- criteria ------------------------------------

void criterion_1() {
    Timer timer;
    double worst = 0.0;
    for (double wc : {0.5, 1.0, 2.0}) {
        const OhmicSpec spec{1.0, wc};
        for (int i = 1; i <= 200; ++i) {
            const double t = 20.0 * i / 200.0;
            const double got = gamma_ohmic(spec, t);
            const double want = gamma_analytic_s1(wc, t);
            worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    const double secs = timer.seconds();
    report(1, "gamma quadrature vs analytic s=1",
           worst <= 1e-8 && secs < 5.0,
           "max rel dev " + fmt(worst) + " <= 1e-8 on 200 pts x 3 cutoffs, " + fmt(secs) +
               " s < 5 s");
}

void criterion_2() {
    SplitMix64 rng(20260810, 2);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        DephasingChannel ch;
        if (i % 2 == 0)
            ch = make_pd_channel(make_ohmic_spec(rng.uniform(0.3, 5.5), rng.uniform(0.5, 2.0)));
        else
            ch = make_rtn_channel(make_rtn_spec(rng.uniform(0.05, 3.0), rng.uniform(0.5, 2.0)));
        const double t = rng.uniform(0.0, 10.0);
        const auto [e1, e2] = kraus_pair(ch, t);
        const Matrix2 comp = e1.adjoint() * e1 + e2.adjoint() * e2 - Matrix2::identity();
        const Matrix2 unital = e1 * e1.adjoint() + e2 * e2.adjoint() - Matrix2::identity();
        const QubitDensity mixed = evolve(ch, maximally_mixed(), t);
        worst = std::max({worst, std::sqrt(comp.frobenius_sq()), std::sqrt(unital.frobenius_sq()),
                          std::abs(mixed.d0 - 0.5), std::abs(mixed.c)});
    }
    report(2, "Kraus completeness and unitality on 500 random samples", worst <= 1e-12,
           "max dev " + fmt(worst) + " <= 1e-12");
}

void criterion_3(const std::vector<DephasingChannel>& regimes) {
    Timer timer;
    const double tau_d = 1.0;
    const std::vector<double> ks{0.1, 0.3, 0.5, 0.7, 0.9};
    double worst = 0.0;
    for (const auto& channel : regimes) {
        for (int i = 0; i < 10; ++i) {
            const double tau = 0.5 + i;
            const double k = ks[static_cast<std::size_t>(i) % ks.size()];
            const FilteredTrajectory traj(channel, make_filter(k));
            const QslResult eng = qsl_filtered(traj, tau, tau_d);
            const QslResult ora =
                riemann_qsl(sample_trajectory(traj, tau, tau_d, 100000), tau, tau_d);
            worst = std::max({worst, relative_deviation(eng.tau_qsl, ora.tau_qsl),
                              relative_deviation(eng.tau_mt, ora.tau_mt)});
        }
    }
    const double secs = timer.seconds();
    report(3, "engine vs Riemann oracle at N=1e5",
           worst <= 1e-4 && secs < 60.0,
           "max rel dev " + fmt(worst) + " <= 1e-4 on 50 pts over 5 regimes, " + fmt(secs) +
               " s < 60 s");
}

void criterion_4() {
    const OhmicSpec spec{1.0, 1.0};
    const FilteredTrajectory traj(make_pd_channel(spec), make_filter(0.5));
    const QslResult r = qsl_filtered(traj, 1.0, 1.0);
    const double paper = qsl_closed_form_pd(spec, 0.5, 1.0, 1.0, QslVariant::paper);
    const double want_ml = 0.125;
    const double want_paper = 0.125 / std::sqrt(2.0);
    const double dev_ml = std::abs(r.tau_ml - want_ml) / want_ml;
    const double dev_paper = std::abs(paper - want_paper) / want_paper;
    report(4, "Markovian closed form at s=1, k=1/2, tau=tau_d=1",
           dev_ml <= 1e-6 && dev_paper <= 1e-6,
           "tau_ml=" + format_g12(r.tau_ml) + " vs 0.125 (dev " + fmt(dev_ml) +
               "), paper=" + format_g12(paper) + " vs 0.0883883 (dev " + fmt(dev_paper) +
               "), each <= 1e-6");
}

void criterion_5(const DephasingChannel& pd, const DephasingChannel& rtn) {
    const std::vector<double> ks{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double worst_sym = 0.0;
    bool monotone = true;
    for (const DephasingChannel* ch : {&pd, &rtn}) {
        for (int it = 0; it < 50; ++it) {
            const double tau = 0.2 * it;
            std::vector<double> vals;
            for (double k : ks)
                vals.push_back(
                    qsl_filtered(FilteredTrajectory(*ch, make_filter(k)), tau, 1.0).tau_qsl);
            for (std::size_t i = 0; i < 4; ++i)
                worst_sym = std::max(worst_sym, relative_deviation(vals[i], vals[8 - i]));
            for (std::size_t i = 0; i < 4; ++i)
                if (vals[i + 1] < vals[i] * (1.0 - 1e-12) - 1e-300) monotone = false;
            for (std::size_t i = 4; i + 1 < vals.size(); ++i)
                if (vals[i + 1] > vals[i] * (1.0 + 1e-12) + 1e-300) monotone = false;
        }
    }
    report(5, "filter symmetry and region monotonicity in k",
           worst_sym <= 1e-10 && monotone,
           "sym dev " + fmt(worst_sym) + " <= 1e-10, monotone on (0,0.5] and [0.5,1): " +
               (monotone ? "yes" : "no") + ", 9 k x 50 tau x 2 models");
}

void criterion_6(const std::map<std::string, CsvTable>& figures) {
    const double tau_d = 1.0;
    bool bounds_ok = true, dominance_ok = true;
    double worst_ratio = 0.0;
    long rows = 0;
    for (const auto& [name, table] : figures) {
        const auto& ml = table.cols.at("tau_ml");
        const auto& mt = table.cols.at("tau_mt");
        const auto& headline = table.cols.at("tau_qsl");
        for (std::size_t i = 0; i < ml.size(); ++i, ++rows) {
            if (!(headline[i] >= 0.0 && headline[i] <= tau_d + 1e-9)) bounds_ok = false;
            if (!(ml[i] >= 0.0 && ml[i] <= tau_d + 1e-9)) bounds_ok = false;
            if (ml[i] < mt[i]) dominance_ok = false;
            if (mt[i] > 0.0)
                worst_ratio = std::max(worst_ratio,
                                       std::abs(ml[i] / mt[i] - std::numbers::sqrt2));
        }
    }
    report(6, "bound sanity and ML dominance on all preset rows",
           bounds_ok && dominance_ok && worst_ratio <= 1e-9,
           "0<=tau_qsl<=tau_d: " + std::string(bounds_ok ? "yes" : "no") +
               ", tau_ml>=tau_mt: " + std::string(dominance_ok ? "yes" : "no") +
               ", |ratio-sqrt2| " + fmt(worst_ratio) + " <= 1e-9 on " + std::to_string(rows) +
               " rows");
}

void criterion_7(const std::map<std::string, CsvTable>& figures,
                 const std::map<std::string, DephasingChannel>& channels) {
    const std::vector<double> ks{0.1, 0.3, 0.5, 0.7, 0.9};
    bool fluctuating_ok = true;
    for (const char* name : {"fig3", "fig5"}) {
        for (double k : ks) {
            const auto col = column_for_k(figures.at(name), k, "tau_qsl");
            if (!min_then_max(col)) fluctuating_ok = false;
        }
    }
    bool smooth_ok = true;
    for (const char* name : {"fig1", "fig2", "fig4"}) {
        const DephasingChannel& ch = channels.at(name);
        std::vector<double> qdots;
        for (int i = 0; i <= 2000; ++i) qdots.push_back(ch.q_dot(11.0 * i / 2000.0));
        if (sign_changes(qdots) != 0) smooth_ok = false;
        for (double k : ks) {
            const auto col = column_for_k(figures.at(name), k, "tau_qsl");
            if (min_then_max(col)) smooth_ok = false;
        }
    }
    report(7, "non-Markovian signatures in fig3/fig5, none in fig1/fig2/fig4",
           fluctuating_ok && smooth_ok,
           std::string("fig3+fig5 min-then-max per k: ") + (fluctuating_ok ? "yes" : "no") +
               ", fig1/fig2/fig4 derivative sign changes: " + (smooth_ok ? "none" : "found"));
}

void criterion_8() {
    Timer timer;
    const CheckResult r = checks::rtn_monte_carlo_check(100000, 20260810);
    const double secs = timer.seconds();
    report(8, "RTN Monte Carlo vs Lambda_t at n=1e5",
           r.pass && secs < 120.0,
           "worst |mean-Lambda|/se " + fmt(r.measured) + " <= 3 on 10 pts, seed 20260810, " +
               fmt(secs) + " s < 120 s");
}

void criterion_9() {
    const CheckResult r = checks::branch_continuity();
    report(9, "Lambda branch continuity at 4 alpha Delta = 1 +- 1e-6", r.pass,
           "sup |diff| " + fmt(r.measured) + " <= 1e-4 on t in [0, 10 Delta]");
}

void criterion_10(const fs::path& dir, const std::map<std::string, CsvTable>& figures) {
    bool identical = true;
    for (const char* name : {"fig1", "fig4"}) {
        const fs::path rerun_dir = dir / (std::string(name) + "_rerun");
        cmd_figure(name, rerun_dir.string(), false);
        const CsvTable rerun = parse_csv(rerun_dir / (std::string(name) + ".csv"));
        if (rerun.bytes != figures.at(name).bytes) identical = false;
    }
    report(10, "byte-identical figure CSV across runs", identical,
           std::string("fig1 and fig4 reruns ") + (identical ? "match" : "differ"));
}

} // namespace

int main() {
    Timer total;
    const fs::path dir = fs::temp_directory_path() / "qslt_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    criterion_1();
    criterion_2();

    // shared channels for the oracle-facing criteria
    std::vector<DephasingChannel> regimes;
    for (double s : {0.5, 1.0, 3.5})
        regimes.push_back(make_pd_channel_tabulated(make_ohmic_spec(s, 1.0), 11.0));
    regimes.push_back(make_rtn_channel(make_rtn_spec(0.2, 1.0)));
    regimes.push_back(make_rtn_channel(make_rtn_spec(2.0, 1.0)));
    criterion_3(regimes);
    criterion_4();
    criterion_5(regimes[1], regimes[4]);

    // figure presets, written through the real CLI path and parsed back
    std::map<std::string, CsvTable> figures;
    std::map<std::string, DephasingChannel> channels;
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
        cmd_figure(name, dir.string(), false);
        figures.emplace(name, parse_csv(dir / (std::string(name) + ".csv")));
    }
    channels.emplace("fig1", regimes[0]);
    channels.emplace("fig2", regimes[1]);
    channels.emplace("fig4", regimes[3]);
    criterion_6(figures);
    criterion_7(figures, channels);
    criterion_8();
    criterion_9();
    criterion_10(dir, figures);

    std::printf("%d/10 criteria passed in %.1f s\n", 10 - g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
