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

// engine.hpp — ML, MT and unified quantum-speed-limit times for a qubit
// trajectory over a driving window [tau, tau + tau_d], fast closed-form paths
// for the filtered dephasing channels, and (k, tau) parameter sweeps.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslt/filtering.hpp"
#include "qslt/matrix2.hpp"
#include "qslt/quadrature.hpp"

namespace qslt {

// Closed-form normalization variants. `paper` carries the sqrt(k(1-k)/2)
// prefactor (the MT branch of the unified bound); `ml` carries sqrt(k(1-k))
// (the max branch, larger by exactly sqrt(2) on these trajectories).
enum class QslVariant { paper, ml };

inline const char* to_string(QslVariant v) { return v == QslVariant::paper ? "paper" : "ml"; }

// Discretization of the (1/tau_d) int dt time averages.
struct QuadConfig {
    int points_per_window = 512; // at least 64
    double tolerance = 1e-10;    // kink bisection target
};

inline void validate(const QuadConfig& cfg) {
    if (cfg.points_per_window < 64)
        throw std::invalid_argument("QuadConfig: points_per_window must be >= 64");
    if (!(cfg.tolerance > 0.0))
        throw std::invalid_argument("QuadConfig: tolerance must be > 0");
}

// Everything the unified bound produces for one (tau, tau_d) evaluation.
struct QslResult {
    double f = 1.0;          // relative purity at the window endpoints
    double purity_tau = 1.0; // tr(rho_tau^2)
    double ml_denom = 0.0;   // time-averaged sum sigma_i rho_i
    double mt_denom = 0.0;   // time-averaged sqrt(sum sigma_i^2)
    double tau_ml = 0.0;
    double tau_mt = 0.0;
    double tau_qsl = 0.0;    // max(tau_ml, tau_mt)
    double tau_d = 0.0;
};

using StateFn = std::function<QubitDensity(double)>;
using StateDotFn = std::function<Matrix2(double)>;

// Unified QSL bound for an arbitrary differentiable qubit trajectory.
// The speed numerator counts the coherence cross term of
// tr(rho_tau rho_{tau+tau_d}) once, i.e. |f - 1| tr(rho_tau^2) / 2; this
// normalization makes the general path coincide with the closed-form ml
// variant on the filtered dephasing family. Both spectra in the ML
// denominator are paired in descending order (von Neumann convention), which
// also guarantees tau_qsl <= tau_d. `breakpoints` are interior times where
// the derivative's singular values kink (|.| of a sign-changing factor);
// Simpson panels never straddle them.
inline QslResult qsl_general(const StateFn& traj, const StateDotFn& traj_dot, double tau,
                             double tau_d, const QuadConfig& cfg = {},
                             const std::vector<double>& breakpoints = {}) {
    if (tau < 0.0) throw std::invalid_argument("qsl_general: tau must be >= 0");
    if (!(tau_d > 0.0)) throw std::invalid_argument("qsl_general: tau_d must be > 0");
    validate(cfg);

    const QubitDensity rho_tau = traj(tau);
    const QubitDensity rho_end = traj(tau + tau_d);
    const double pur = purity(rho_tau);
    const double cross = overlap(rho_tau, rho_end);
    const auto [lam1, lam2] = hermitian_eigenvalues(rho_tau);

    auto ml_integrand = [&](double t) {
        const auto [s1, s2] = singular_values(traj_dot(t));
        return s1 * lam1 + s2 * lam2;
    };
    auto mt_integrand = [&](double t) {
        const auto [s1, s2] = singular_values(traj_dot(t));
        return std::sqrt(s1 * s1 + s2 * s2);
    };

    QslResult r;
    r.tau_d = tau_d;
    r.f = cross / pur;
    r.purity_tau = pur;
    r.ml_denom = simpson_segmented(ml_integrand, tau, tau + tau_d, breakpoints,
                                   cfg.points_per_window) / tau_d;
    r.mt_denom = simpson_segmented(mt_integrand, tau, tau + tau_d, breakpoints,
                                   cfg.points_per_window) / tau_d;

    const double num = 0.5 * std::abs(cross - pur);
    if (num == 0.0) {
        // f = 1: zero distance needs zero time, even for a vanishing denominator.
        r.tau_ml = r.tau_mt = r.tau_qsl = 0.0;
        return r;
    }
    if (!(r.ml_denom > 0.0) || !(r.mt_denom > 0.0))
        throw std::domain_error("qsl_general: state changed over the window but the "
                                "time-averaged speed vanished");
    r.tau_ml = num / r.ml_denom;
    r.tau_mt = num / r.mt_denom;
    r.tau_qsl = std::max(r.tau_ml, r.tau_mt);
    return r;
}

// Interior kinks of |q_dot| on [tau, tau + tau_d] for a dephasing channel.
inline std::vector<double> derivative_kinks(const DephasingChannel& channel, double tau,
                                            double tau_d, const QuadConfig& cfg = {}) {
    return find_sign_changes(channel.q_dot, tau, tau + tau_d, cfg.points_per_window);
}

// Unified bound on the filtered dephasing trajectory, with kink-aware panels.
inline QslResult qsl_filtered(const FilteredTrajectory& traj, double tau, double tau_d,
                              const QuadConfig& cfg = {}) {
    const auto kinks = derivative_kinks(traj.channel(), tau, tau_d, cfg);
    return qsl_general([&traj](double t) { return traj.state(t); },
                       [&traj](double t) { return traj.state_dot(t); }, tau, tau_d, cfg, kinks);
}

// Closed-form QSL time for a filtered dephasing channel, absolute values
// inserted so recoherence windows are handled:
//   prefactor * |q_tau| * |q_{tau+tau_d} - q_tau| / ((1/tau_d) int |q_dot|).
inline double qsl_closed_form(const DephasingChannel& channel, double k, double tau,
                              double tau_d, QslVariant variant, const QuadConfig& cfg = {}) {
    if (!(k > 0.0 && k < 1.0))
        throw std::invalid_argument("qsl_closed_form: k must lie in (0, 1)");
    if (tau < 0.0) throw std::invalid_argument("qsl_closed_form: tau must be >= 0");
    if (!(tau_d > 0.0)) throw std::invalid_argument("qsl_closed_form: tau_d must be > 0");
    validate(cfg);

    const double kk = k * (1.0 - k);
    const double pref = (variant == QslVariant::paper) ? std::sqrt(0.5 * kk) : std::sqrt(kk);
    const double q_tau = channel.q(tau);
    const double q_end = channel.q(tau + tau_d);
    const double num = pref * std::abs(q_tau) * std::abs(q_end - q_tau);
    if (num == 0.0) return 0.0;

    const auto kinks = derivative_kinks(channel, tau, tau_d, cfg);
    const double denom = simpson_segmented([&](double t) { return std::abs(channel.q_dot(t)); },
                                           tau, tau + tau_d, kinks, cfg.points_per_window) / tau_d;
    if (!(denom > 0.0))
        throw std::domain_error("qsl_closed_form: coherence moved but int |q_dot| vanished");
    return num / denom;
}

inline double qsl_closed_form_pd(const OhmicSpec& spec, double k, double tau, double tau_d,
                                 QslVariant variant, const QuadConfig& cfg = {}) {
    return qsl_closed_form(make_pd_channel(spec), k, tau, tau_d, variant, cfg);
}

inline double qsl_closed_form_rtn(const RtnSpec& spec, double k, double tau, double tau_d,
                                  QslVariant variant, const QuadConfig& cfg = {}) {
    return qsl_closed_form(make_rtn_channel(spec), k, tau, tau_d, variant, cfg);
}

// ------------------------------- sweeps --------------------------------------

// Uniform tau grid: steps intervals, steps + 1 samples inclusive.
struct TauGrid {
    double start = 0.0;
    double end = 10.0;
    int steps = 400;
};

inline std::vector<double> expand(const TauGrid& grid) {
    if (!(grid.end >= grid.start)) throw std::invalid_argument("TauGrid: end must be >= start");
    if (grid.steps < 1) throw std::invalid_argument("TauGrid: steps must be >= 1");
    std::vector<double> taus(grid.steps + 1);
    const double h = (grid.end - grid.start) / grid.steps;
    for (int i = 0; i <= grid.steps; ++i) taus[i] = grid.start + h * i;
    taus.back() = grid.end;
    return taus;
}

// One sweep row: the engine result plus both closed-form values. `headline`
// is the variant-selected engine value reported as tau_qsl in the CLI output
// (ml -> the max branch, paper -> the MT branch, sqrt(2) below it).
struct SweepRow {
    double k = 0.5;
    double tau = 0.0;
    QslResult result;
    double headline = 0.0;
    double closed_paper = 0.0;
    double closed_ml = 0.0;
    double closed_form_dev = 0.0;
};

inline double relative_deviation(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1e-14) return 0.0;
    return std::abs(a - b) / scale;
}

// One row per (k, tau), k outer ascending, tau inner ascending. Any row
// failure aborts the sweep naming the offending coordinates.
inline std::vector<SweepRow> sweep(const DephasingChannel& channel, std::vector<double> ks,
                                   const TauGrid& grid, double tau_d, const QuadConfig& cfg = {},
                                   QslVariant variant = QslVariant::paper) {
    if (ks.empty()) throw std::invalid_argument("sweep: k list must be nonempty");
    std::sort(ks.begin(), ks.end());
    const std::vector<double> taus = expand(grid);

    std::vector<SweepRow> rows;
    rows.reserve(ks.size() * taus.size());
    for (double k : ks) {
        const FilteredTrajectory traj(channel, make_filter(k));
        for (double tau : taus) {
            try {
                SweepRow row;
                row.k = k;
                row.tau = tau;
                row.result = qsl_filtered(traj, tau, tau_d, cfg);
                row.closed_paper = qsl_closed_form(channel, k, tau, tau_d, QslVariant::paper, cfg);
                row.closed_ml = qsl_closed_form(channel, k, tau, tau_d, QslVariant::ml, cfg);
                row.headline = (variant == QslVariant::ml) ? row.result.tau_qsl : row.result.tau_mt;
                const double closed = (variant == QslVariant::ml) ? row.closed_ml : row.closed_paper;
                row.closed_form_dev = relative_deviation(row.headline, closed);
                rows.push_back(row);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep: row (k=" + std::to_string(k) +
                                         ", tau=" + std::to_string(tau) + ") failed: " + e.what());
            }
        }
    }
    return rows;
}

} // namespace qslt
