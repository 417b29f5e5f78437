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

// channels.hpp — the two unital qubit dephasing channels: Ohmic-bath phase
// damping (coherence factor e^{-Gamma(t)} by quadrature) and random-telegraph
// colored-noise dephasing (closed-form Lambda_t), plus their Kraus pairs and
// the state evolver.

#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslt/matrix2.hpp"
#include "qslt/quadrature.hpp"

namespace qslt {

// Ohmic-like bath: J(omega) = omega_c^{1-s} * omega^s * exp(-omega/omega_c).
// Sub-Ohmic s < 1, Ohmic s = 1, super-Ohmic s > 1.
struct OhmicSpec {
    double s = 1.0;
    double omega_c = 1.0;
};

inline OhmicSpec make_ohmic_spec(double s, double omega_c) {
    if (!(s > 0.0)) throw std::invalid_argument("OhmicSpec: s must be > 0");
    if (!(omega_c > 0.0)) throw std::invalid_argument("OhmicSpec: omega_c must be > 0");
    return {s, omega_c};
}

// Random telegraph noise: coupling amplitude alpha, correlation time delta.
struct RtnSpec {
    double alpha = 1.0;
    double delta = 1.0;
};

inline RtnSpec make_rtn_spec(double alpha, double delta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("RtnSpec: alpha must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("RtnSpec: delta must be > 0");
    return {alpha, delta};
}

// ----------------------------- phase damping --------------------------------

namespace detail {

// Upper truncation of the omega integral: beyond s*omega_c the integrand is
// dominated by exp(-omega/omega_c); 60 extra decades of e-folding push the
// tail below 1e-12 of any value reached here.
inline double pd_cutoff(const OhmicSpec& spec) { return spec.omega_c * (spec.s + 60.0); }

// Panel cap resolving the cos(omega t) oscillation: at most pi/8 of a period.
inline double pd_panel_width(const OhmicSpec& spec, double t) {
    const double base = pd_cutoff(spec) / 16.0;
    if (t <= 0.0) return base;
    return std::min(base, std::numbers::pi / (8.0 * t));
}

} // namespace detail

// Gamma(t) = 4 * int_0^inf J(w) (1 - cos wt) / w^2 dw, by adaptive quadrature.
// (1 - cos x) is evaluated as 2 sin^2(x/2); below 1e-8*omega_c the analytic
// w -> 0 limit t^2/2 replaces the 0/0 ratio.
inline double gamma_ohmic(const OhmicSpec& spec, double t) {
    if (t < 0.0) throw std::invalid_argument("gamma_ohmic: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double s = spec.s, wc = spec.omega_c;
    const double pref = 4.0 * std::pow(wc, 1.0 - s);
    const double w_low = 1e-8 * wc;
    auto integrand = [=](double w) {
        if (w < w_low) return pref * std::pow(w, s) * (0.5 * t * t) * std::exp(-w / wc);
        const double sn = std::sin(0.5 * w * t);
        return pref * std::pow(w, s - 2.0) * std::exp(-w / wc) * (2.0 * sn * sn);
    };
    return integrate_adaptive(integrand, 0.0, detail::pd_cutoff(spec), 1e-12,
                              detail::pd_panel_width(spec, t));
}

// dGamma/dt = 4 * int_0^inf J(w) sin(wt) / w dw. Negative values mark the
// recoherence intervals of the super-Ohmic regime.
inline double gamma_dot_ohmic(const OhmicSpec& spec, double t) {
    if (t < 0.0) throw std::invalid_argument("gamma_dot_ohmic: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double s = spec.s, wc = spec.omega_c;
    const double pref = 4.0 * std::pow(wc, 1.0 - s);
    const double w_low = 1e-8 * wc;
    auto integrand = [=](double w) {
        if (w < w_low) return pref * std::pow(w, s) * t * std::exp(-w / wc);
        return pref * std::pow(w, s - 1.0) * std::exp(-w / wc) * std::sin(w * t);
    };
    return integrate_adaptive(integrand, 0.0, detail::pd_cutoff(spec), 1e-12,
                              detail::pd_panel_width(spec, t));
}

// Decoherence factor p_t = exp(-Gamma(t)), equal to 1 at t = 0.
inline double coherence_pd(const OhmicSpec& spec, double t) {
    return std::exp(-gamma_ohmic(spec, t));
}

// ------------------------------ RTN dephasing -------------------------------

enum class RtnBranch { damped, degenerate, oscillatory };

struct RtnMu {
    RtnBranch branch = RtnBranch::degenerate;
    double value = 0.0; // mu on the oscillatory branch, nu on the damped one
};

// mu = sqrt((4 alpha Delta)^2 - 1) when 4 alpha Delta > 1 (oscillatory);
// nu = sqrt(1 - (4 alpha Delta)^2) when below (damped, the analytic
// continuation cos -> cosh); the boundary is the degenerate limit.
inline RtnMu mu_rtn(const RtnSpec& spec) {
    const double x = 4.0 * spec.alpha * spec.delta;
    if (x > 1.0) return {RtnBranch::oscillatory, std::sqrt(x * x - 1.0)};
    if (x < 1.0) return {RtnBranch::damped, std::sqrt(1.0 - x * x)};
    return {RtnBranch::degenerate, 0.0};
}

// Lambda_t: oscillatory branch e^{-th}(cos mu*th + sin mu*th / mu) with
// th = t/(2 Delta); damped branch continues cos/sin to cosh/sinh, written in
// overflow-free exponential form; degenerate branch is the limit
// e^{-th}(1 + th).
inline double coherence_rtn(const RtnSpec& spec, double t) {
    if (t < 0.0) throw std::invalid_argument("coherence_rtn: t must be >= 0");
    const double th = t / (2.0 * spec.delta);
    const RtnMu mu = mu_rtn(spec);
    switch (mu.branch) {
    case RtnBranch::oscillatory:
        return std::exp(-th) * (std::cos(mu.value * th) + std::sin(mu.value * th) / mu.value);
    case RtnBranch::damped: {
        const double nu = mu.value;
        return 0.5 * ((1.0 + 1.0 / nu) * std::exp(-(1.0 - nu) * th) +
                      (1.0 - 1.0 / nu) * std::exp(-(1.0 + nu) * th));
    }
    case RtnBranch::degenerate:
    default:
        return std::exp(-th) * (1.0 + th);
    }
}

// Analytic derivative of Lambda_t. All three branches reduce to
// -4 alpha^2 t + O(t^2) near zero, so Lambda_dot(0) = 0.
inline double coherence_rtn_dot(const RtnSpec& spec, double t) {
    if (t < 0.0) throw std::invalid_argument("coherence_rtn_dot: t must be >= 0");
    const double th = t / (2.0 * spec.delta);
    const double a2d = spec.alpha * spec.alpha * spec.delta;
    const RtnMu mu = mu_rtn(spec);
    switch (mu.branch) {
    case RtnBranch::oscillatory:
        return -(8.0 * a2d / mu.value) * std::exp(-th) * std::sin(mu.value * th);
    case RtnBranch::damped: {
        const double nu = mu.value;
        return -(4.0 * a2d / nu) * (std::exp(-(1.0 - nu) * th) - std::exp(-(1.0 + nu) * th));
    }
    case RtnBranch::degenerate:
    default:
        return -std::exp(-th) * th / (2.0 * spec.delta);
    }
}

// ----------------------------- unified channel ------------------------------

// A unital dephasing channel reduced to its coherence factor q(t) (with
// q(0) = 1, |q| <= 1) and the analytic derivative. Evaluators are pure and
// safe to call concurrently.
struct DephasingChannel {
    std::function<double(double)> q;
    std::function<double(double)> q_dot;
    bool non_markovian = false;
    std::string label;
};

inline DephasingChannel make_pd_channel(const OhmicSpec& spec) {
    DephasingChannel ch;
    ch.q = [spec](double t) { return coherence_pd(spec, t); };
    ch.q_dot = [spec](double t) {
        return -gamma_dot_ohmic(spec, t) * coherence_pd(spec, t);
    };
    ch.non_markovian = (spec.s >= 2.5 && spec.s <= 5.5);
    ch.label = "phase-damping(s=" + std::to_string(spec.s) +
               ",omega_c=" + std::to_string(spec.omega_c) + ")";
    return ch;
}

inline DephasingChannel make_rtn_channel(const RtnSpec& spec) {
    DephasingChannel ch;
    ch.q = [spec](double t) { return coherence_rtn(spec, t); };
    ch.q_dot = [spec](double t) { return coherence_rtn_dot(spec, t); };
    ch.non_markovian = (spec.alpha * spec.delta >= 0.5);
    ch.label = "rtn(alpha=" + std::to_string(spec.alpha) +
               ",delta=" + std::to_string(spec.delta) + ")";
    return ch;
}

// Tabulated phase-damping channel for bulk evaluation (sweeps, oracles).
// Gamma and dGamma/dt are computed by the same quadratures at uniform nodes;
// Gamma is a cubic Hermite in (value, derivative), dGamma/dt a natural
// spline (its second derivative vanishes at t = 0, matching the natural
// boundary condition; the right end is padded away from the usable range).
// Outside the table the direct quadrature path is used.
inline DephasingChannel make_pd_channel_tabulated(const OhmicSpec& spec, double t_max,
                                                  int nodes_per_unit = 256) {
    if (!(t_max > 0.0))
        throw std::invalid_argument("make_pd_channel_tabulated: t_max must be > 0");
    const double pad = 0.5;
    const double range = t_max + pad;
    int n = std::max(64, static_cast<int>(std::ceil(range * nodes_per_unit))) + 1;
    const double dt = range / (n - 1);

    std::vector<double> g(n), gd(n);
    for (int i = 0; i < n; ++i) {
        const double t = dt * i;
        g[i] = gamma_ohmic(spec, t);
        gd[i] = gamma_dot_ohmic(spec, t);
    }
    auto gamma_tab = std::make_shared<HermiteTable>(0.0, dt, g, gd);
    auto gamma_dot_tab = std::make_shared<SplineTable>(0.0, dt, gd);

    DephasingChannel ch = make_pd_channel(spec);
    auto direct_q = ch.q;
    auto direct_qd = ch.q_dot;
    ch.q = [=](double t) {
        if (t >= 0.0 && t <= t_max + pad) return std::exp(-(*gamma_tab)(t));
        return direct_q(t);
    };
    ch.q_dot = [=](double t) {
        if (t >= 0.0 && t <= t_max + pad)
            return -(*gamma_dot_tab)(t)*std::exp(-(*gamma_tab)(t));
        return direct_qd(t);
    };
    return ch;
}

// ------------------------------ Kraus algebra -------------------------------

// E1 = sqrt((1+q)/2) sigma0, E2 = sqrt((1-q)/2) sigma3. Completeness
// sum E_k^dag E_k = I and unitality sum E_k E_k^dag = I hold identically.
inline std::pair<Matrix2, Matrix2> kraus_pair_from_factor(double q) {
    if (!(std::abs(q) <= 1.0 + 1e-12))
        throw std::domain_error("kraus_pair: coherence factor |q| = " + std::to_string(std::abs(q)) +
                                " exceeds 1 (model evaluation fault)");
    const double w1 = std::sqrt(std::max(0.5 * (1.0 + q), 0.0));
    const double w2 = std::sqrt(std::max(0.5 * (1.0 - q), 0.0));
    return {w1 * Matrix2::sigma0(), w2 * Matrix2::sigma3()};
}

inline std::pair<Matrix2, Matrix2> kraus_pair(const DephasingChannel& channel, double t) {
    return kraus_pair_from_factor(channel.q(t));
}

// Applies the channel by the Kraus sum E1 rho E1^dag + E2 rho E2^dag.
// The diagonal is preserved and the coherence is multiplied by q(t).
inline QubitDensity evolve(const DephasingChannel& channel, const QubitDensity& rho0, double t) {
    const auto [e1, e2] = kraus_pair(channel, t);
    const Matrix2 rho = rho0.to_matrix();
    const Matrix2 out = e1 * rho * e1.adjoint() + e2 * rho * e2.adjoint();
    return {out.a11.real(), out.a22.real(), out.a12};
}

} // namespace qslt
