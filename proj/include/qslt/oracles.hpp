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

// oracles.hpp — independent brute-force validators: dense-grid Riemann
// evaluation of the bounds over finite-difference derivatives, Monte-Carlo
// telegraph-noise simulation of Lambda_t, analytic-integral cross checks,
// and the named check suite behind the `validate` subcommand.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qslt/engine.hpp"

namespace qslt {

// --------------------------- deterministic RNG ------------------------------

// splitmix64: counter-based stream, bit-stable across compilers. A fresh
// stream per (seed, index) keeps Monte-Carlo results independent of any
// worker partitioning.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }
    // uniform on (0, 1]
    double next_u01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
    bool next_bit() { return (next() >> 63) != 0; }
    double uniform(double a, double b) { return a + (b - a) * next_u01(); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27; z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    std::uint64_t state_;
};

// ------------------------------ Riemann oracle ------------------------------

// Samples the filtered trajectory at N + 1 uniform times over the window.
inline std::vector<QubitDensity> sample_trajectory(const FilteredTrajectory& traj, double tau,
                                                   double tau_d, int n_intervals) {
    std::vector<QubitDensity> samples(n_intervals + 1);
    for (int j = 0; j <= n_intervals; ++j)
        samples[j] = traj.state(tau + tau_d * j / n_intervals);
    return samples;
}

// Brute-force evaluation of the unified bound: forward finite differences
// for the derivative, left-Riemann sums for the time averages. No
// quadrature, no analytic derivatives; converges to qsl_general as N grows.
inline QslResult riemann_qsl(const std::vector<QubitDensity>& samples, double tau, double tau_d) {
    if (samples.size() < 1001)
        throw std::invalid_argument("riemann_qsl: need at least 1000 intervals per window");
    if (!(tau_d > 0.0)) throw std::invalid_argument("riemann_qsl: tau_d must be > 0");
    const std::size_t n = samples.size() - 1;
    const double h = tau_d / static_cast<double>(n);

    const QubitDensity& rho_tau = samples.front();
    const double pur = purity(rho_tau);
    const double cross = overlap(rho_tau, samples.back());
    const auto [lam1, lam2] = hermitian_eigenvalues(rho_tau);

    double ml_sum = 0.0, mt_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Matrix2 diff = samples[j + 1].to_matrix() - samples[j].to_matrix();
        const Matrix2 deriv = (1.0 / h) * diff;
        const auto [s1, s2] = singular_values(deriv);
        ml_sum += (s1 * lam1 + s2 * lam2) * h;
        mt_sum += std::sqrt(s1 * s1 + s2 * s2) * h;
    }

    QslResult r;
    r.tau_d = tau_d;
    r.f = cross / pur;
    r.purity_tau = pur;
    r.ml_denom = ml_sum / tau_d;
    r.mt_denom = mt_sum / tau_d;
    const double num = 0.5 * std::abs(cross - pur);
    if (num == 0.0) {
        r.tau_ml = r.tau_mt = r.tau_qsl = 0.0;
        return r;
    }
    r.tau_ml = num / r.ml_denom;
    r.tau_mt = num / r.mt_denom;
    r.tau_qsl = std::max(r.tau_ml, r.tau_mt);
    return r;
}

// ---------------------------- telegraph Monte Carlo -------------------------

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_trajectories = 0;
    std::uint64_t seed = 0;
};

// Simulates telegraph trajectories zeta(t') in {+1, -1} with exponential
// holding times of mean 2*Delta (flip rate 1/(2*Delta)) and a fair random
// initial sign, and estimates E[cos(2 alpha int_0^t zeta dt')]. The phase
// convention (factor 2 alpha) is fixed by the small-t expansion
// Lambda ~ 1 - 2 alpha^2 t^2. Per-trajectory RNG streams make the estimate
// a pure function of (seed, n, t).
inline McEstimate rtn_monte_carlo(const RtnSpec& spec, double t, long n, std::uint64_t seed) {
    if (t < 0.0) throw std::invalid_argument("rtn_monte_carlo: t must be >= 0");
    if (n < 2) throw std::invalid_argument("rtn_monte_carlo: need n >= 2 trajectories");
    const double mean_hold = 2.0 * spec.delta;
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < n; ++i) {
        SplitMix64 rng(seed, static_cast<std::uint64_t>(i));
        double sign = rng.next_bit() ? 1.0 : -1.0;
        double cur = 0.0, area = 0.0;
        while (true) {
            const double hold = -mean_hold * std::log(rng.next_u01());
            if (cur + hold >= t) {
                area += sign * (t - cur);
                break;
            }
            area += sign * hold;
            cur += hold;
            sign = -sign;
        }
        const double x = std::cos(2.0 * spec.alpha * area);
        sum += x;
        sum_sq += x * x;
    }
    McEstimate est;
    est.n_trajectories = n;
    est.seed = seed;
    est.mean = sum / static_cast<double>(n);
    const double var = std::max(sum_sq / n - est.mean * est.mean, 0.0);
    est.std_error = std::sqrt(var / static_cast<double>(n - 1));
    return est;
}

// --------------------------- analytic cross-checks --------------------------

// Gamma(t) in closed form for the Ohmic (s = 1) bath: 2 ln(1 + omega_c^2 t^2).
inline double gamma_analytic_s1(double omega_c, double t) {
    return 2.0 * std::log1p(omega_c * omega_c * t * t);
}

// Max entrywise deviation between the Kraus-sum evolution and direct
// coherence scaling over a time grid.
inline double kraus_vs_factor(const DephasingChannel& channel, const QubitDensity& rho0,
                              const std::vector<double>& t_grid) {
    double worst = 0.0;
    for (double t : t_grid) {
        const Matrix2 via_kraus = evolve(channel, rho0, t).to_matrix();
        const QubitDensity scaled{rho0.d0, rho0.d1, channel.q(t) * rho0.c};
        const Matrix2 diff = via_kraus - scaled.to_matrix();
        worst = std::max(worst, std::sqrt(diff.frobenius_sq()));
    }
    return worst;
}

// ------------------------------ validation suite ----------------------------

enum class ValidationLevel { quick, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // worst observed deviation
    double tolerance = 0.0;
    std::string detail;
};

namespace checks {

inline CheckResult gamma_quadrature_s1(int n_points) {
    CheckResult r{"gamma_quadrature_s1", false, 0.0, 1e-8, ""};
    for (double wc : {0.5, 1.0, 2.0}) {
        const OhmicSpec spec{1.0, wc};
        for (int i = 1; i <= n_points; ++i) {
            const double t = 20.0 * i / n_points;
            const double got = gamma_ohmic(spec, t);
            const double want = gamma_analytic_s1(wc, t);
            r.measured = std::max(r.measured, std::abs(got - want) / want);
        }
    }
    r.pass = r.measured <= r.tolerance;
    r.detail = "|Gamma_quad - 2ln(1+wc^2 t^2)|/Gamma over t in (0,20], wc in {0.5,1,2}";
    return r;
}

inline CheckResult kraus_closure(int n_samples, std::uint64_t seed) {
    CheckResult r{"kraus_closure", false, 0.0, 1e-12, ""};
    SplitMix64 rng(seed, 0xC0FFEE);
    for (int i = 0; i < n_samples; ++i) {
        DephasingChannel ch;
        if (i % 2 == 0)
            ch = make_pd_channel(make_ohmic_spec(rng.uniform(0.3, 5.5), rng.uniform(0.5, 2.0)));
        else
            ch = make_rtn_channel(make_rtn_spec(rng.uniform(0.05, 3.0), rng.uniform(0.5, 2.0)));
        const double t = rng.uniform(0.0, 10.0);
        const auto [e1, e2] = kraus_pair(ch, t);
        const Matrix2 completeness =
            e1.adjoint() * e1 + e2.adjoint() * e2 - Matrix2::identity();
        const Matrix2 unitality = e1 * e1.adjoint() + e2 * e2.adjoint() - Matrix2::identity();
        r.measured = std::max({r.measured, std::sqrt(completeness.frobenius_sq()),
                               std::sqrt(unitality.frobenius_sq())});
    }
    r.pass = r.measured <= r.tolerance;
    r.detail = "sum E^dag E = I and sum E E^dag = I on random (channel, t) samples";
    return r;
}

inline CheckResult kraus_vs_factor_check(const DephasingChannel& channel, const std::string& name) {
    CheckResult r{name, false, 0.0, 1e-12, "Kraus-sum evolution vs direct coherence scaling"};
    std::vector<double> grid;
    for (int i = 0; i <= 32; ++i) grid.push_back(10.0 * i / 32.0);
    const double dev_plus = kraus_vs_factor(channel, plus_state(), grid);
    const double dev_diag = kraus_vs_factor(channel, {0.3, 0.7, 0.0}, grid);
    r.measured = std::max(dev_plus, dev_diag);
    r.pass = r.measured <= r.tolerance;
    return r;
}

inline CheckResult riemann_vs_engine(int points_per_regime, int n_intervals) {
    CheckResult r{"riemann_vs_engine", false, 0.0, 1e-4, ""};
    const double tau_d = 1.0;
    const double tau_hi = 10.0;
    const std::vector<double> ks{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<DephasingChannel> regimes;
    for (double s : {0.5, 1.0, 3.5})
        regimes.push_back(make_pd_channel_tabulated(make_ohmic_spec(s, 1.0), tau_hi + tau_d));
    regimes.push_back(make_rtn_channel(make_rtn_spec(0.2, 1.0)));
    regimes.push_back(make_rtn_channel(make_rtn_spec(2.0, 1.0)));

    const QuadConfig cfg{};
    for (const auto& channel : regimes) {
        for (int i = 0; i < points_per_regime; ++i) {
            const double tau = 0.5 + (tau_hi - 1.0) * i / std::max(points_per_regime - 1, 1);
            const double k = ks[static_cast<std::size_t>(i) % ks.size()];
            const FilteredTrajectory traj(channel, make_filter(k));
            const QslResult eng = qsl_filtered(traj, tau, tau_d, cfg);
            const QslResult ora = riemann_qsl(sample_trajectory(traj, tau, tau_d, n_intervals),
                                              tau, tau_d);
            r.measured = std::max(r.measured, relative_deviation(eng.tau_qsl, ora.tau_qsl));
        }
    }
    r.pass = r.measured <= r.tolerance;
    r.detail = "engine vs left-Riemann/finite-difference bound, N = " + std::to_string(n_intervals);
    return r;
}

inline CheckResult rtn_monte_carlo_check(long n, std::uint64_t seed) {
    CheckResult r{"rtn_monte_carlo", false, 0.0, 3.0, ""};
    const std::vector<std::pair<double, double>> points{
        {0.1, 0.5}, {0.1, 2.0}, {0.2, 1.0}, {0.2, 5.0}, {0.25, 2.0},
        {1.0, 0.5}, {1.0, 1.0}, {2.0, 0.5}, {2.0, 1.0}, {2.0, 2.0}};
    for (auto [alpha, t] : points) {
        const RtnSpec spec{alpha, 1.0};
        const McEstimate est = rtn_monte_carlo(spec, t, n, seed);
        if (est.std_error <= 0.0 || est.std_error > 0.05) {
            r.detail = "n too small to resolve Lambda at alpha*Delta = " + std::to_string(alpha);
            r.measured = 1e9;
            return r;
        }
        const double sigmas = std::abs(est.mean - coherence_rtn(spec, t)) / est.std_error;
        r.measured = std::max(r.measured, sigmas);
    }
    r.pass = r.measured <= r.tolerance;
    r.detail = "|mean - Lambda_t| in std-error units, n = " + std::to_string(n) +
               ", seed = " + std::to_string(seed);
    return r;
}

// Analytic q_dot against central finite differences of q. Fault injections
// in either evaluator surface here by name.
inline CheckResult coherence_derivative(const DephasingChannel& channel, const std::string& name,
                                        const std::vector<double>& ts, double h) {
    CheckResult r{name, false, 0.0, 1e-6, "analytic derivative vs central finite differences"};
    for (double t : ts) {
        const double fd = (channel.q(t + h) - channel.q(t - h)) / (2.0 * h);
        const double an = channel.q_dot(t);
        r.measured = std::max(r.measured,
                              std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-8}));
    }
    r.pass = r.measured <= r.tolerance;
    return r;
}

inline CheckResult rtn_dot_finite_difference() {
    double worst = 0.0;
    for (double alpha : {0.1, 0.2, 0.25, 1.0, 2.0}) {
        const RtnSpec spec{alpha, 1.0};
        const DephasingChannel ch = make_rtn_channel(spec);
        const CheckResult part = coherence_derivative(
            ch, "coherence_rtn_dot", {0.25, 0.5, 1.0, 2.0, 5.0}, 1e-5 * spec.delta);
        worst = std::max(worst, part.measured);
    }
    CheckResult r{"coherence_rtn_dot", worst <= 1e-6, worst, 1e-6,
                  "analytic Lambda_dot vs central finite differences, all branches"};
    return r;
}

inline CheckResult branch_continuity() {
    CheckResult r{"branch_continuity", false, 0.0, 1e-4,
                  "Lambda at 4*alpha*Delta = 1 +- 1e-6, t in [0, 10*Delta]"};
    const double delta = 1.0;
    const RtnSpec lo{(1.0 - 1e-6) / (4.0 * delta), delta};
    const RtnSpec hi{(1.0 + 1e-6) / (4.0 * delta), delta};
    for (int i = 0; i <= 2000; ++i) {
        const double t = 10.0 * delta * i / 2000.0;
        r.measured = std::max(r.measured,
                              std::abs(coherence_rtn(hi, t) - coherence_rtn(lo, t)));
    }
    r.pass = r.measured <= r.tolerance;
    return r;
}

} // namespace checks

// Runs the oracle suite. quick: reduced sample counts; full: N = n = 1e5.
inline std::vector<CheckResult> run_validation(ValidationLevel level, std::uint64_t seed) {
    const bool full = level == ValidationLevel::full;
    std::vector<CheckResult> results;
    results.push_back(checks::gamma_quadrature_s1(full ? 200 : 40));
    results.push_back(checks::kraus_closure(full ? 500 : 100, seed));
    results.push_back(checks::kraus_vs_factor_check(
        make_pd_channel(make_ohmic_spec(1.0, 1.0)), "kraus_vs_factor_pd"));
    results.push_back(checks::kraus_vs_factor_check(
        make_rtn_channel(make_rtn_spec(2.0, 1.0)), "kraus_vs_factor_rtn"));
    results.push_back(checks::riemann_vs_engine(full ? 10 : 2, full ? 100000 : 20000));
    results.push_back(checks::rtn_monte_carlo_check(full ? 100000 : 20000, seed));
    results.push_back(checks::rtn_dot_finite_difference());
    results.push_back(checks::branch_continuity());
    return results;
}

} // namespace qslt
