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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "qslt/oracles.hpp"

using namespace qslt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("riemann oracle on a constant trajectory") {
    const std::vector<QubitDensity> samples(1501, make_density(0.4, 0.6, 0.2));
    const QslResult r = riemann_qsl(samples, 0.0, 1.0);
    CHECK(r.tau_qsl == 0.0);
    CHECK(r.f == 1.0);
}

TEST_CASE("riemann oracle at the Markovian reference point") {
    const DephasingChannel pd = make_pd_channel_tabulated(make_ohmic_spec(1.0, 1.0), 2.5, 256);
    const FilteredTrajectory traj(pd, make_filter(0.5));
    const QslResult r = riemann_qsl(sample_trajectory(traj, 1.0, 1.0, 10000), 1.0, 1.0);
    CHECK_THAT(r.tau_ml, WithinAbs(0.125, 1e-3));
    CHECK_THAT(r.tau_ml / r.tau_mt, WithinRel(std::sqrt(2.0), 1e-10));
}

TEST_CASE("riemann oracle converges to the engine at first order") {
    const DephasingChannel rtn = make_rtn_channel(make_rtn_spec(2.0, 1.0));
    const FilteredTrajectory traj(rtn, make_filter(0.3));
    const double tau = 1.3, tau_d = 1.0;
    const QslResult eng = qsl_filtered(traj, tau, tau_d);

    const double dev_n = std::abs(
        riemann_qsl(sample_trajectory(traj, tau, tau_d, 4000), tau, tau_d).tau_qsl - eng.tau_qsl);
    const double dev_2n = std::abs(
        riemann_qsl(sample_trajectory(traj, tau, tau_d, 8000), tau, tau_d).tau_qsl - eng.tau_qsl);
    CHECK(dev_2n < dev_n);

    const double dev_big = std::abs(
        riemann_qsl(sample_trajectory(traj, tau, tau_d, 100000), tau, tau_d).tau_qsl - eng.tau_qsl);
    CHECK(dev_big / eng.tau_qsl < 1e-4);
}

TEST_CASE("riemann oracle input contract") {
    const std::vector<QubitDensity> few(100, maximally_mixed());
    CHECK_THROWS_AS(riemann_qsl(few, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("telegraph Monte Carlo basics") {
    const RtnSpec spec{2.0, 1.0};

    const McEstimate zero = rtn_monte_carlo(spec, 0.0, 10000, 1);
    CHECK(zero.mean == 1.0);
    CHECK(zero.std_error < 1e-12);

    // small-t Taylor check fixing the factor-2 phase convention
    const double t_small = 0.02;
    const McEstimate small = rtn_monte_carlo(spec, t_small, 40000, 2);
    const double taylor = 1.0 - 2.0 * spec.alpha * spec.alpha * t_small * t_small;
    CHECK_THAT(small.mean, WithinAbs(taylor, 3.0 * small.std_error + 1e-5));

    // oscillatory branch point vs Lambda within 3 sigma
    const McEstimate osc = rtn_monte_carlo(spec, 1.0, 50000, 3);
    CHECK_THAT(osc.mean, WithinAbs(coherence_rtn(spec, 1.0), 3.0 * osc.std_error));

    // damped branch
    const RtnSpec damp{0.2, 1.0};
    const McEstimate dm = rtn_monte_carlo(damp, 2.0, 50000, 4);
    CHECK_THAT(dm.mean, WithinAbs(coherence_rtn(damp, 2.0), 3.0 * dm.std_error));
}

TEST_CASE("Monte Carlo determinism and seed independence") {
    const RtnSpec spec{1.0, 1.0};
    const McEstimate a = rtn_monte_carlo(spec, 1.5, 20000, 42);
    const McEstimate b = rtn_monte_carlo(spec, 1.5, 20000, 42);
    CHECK(a.mean == b.mean);           // bit-for-bit reproducible
    CHECK(a.std_error == b.std_error);

    const McEstimate c = rtn_monte_carlo(spec, 1.5, 20000, 43);
    CHECK(c.mean != a.mean);
    const double sigma = std::hypot(a.std_error, c.std_error);
    CHECK(std::abs(a.mean - c.mean) < 3.0 * sigma);
}

TEST_CASE("gamma_analytic_s1") {
    CHECK(gamma_analytic_s1(1.0, 0.0) == 0.0);
    CHECK_THAT(gamma_analytic_s1(1.0, 1.0), WithinRel(2.0 * std::log(2.0), 1e-15));
    CHECK_THAT(gamma_analytic_s1(2.0, 1.0), WithinRel(2.0 * std::log(5.0), 1e-15));
}

TEST_CASE("kraus_vs_factor") {
    std::vector<double> grid;
    for (int i = 0; i <= 25; ++i) grid.push_back(8.0 * i / 25.0);

    const DephasingChannel pd = make_pd_channel(make_ohmic_spec(1.0, 1.0));
    const DephasingChannel rtn = make_rtn_channel(make_rtn_spec(2.0, 1.0));
    CHECK(kraus_vs_factor(pd, make_density(0.3, 0.7, 0.0), grid) == 0.0);
    CHECK(kraus_vs_factor(pd, plus_state(), grid) < 1e-12);
    CHECK(kraus_vs_factor(rtn, plus_state(), grid) < 1e-12);
}

TEST_CASE("validation checks pass on the correct build") {
    CHECK(checks::gamma_quadrature_s1(20).pass);
    CHECK(checks::kraus_closure(40, 99).pass);
    CHECK(checks::branch_continuity().pass);
    CHECK(checks::rtn_dot_finite_difference().pass);
    CHECK(checks::rtn_monte_carlo_check(20000, 7).pass);
}

TEST_CASE("derivative check flags an injected sign error") {
    DephasingChannel corrupted = make_rtn_channel(make_rtn_spec(2.0, 1.0));
    const auto good_dot = corrupted.q_dot;
    corrupted.q_dot = [good_dot](double t) { return -good_dot(t); };
    const CheckResult r = checks::coherence_derivative(corrupted, "coherence_rtn_dot",
                                                       {0.5, 1.0, 2.0}, 1e-5);
    CHECK_FALSE(r.pass);
    CHECK(r.name == "coherence_rtn_dot");
}
