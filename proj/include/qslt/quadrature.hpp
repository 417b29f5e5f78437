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

// quadrature.hpp — adaptive Simpson integration, composite Simpson with
// breakpoints, bisection root bracketing, and small interpolation helpers.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qslt {

// Raised when an integration budget is exhausted before the tolerance is
// met. Callers must treat this as a diagnostic failure, never fall back to
// the partial value.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct SimpsonWorkspace {
    long evals = 0;
    long max_evals = 0;
    int max_depth = 0;
    double width_floor = 0.0; // panels this narrow are accepted as-is
};

template <class F>
double simpson_recurse(const F& f, double a, double fa, double b, double fb,
                       double m, double fm, double whole, double tol, int depth,
                       SimpsonWorkspace& ws) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    ws.evals += 2;
    if (ws.evals > ws.max_evals)
        throw QuadratureError("adaptive Simpson: evaluation budget exhausted on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // second clause: integrable endpoint cusps (e.g. w^s near w = 0) stall
    // the error estimate; their residual mass is below any useful tolerance
    // once the panel is this narrow
    if (std::abs(delta) <= 15.0 * tol + 1e-16 * (std::abs(left) + std::abs(right)) ||
        h <= ws.width_floor)
        return left + right + delta / 15.0;
    if (depth >= ws.max_depth)
        throw QuadratureError("adaptive Simpson: max depth " + std::to_string(ws.max_depth) +
                              " exhausted on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, ws) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, ws);
}

} // namespace detail

// Integrates f over [a, b] by adaptive Simpson. The interval is first cut
// into uniform panels no wider than max_panel_width (so an oscillatory
// integrand is resolved before refinement starts), then each panel is
// refined until its share of abs_tol is met.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol,
                          double max_panel_width, int max_depth = 52,
                          long max_evals = 20'000'000) {
    if (!(b > a)) return 0.0;
    const double width = b - a;
    const std::size_t panels =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(width / max_panel_width)));
    detail::SimpsonWorkspace ws{0, max_evals, max_depth};
    const double h = width / static_cast<double>(panels);
    const double panel_tol = abs_tol / static_cast<double>(panels);

    double total = 0.0;
    double x0 = a;
    double f0 = f(x0);
    ws.evals = 1;
    for (std::size_t i = 0; i < panels; ++i) {
        const double x1 = (i + 1 == panels) ? b : a + h * static_cast<double>(i + 1);
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        const double f1 = f(x1);
        ws.evals += 2;
        const double whole = ((x1 - x0) / 6.0) * (f0 + 4.0 * fm + f1);
        total += detail::simpson_recurse(f, x0, f0, x1, f1, xm, fm, whole, panel_tol, 0, ws);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

// Composite Simpson over [a, b] honoring interior breakpoints (points where
// the integrand has a kink). Each subsegment gets an even panel count
// proportional to its length, at least 8, totalling roughly total_points.
template <class F>
double simpson_segmented(const F& f, double a, double b,
                         const std::vector<double>& breakpoints, int total_points) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double t : breakpoints)
        if (t > a + 1e-15 * (std::abs(a) + 1.0) && t < b - 1e-15 * (std::abs(b) + 1.0))
            cuts.push_back(t);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    const double width = b - a;
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s], hi = cuts[s + 1];
        if (hi - lo < 1e-300) continue;
        int n = static_cast<int>(std::ceil(total_points * (hi - lo) / width));
        n = std::max(n, 8);
        if (n % 2) ++n;
        const double h = (hi - lo) / n;
        double acc = f(lo) + f(hi);
        for (int j = 1; j < n; ++j) acc += f(lo + h * j) * ((j % 2) ? 4.0 : 2.0);
        total += acc * h / 3.0;
    }
    return total;
}

// Locates sign changes of g on [a, b] by scanning n_scan intervals and
// refining each bracket by bisection. Grid points where g vanishes exactly
// are kept as-is.
template <class F>
std::vector<double> find_sign_changes(const F& g, double a, double b, int n_scan,
                                      int bisect_iters = 80) {
    std::vector<double> zeros;
    if (!(b > a) || n_scan < 1) return zeros;
    const double h = (b - a) / n_scan;
    double x0 = a, g0 = g(x0);
    for (int i = 1; i <= n_scan; ++i) {
        const double x1 = (i == n_scan) ? b : a + h * i;
        const double g1 = g(x1);
        if (g0 == 0.0) {
            zeros.push_back(x0);
        } else if (g0 * g1 < 0.0) {
            double lo = x0, hi = x1, glo = g0;
            for (int k = 0; k < bisect_iters && hi - lo > 1e-15 * (std::abs(lo) + 1.0); ++k) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) { lo = hi = mid; break; }
                if (glo * gm < 0.0) hi = mid;
                else { lo = mid; glo = gm; }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        g0 = g1;
    }
    if (g0 == 0.0) zeros.push_back(x0);
    return zeros;
}

// Piecewise cubic Hermite interpolant on a uniform grid from node values and
// node derivatives. Exact at the nodes; O(h^4) between them.
class HermiteTable {
  public:
    HermiteTable() = default;
    HermiteTable(double t0, double dt, std::vector<double> values, std::vector<double> derivs)
        : t0_(t0), dt_(dt), v_(std::move(values)), d_(std::move(derivs)) {
        if (v_.size() != d_.size() || v_.size() < 2)
            throw std::invalid_argument("HermiteTable: need matching value/derivative arrays");
    }

    double t_min() const { return t0_; }
    double t_max() const { return t0_ + dt_ * (static_cast<double>(v_.size()) - 1.0); }
    bool covers(double t) const { return t >= t_min() && t <= t_max(); }

    double operator()(double t) const {
        const auto [i, u] = locate(t);
        const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        const double h10 = u * (1.0 - u) * (1.0 - u);
        const double h01 = u * u * (3.0 - 2.0 * u);
        const double h11 = u * u * (u - 1.0);
        return h00 * v_[i] + h01 * v_[i + 1] + dt_ * (h10 * d_[i] + h11 * d_[i + 1]);
    }

  private:
    std::pair<std::size_t, double> locate(double t) const {
        double s = (t - t0_) / dt_;
        double fi = std::floor(s);
        std::size_t i = static_cast<std::size_t>(std::clamp(fi, 0.0, static_cast<double>(v_.size() - 2)));
        return {i, s - static_cast<double>(i)};
    }

    double t0_ = 0.0, dt_ = 1.0;
    std::vector<double> v_, d_;
};

// Natural cubic spline on a uniform grid (second derivative zero at both
// ends). Tridiagonal Thomas solve at construction.
class SplineTable {
  public:
    SplineTable() = default;
    SplineTable(double t0, double dt, std::vector<double> values)
        : t0_(t0), dt_(dt), v_(std::move(values)) {
        const std::size_t n = v_.size();
        if (n < 3) throw std::invalid_argument("SplineTable: need at least 3 nodes");
        m_.assign(n, 0.0); // second derivatives
        std::vector<double> diag(n, 2.0), rhs(n, 0.0), upper(n, 0.5);
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = 3.0 * (v_[i + 1] - 2.0 * v_[i] + v_[i - 1]) / (dt_ * dt_);
        // natural ends: m_[0] = m_[n-1] = 0; solve interior tridiagonal
        // (0.5, 2, 0.5) system by forward elimination.
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = 0.5 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }

    double operator()(double t) const {
        double s = (t - t0_) / dt_;
        double fi = std::floor(s);
        std::size_t i = static_cast<std::size_t>(std::clamp(fi, 0.0, static_cast<double>(v_.size() - 2)));
        const double u = s - static_cast<double>(i);
        const double um = 1.0 - u;
        const double h2 = dt_ * dt_;
        return um * v_[i] + u * v_[i + 1] +
               (h2 / 6.0) * ((um * um * um - um) * m_[i] + (u * u * u - u) * m_[i + 1]);
    }

  private:
    double t0_ = 0.0, dt_ = 1.0;
    std::vector<double> v_, m_;
};

} // namespace qslt
