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

// matrix2.hpp — exact 2x2 complex/Hermitian matrix algebra: traces, purities,
// eigenvalues, singular values, and the relative-purity functional.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qslt {

using complexd = std::complex<double>;

inline constexpr double kTraceTol = 1e-12;      // |d0 + d1 - 1| tolerance
inline constexpr double kPositivityTol = 1e-12; // det(rho) >= -tol

// General 2x2 complex matrix, value type.
struct Matrix2 {
    complexd a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
        return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
    }
    friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
        return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
    }
    friend Matrix2 operator*(complexd s, const Matrix2& m) {
        return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
    }
    friend Matrix2 operator*(double s, const Matrix2& m) {
        return complexd(s, 0.0) * m;
    }
    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }

    Matrix2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
    complexd trace() const { return a11 + a22; }
    complexd det() const { return a11 * a22 - a12 * a21; }
    double frobenius_sq() const {
        return std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22);
    }
    bool finite() const {
        auto ok = [](complexd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
        return ok(a11) && ok(a12) && ok(a21) && ok(a22);
    }

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 zero() { return {}; }
    static Matrix2 sigma0() { return identity(); }
    static Matrix2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
};

// Qubit density matrix: real diagonal (d0, d1), off-diagonal coherence c
// (the (0,1) entry; the (1,0) entry is conj(c)). Unit trace, positive.
struct QubitDensity {
    double d0{0.5};
    double d1{0.5};
    complexd c{0.0};

    Matrix2 to_matrix() const { return {d0, c, std::conj(c), d1}; }
};

// Validates the QubitDensity invariants and returns the state.
// Throws std::invalid_argument naming the violated constraint.
inline QubitDensity make_density(double d0, double d1, complexd c) {
    if (!std::isfinite(d0) || !std::isfinite(d1) ||
        !std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("make_density: entries must be finite");
    if (std::abs(d0 + d1 - 1.0) > kTraceTol)
        throw std::invalid_argument("make_density: trace must be 1 within 1e-12, got " +
                                    std::to_string(d0 + d1));
    if (d0 < 0.0 || d1 < 0.0)
        throw std::invalid_argument("make_density: diagonal entries must be nonnegative");
    if (d0 * d1 - std::norm(c) < -kPositivityTol)
        throw std::invalid_argument("make_density: positivity violated, det = " +
                                    std::to_string(d0 * d1 - std::norm(c)));
    return {d0, d1, c};
}

inline QubitDensity plus_state() { return {0.5, 0.5, 0.5}; }
inline QubitDensity minus_state() { return {0.5, 0.5, -0.5}; }
inline QubitDensity maximally_mixed() { return {0.5, 0.5, 0.0}; }

// tr(rho^2) = d0^2 + d1^2 + 2|c|^2, in [1/2, 1] for a qubit.
inline double purity(const QubitDensity& rho) {
    return rho.d0 * rho.d0 + rho.d1 * rho.d1 + 2.0 * std::norm(rho.c);
}

// tr(rho sigma) for two qubit densities (both Hermitian).
inline double overlap(const QubitDensity& rho, const QubitDensity& sigma) {
    return rho.d0 * sigma.d0 + rho.d1 * sigma.d1 +
           2.0 * (rho.c.real() * sigma.c.real() + rho.c.imag() * sigma.c.imag());
}

// Relative purity f = tr(rho_tau rho_later) / tr(rho_tau^2).
inline double relative_purity(const QubitDensity& rho_tau, const QubitDensity& rho_later) {
    return overlap(rho_tau, rho_later) / purity(rho_tau);
}

// Eigenvalues of a qubit density, descending. They sum to 1 and, the matrix
// being Hermitian PSD, coincide with its singular values.
inline std::pair<double, double> hermitian_eigenvalues(const QubitDensity& rho) {
    const double gap = rho.d0 - rho.d1;
    const double disc = std::sqrt(gap * gap + 4.0 * std::norm(rho.c));
    double lo = 0.5 * (1.0 - disc);
    double hi = 0.5 * (1.0 + disc);
    if (lo < 0.0 && lo > -kPositivityTol) lo = 0.0; // round-off guard
    return {hi, lo};
}

// Singular values of a general 2x2 complex matrix, descending.
// Closed form from the eigenvalues of m^dagger m:
//   t = ||m||_F^2, d = |det m|^2, lambda_{1,2} = (t +- sqrt(t^2 - 4d)) / 2.
inline std::pair<double, double> singular_values(const Matrix2& m) {
    if (!m.finite())
        throw std::invalid_argument("singular_values: entries must be finite");
    const double t = m.frobenius_sq();
    const double d = std::norm(m.det());
    const double disc = std::sqrt(std::max(t * t - 4.0 * d, 0.0));
    const double hi = 0.5 * (t + disc);
    const double lo = (hi > 0.0) ? d / hi : 0.0; // lambda1*lambda2 = d, cancellation-free
    return {std::sqrt(hi), std::sqrt(lo)};
}

} // namespace qslt
