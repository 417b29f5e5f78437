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

// filtering.hpp — the local filtering operation F(k) = diag(sqrt(1-k),
// sqrt(k)): application with renormalization, success probability, and the
// filtered trajectory handed to the QSL engine.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qslt/channels.hpp"
#include "qslt/matrix2.hpp"

namespace qslt {

// Filtering parameter k in (0, 1). k = 1/2 makes F proportional to the
// identity (no filtering).
struct FilterOp {
    double k = 0.5;
};

inline FilterOp make_filter(double k) {
    if (!(k > 0.0 && k < 1.0))
        throw std::invalid_argument("FilterOp: k must lie strictly in (0, 1), got " +
                                    std::to_string(k));
    return {k};
}

// tr(F rho F^dag) = (1-k) d0 + k d1, the probability the filter succeeds.
inline double success_probability(const QubitDensity& rho, const FilterOp& f) {
    return (1.0 - f.k) * rho.d0 + f.k * rho.d1;
}

// F rho F^dag / tr(F rho F^dag). The filter is diagonal, so the output
// diagonal is ((1-k) d0, k d1) rescaled and the coherence picks up
// sqrt(k(1-k)) before rescaling.
inline QubitDensity apply_filter(const QubitDensity& rho, const FilterOp& f) {
    const double norm = success_probability(rho, f);
    if (!(norm > 0.0))
        throw std::domain_error("apply_filter: vanishing normalization (degenerate filter)");
    const double root = std::sqrt(f.k * (1.0 - f.k));
    return {(1.0 - f.k) * rho.d0 / norm, f.k * rho.d1 / norm, root * rho.c / norm};
}

// The filtered trajectory t -> apply_filter(evolve(|+><+|, t), f).
// For the dephasing channels this normalizes to diagonal (1-k, k) with
// coherence sqrt(k(1-k)) q(t); the time derivative lives entirely in the
// off-diagonal entries.
class FilteredTrajectory {
  public:
    FilteredTrajectory(DephasingChannel channel, FilterOp filter)
        : channel_(std::move(channel)), filter_(filter),
          root_(std::sqrt(filter.k * (1.0 - filter.k))) {}

    const DephasingChannel& channel() const { return channel_; }
    const FilterOp& filter() const { return filter_; }

    QubitDensity state(double t) const {
        return apply_filter(evolve(channel_, plus_state(), t), filter_);
    }

    Matrix2 state_dot(double t) const {
        const double cdot = root_ * channel_.q_dot(t);
        return {0.0, cdot, cdot, 0.0};
    }

  private:
    DephasingChannel channel_;
    FilterOp filter_;
    double root_;
};

} // namespace qslt
