// Copyright 2026 The tracerule Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tracerule/matcore.hpp"

namespace tracerule {

/// Subset of n perception labels as a 0/1 characteristic vector.
class PerceptionSet {
   public:
    /// Throws InvalidArgument unless every entry is 0 or 1 and n >= 1.
    explicit PerceptionSet(std::vector<int> chi);

    /// Set holding the given 1-based members.
    static PerceptionSet from_members(std::size_t n, const std::vector<std::size_t>& members);
    static PerceptionSet all(std::size_t n);
    static PerceptionSet none(std::size_t n);

    std::size_t size() const noexcept { return chi_.size(); }
    const std::vector<int>& chi() const noexcept { return chi_; }
    bool contains(std::size_t index0) const { return chi_.at(index0) == 1; }

    friend bool operator==(const PerceptionSet&, const PerceptionSet&) = default;

   private:
    std::vector<int> chi_;
};

/// Probability weights over n states: nonnegative, summing to 1 within 1e-9.
class FractionVector {
   public:
    /// Rejects negative or non-finite weights and sums off by more than 1e-9.
    explicit FractionVector(std::vector<double> f);
    /// Divides by the sum. Weights must be nonnegative with a positive sum.
    static FractionVector normalize(std::vector<double> weights);

    std::size_t size() const noexcept { return f_.size(); }
    const std::vector<double>& values() const noexcept { return f_; }
    double operator[](std::size_t i) const { return f_.at(i); }

   private:
    std::vector<double> f_;
};

struct Dwell {
    std::size_t state;  // 1-based
    double duration;
};

/// Periodic deterministic trajectory: a schedule of (state, duration) dwells
/// repeated forever. Every one of the n states must be visited each period.
class ClassicalCycle {
   public:
    ClassicalCycle(std::size_t n, std::vector<Dwell> schedule);

    std::size_t states() const noexcept { return n_; }
    const std::vector<Dwell>& schedule() const noexcept { return schedule_; }
    double period() const noexcept { return period_; }

    /// 1-based state occupied at time t. Dwell intervals are half-open
    /// [start, end); t is reduced modulo the period first.
    std::size_t state_at(double t) const;

   private:
    std::size_t n_;
    std::vector<Dwell> schedule_;
    std::vector<double> ends_;  // cumulative dwell end times
    double period_;
};

PerceptionSet char_and(const PerceptionSet& s, const PerceptionSet& s2);
PerceptionSet char_or(const PerceptionSet& s, const PerceptionSet& s2);

/// chi . f
double classical_prob(const PerceptionSet& s, const FractionVector& f);

ComplexMatrix diag_projector(const PerceptionSet& s);
ComplexMatrix classical_density(const FractionVector& f);

/// R(t): a single 1 on the diagonal at the state occupied at time t.
ComplexMatrix indicator_matrix(const ClassicalCycle& c, double t);

/// Midpoint Riemann average of R(t) over one period with `steps` samples.
ComplexMatrix time_average_indicator(const ClassicalCycle& c, std::size_t steps);

FractionVector dwell_fractions(const ClassicalCycle& c);

}  // namespace tracerule
