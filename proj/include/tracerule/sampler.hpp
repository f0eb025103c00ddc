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
#include <string>
#include <vector>

#include "tracerule/classical.hpp"
#include "tracerule/quantum.hpp"

namespace tracerule {

/// Tally of a seeded Monte Carlo run against its predicted probabilities.
struct SampleReport {
    std::vector<std::string> outcome_labels;
    std::vector<std::uint64_t> outcome_counts;
    std::uint64_t total = 0;
    std::vector<double> empirical_freqs;
    std::vector<double> expected_probs;
    double max_abs_deviation = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

inline constexpr double kDefaultSigmaMultiplier = 5.0;

/// Draws n_samples times uniformly over one period and records the occupied
/// state. Outcomes are the states 1..n.
SampleReport sample_classical(const ClassicalCycle& c, std::uint64_t n_samples,
                              std::uint64_t seed);

/// Draws outcome k with probability tr(P_k rho) by inverse CDF. The
/// projectors must sum to I and be mutually orthogonal (both to 1e-9),
/// otherwise NotAPartition. Labels default to "1".."m" when empty.
SampleReport sample_measurement(const std::vector<Projector>& partition, const DensityMatrix& rho,
                                std::uint64_t n_samples, std::uint64_t seed,
                                std::vector<std::string> labels = {});

/// Every outcome within sigma_multiplier * sqrt(p(1-p)/N) + 1/N of p.
bool deviation_check(const SampleReport& report,
                     double sigma_multiplier = kDefaultSigmaMultiplier);

}  // namespace tracerule
