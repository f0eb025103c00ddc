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

#include "tracerule/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "tracerule/rng.hpp"

namespace tracerule {

namespace {

constexpr double kPartitionTol = 1e-9;
constexpr double kWeightSumTol = 1e-9;

void finish(SampleReport& r) {
    const auto n = static_cast<double>(r.total);
    r.empirical_freqs.resize(r.outcome_counts.size());
    r.max_abs_deviation = 0.0;
    for (std::size_t k = 0; k < r.outcome_counts.size(); ++k) {
        r.empirical_freqs[k] = static_cast<double>(r.outcome_counts[k]) / n;
        r.max_abs_deviation =
            std::max(r.max_abs_deviation, std::abs(r.empirical_freqs[k] - r.expected_probs[k]));
    }
}

void validate_partition(const std::vector<Projector>& partition, const DensityMatrix& rho) {
    if (partition.empty()) throw Error(ErrorKind::NotAPartition, "partition is empty");
    const auto n = static_cast<Eigen::Index>(rho.dim());
    DenseMatrix sum = DenseMatrix::Zero(n, n);
    for (const Projector& p : partition) {
        if (p.dim() != rho.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "partition and state dimensions differ");
        }
        sum += p.mat().dense();
    }
    if ((sum - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kPartitionTol) {
        throw Error(ErrorKind::NotAPartition, "projectors do not sum to the identity");
    }
    for (std::size_t a = 0; a < partition.size(); ++a) {
        for (std::size_t b = a + 1; b < partition.size(); ++b) {
            const DenseMatrix prod = partition[a].mat().dense() * partition[b].mat().dense();
            if (prod.cwiseAbs().maxCoeff() > kPartitionTol) {
                throw Error(ErrorKind::NotAPartition,
                            "projectors " + std::to_string(a + 1) + " and " +
                                std::to_string(b + 1) + " overlap");
            }
        }
    }
}

}  // namespace

SampleReport sample_classical(const ClassicalCycle& c, std::uint64_t n_samples,
                              std::uint64_t seed) {
    if (n_samples == 0) throw Error(ErrorKind::InvalidArgument, "n_samples must be >= 1");
    SampleReport r;
    r.seed = seed;
    r.total = n_samples;
    r.expected_probs = dwell_fractions(c).values();
    r.outcome_counts.assign(c.states(), 0);
    for (std::size_t i = 1; i <= c.states(); ++i) r.outcome_labels.push_back(std::to_string(i));

    Rng rng(seed);
    const double period = c.period();
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        ++r.outcome_counts[c.state_at(rng.uniform() * period) - 1];
    }
    finish(r);
    return r;
}

SampleReport sample_measurement(const std::vector<Projector>& partition, const DensityMatrix& rho,
                                std::uint64_t n_samples, std::uint64_t seed,
                                std::vector<std::string> labels) {
    if (n_samples == 0) throw Error(ErrorKind::InvalidArgument, "n_samples must be >= 1");
    validate_partition(partition, rho);
    if (labels.empty()) {
        for (std::size_t k = 1; k <= partition.size(); ++k) labels.push_back(std::to_string(k));
    } else if (labels.size() != partition.size()) {
        throw Error(ErrorKind::InvalidArgument, "one label per projector required");
    }

    std::vector<double> weights;
    weights.reserve(partition.size());
    double sum = 0.0;
    for (const Projector& p : partition) {
        weights.push_back(std::max(0.0, trace_prob(p, rho)));
        sum += weights.back();
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw Error(ErrorKind::NumericalIntegrity,
                    "outcome probabilities sum to " + std::to_string(sum));
    }
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        weights[k] /= sum;
        acc += weights[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0;

    SampleReport r;
    r.seed = seed;
    r.total = n_samples;
    r.outcome_labels = std::move(labels);
    r.expected_probs = weights;
    r.outcome_counts.assign(partition.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        ++r.outcome_counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    finish(r);
    return r;
}

bool deviation_check(const SampleReport& report, double sigma_multiplier) {
    if (!(sigma_multiplier > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "sigma multiplier must be positive");
    }
    if (report.total == 0) return false;
    const auto n = static_cast<double>(report.total);
    for (std::size_t k = 0; k < report.expected_probs.size(); ++k) {
        const double p = report.expected_probs[k];
        const double bound = sigma_multiplier * std::sqrt(p * (1.0 - p) / n) + 1.0 / n;
        if (std::abs(report.empirical_freqs[k] - p) > bound) return false;
    }
    return true;
}

}  // namespace tracerule
