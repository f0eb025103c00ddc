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

#include "tracerule/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tracerule {

namespace {

constexpr double kSumTolerance = 1e-9;

void require_same_size(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": sizes " +
                                                      std::to_string(a) + " and " +
                                                      std::to_string(b) + " differ");
    }
}

}  // namespace

PerceptionSet::PerceptionSet(std::vector<int> chi) : chi_(std::move(chi)) {
    if (chi_.empty()) throw Error(ErrorKind::InvalidArgument, "perception set needs n >= 1");
    for (int v : chi_) {
        if (v != 0 && v != 1) {
            throw Error(ErrorKind::InvalidArgument,
                        "characteristic vector entries must be 0 or 1, got " + std::to_string(v));
        }
    }
}

PerceptionSet PerceptionSet::from_members(std::size_t n, const std::vector<std::size_t>& members) {
    std::vector<int> chi(n, 0);
    for (std::size_t m : members) {
        if (m < 1 || m > n) {
            throw Error(ErrorKind::InvalidArgument,
                        "member " + std::to_string(m) + " outside 1.." + std::to_string(n));
        }
        chi[m - 1] = 1;
    }
    return PerceptionSet(std::move(chi));
}

PerceptionSet PerceptionSet::all(std::size_t n) { return PerceptionSet(std::vector<int>(n, 1)); }

PerceptionSet PerceptionSet::none(std::size_t n) { return PerceptionSet(std::vector<int>(n, 0)); }

FractionVector::FractionVector(std::vector<double> f) : f_(std::move(f)) {
    if (f_.empty()) throw Error(ErrorKind::InvalidArgument, "fraction vector needs n >= 1");
    double sum = 0.0;
    for (double v : f_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "fraction is not finite");
        if (v < 0.0) {
            throw Error(ErrorKind::InvalidArgument,
                        "fraction must be nonnegative, got " + std::to_string(v));
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw Error(ErrorKind::InvalidArgument,
                    "fractions sum to " + std::to_string(sum) + ", expected 1");
    }
}

FractionVector FractionVector::normalize(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "weights must be finite and nonnegative");
        }
        sum += w;
    }
    if (!(sum > 0.0)) throw Error(ErrorKind::InvalidArgument, "weights sum to zero");
    for (double& w : weights) w /= sum;
    return FractionVector(std::move(weights));
}

ClassicalCycle::ClassicalCycle(std::size_t n, std::vector<Dwell> schedule)
    : n_(n), schedule_(std::move(schedule)), period_(0.0) {
    if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "cycle needs n >= 1");
    if (schedule_.empty()) throw Error(ErrorKind::InvalidArgument, "cycle schedule is empty");
    std::vector<bool> seen(n_, false);
    ends_.reserve(schedule_.size());
    for (const Dwell& d : schedule_) {
        if (d.state < 1 || d.state > n_) {
            throw Error(ErrorKind::InvalidArgument,
                        "schedule state " + std::to_string(d.state) + " outside 1.." +
                            std::to_string(n_));
        }
        if (!std::isfinite(d.duration) || d.duration <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "dwell durations must be finite and > 0");
        }
        seen[d.state - 1] = true;
        period_ += d.duration;
        ends_.push_back(period_);
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (!seen[i]) {
            throw Error(ErrorKind::InvalidArgument,
                        "state " + std::to_string(i + 1) + " never occurs in the schedule");
        }
    }
    if (!std::isfinite(period_)) throw Error(ErrorKind::NonFinite, "cycle period overflows");
}

std::size_t ClassicalCycle::state_at(double t) const {
    if (!std::isfinite(t)) throw Error(ErrorKind::NonFinite, "time is not finite");
    double r = std::fmod(t, period_);
    if (r < 0.0) r += period_;
    // upper_bound: a time equal to a dwell end belongs to the next dwell.
    auto it = std::upper_bound(ends_.begin(), ends_.end(), r);
    if (it == ends_.end()) --it;  // r rounded up to the period
    return schedule_[static_cast<std::size_t>(it - ends_.begin())].state;
}

PerceptionSet char_and(const PerceptionSet& s, const PerceptionSet& s2) {
    require_same_size(s.size(), s2.size(), "char_and");
    std::vector<int> chi(s.size());
    for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = s.chi()[i] * s2.chi()[i];
    return PerceptionSet(std::move(chi));
}

PerceptionSet char_or(const PerceptionSet& s, const PerceptionSet& s2) {
    require_same_size(s.size(), s2.size(), "char_or");
    std::vector<int> chi(s.size());
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const int a = s.chi()[i];
        const int b = s2.chi()[i];
        chi[i] = a + b - a * b;
    }
    return PerceptionSet(std::move(chi));
}

double classical_prob(const PerceptionSet& s, const FractionVector& f) {
    require_same_size(s.size(), f.size(), "classical_prob");
    double p = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.chi()[i] == 1) p += f.values()[i];
    }
    return std::clamp(p, 0.0, 1.0);
}

ComplexMatrix diag_projector(const PerceptionSet& s) {
    std::vector<double> d(s.chi().begin(), s.chi().end());
    return ComplexMatrix::diagonal(d);
}

ComplexMatrix classical_density(const FractionVector& f) { return ComplexMatrix::diagonal(f.values()); }

ComplexMatrix indicator_matrix(const ClassicalCycle& c, double t) {
    std::vector<double> d(c.states(), 0.0);
    d[c.state_at(t) - 1] = 1.0;
    return ComplexMatrix::diagonal(d);
}

ComplexMatrix time_average_indicator(const ClassicalCycle& c, std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
    std::vector<std::size_t> counts(c.states(), 0);
    const double dt = c.period() / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        ++counts[c.state_at((static_cast<double>(k) + 0.5) * dt) - 1];
    }
    std::vector<double> d(c.states());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = static_cast<double>(counts[i]) / static_cast<double>(steps);
    }
    return ComplexMatrix::diagonal(d);
}

FractionVector dwell_fractions(const ClassicalCycle& c) {
    std::vector<double> total(c.states(), 0.0);
    for (const Dwell& d : c.schedule()) total[d.state - 1] += d.duration;
    for (double& v : total) v /= c.period();
    return FractionVector(std::move(total));
}

}  // namespace tracerule
