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
#include <set>
#include <string>
#include <vector>

#include "tracerule/matcore.hpp"
#include "tracerule/quantum.hpp"

namespace tracerule {

/// Positive semidefinite Hermitian operator. Need not be idempotent or
/// bounded by the identity.
class PovOperator {
   public:
    explicit PovOperator(ComplexMatrix mat, RealityMode mode = RealityMode::Complex,
                         double tol = kDefaultTol);

    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }

   private:
    ComplexMatrix mat_;
};

/// Unnormalized measure tr(A rho); nonnegative, may exceed 1.
struct MeasureValue {
    double value = 0.0;
};

struct Atom {
    std::string label;
    PovOperator op;
};

using LabelSet = std::set<std::string>;

/// Finite algebra of perception sets generated by disjoint labelled atoms.
/// The operator of a set is the sum of its atoms' operators, so additivity
/// over disjoint unions holds by construction.
class PerceptionAlgebra {
   public:
    /// Needs at least one atom; labels unique; operator dimensions equal.
    explicit PerceptionAlgebra(std::vector<Atom> atoms);

    std::size_t dim() const noexcept { return atoms_.front().op.dim(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    LabelSet all_labels() const;
    /// Throws UnknownLabel.
    const PovOperator& atom(const std::string& label) const;

   private:
    std::vector<Atom> atoms_;
};

/// Sum of the atom operators in `s`; the zero operator for the empty set.
PovOperator union_operator(const PerceptionAlgebra& alg, const LabelSet& s);

MeasureValue measure_of(const PerceptionAlgebra& alg, const LabelSet& s,
                        const DensityMatrix& rho);

/// Measure of the whole algebra. Throws NonFinite on overflow.
MeasureValue total_measure(const PerceptionAlgebra& alg, const DensityMatrix& rho);

/// measure_of(s) / total_measure. Throws ZeroTotalMeasure when the total is
/// at most 1e-12.
double normalized_prob(const PerceptionAlgebra& alg, const LabelSet& s,
                       const DensityMatrix& rho);

/// measure_of(s_sub) / measure_of(m_sub) for s_sub within m_sub. Throws
/// NotSubset or ZeroConditionMeasure.
double conditional_prob(const PerceptionAlgebra& alg, const LabelSet& s_sub,
                        const LabelSet& m_sub, const DensityMatrix& rho);

}  // namespace tracerule
