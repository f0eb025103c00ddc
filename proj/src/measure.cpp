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

#include "tracerule/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tracerule {

namespace {

constexpr double kNegativeSlack = 1e-10;
constexpr double kZeroMeasure = 1e-12;
constexpr double kProbSlack = 1e-9;

double raw_measure(const ComplexMatrix& a, const DensityMatrix& rho) {
    if (a.dim() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "measure: operator dimension " + std::to_string(a.dim()) +
                        " differs from state dimension " + std::to_string(rho.dim()));
    }
    const Complex t = (a.dense().array() * rho.mat().dense().transpose().array()).sum();
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
        throw Error(ErrorKind::NonFinite, "measure is not finite");
    }
    if (t.real() < -kNegativeSlack) {
        throw Error(ErrorKind::NumericalIntegrity,
                    "measure tr(A rho) = " + std::to_string(t.real()) + " is negative");
    }
    return std::max(t.real(), 0.0);
}

}  // namespace

PovOperator::PovOperator(ComplexMatrix mat, RealityMode mode, double tol)
    : mat_(enforce_reality(mode, mat)) {
    if (!is_hermitian(mat_, tol)) {
        throw Error(ErrorKind::NotHermitian, "POV operator is not Hermitian");
    }
    const double floor = -tol * std::max(1.0, mat_.max_abs());
    if (hermitian_eigenvalues(mat_).front() < floor) {
        throw Error(ErrorKind::NotPositive, "POV operator has a negative eigenvalue");
    }
}

PerceptionAlgebra::PerceptionAlgebra(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw Error(ErrorKind::InvalidArgument, "algebra needs at least one atom");
    LabelSet seen;
    for (const Atom& a : atoms_) {
        if (!seen.insert(a.label).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate atom label '" + a.label + "'");
        }
        if (a.op.dim() != atoms_.front().op.dim()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "atom '" + a.label + "' has a different operator dimension");
        }
    }
}

LabelSet PerceptionAlgebra::all_labels() const {
    LabelSet labels;
    for (const Atom& a : atoms_) labels.insert(a.label);
    return labels;
}

const PovOperator& PerceptionAlgebra::atom(const std::string& label) const {
    auto it = std::find_if(atoms_.begin(), atoms_.end(),
                           [&](const Atom& a) { return a.label == label; });
    if (it == atoms_.end()) throw Error(ErrorKind::UnknownLabel, "unknown atom '" + label + "'");
    return it->op;
}

PovOperator union_operator(const PerceptionAlgebra& alg, const LabelSet& s) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    DenseMatrix sum = DenseMatrix::Zero(n, n);
    for (const std::string& label : s) sum += alg.atom(label).mat().dense();
    return PovOperator(ComplexMatrix(std::move(sum)));
}

MeasureValue measure_of(const PerceptionAlgebra& alg, const LabelSet& s,
                        const DensityMatrix& rho) {
    return {raw_measure(union_operator(alg, s).mat(), rho)};
}

MeasureValue total_measure(const PerceptionAlgebra& alg, const DensityMatrix& rho) {
    return measure_of(alg, alg.all_labels(), rho);
}

double normalized_prob(const PerceptionAlgebra& alg, const LabelSet& s,
                       const DensityMatrix& rho) {
    const double total = total_measure(alg, rho).value;
    if (total <= kZeroMeasure) {
        throw Error(ErrorKind::ZeroTotalMeasure, "total measure is zero; cannot normalize");
    }
    const double p = measure_of(alg, s, rho).value / total;
    if (p > 1.0 + kProbSlack) {
        throw Error(ErrorKind::NumericalIntegrity,
                    "normalized probability " + std::to_string(p) + " exceeds 1");
    }
    return std::min(p, 1.0);
}

double conditional_prob(const PerceptionAlgebra& alg, const LabelSet& s_sub,
                        const LabelSet& m_sub, const DensityMatrix& rho) {
    if (!std::includes(m_sub.begin(), m_sub.end(), s_sub.begin(), s_sub.end())) {
        throw Error(ErrorKind::NotSubset, "conditioned set is not contained in the condition");
    }
    const double condition = measure_of(alg, m_sub, rho).value;
    if (condition <= kZeroMeasure) {
        throw Error(ErrorKind::ZeroConditionMeasure, "condition has zero measure");
    }
    const double p = measure_of(alg, s_sub, rho).value / condition;
    if (p > 1.0 + kProbSlack) {
        throw Error(ErrorKind::NumericalIntegrity,
                    "conditional probability " + std::to_string(p) + " exceeds 1");
    }
    return std::min(p, 1.0);
}

}  // namespace tracerule
