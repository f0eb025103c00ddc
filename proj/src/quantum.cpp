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

#include "tracerule/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tracerule {

namespace {

constexpr double kProbSlack = 1e-9;
constexpr double kUnitaryTol = 1e-9;

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": dimensions " +
                                                      std::to_string(a) + " and " +
                                                      std::to_string(b) + " differ");
    }
}

// sum_ij a_ij b_ji without forming the product.
Complex trace_of_product(const DenseMatrix& a, const DenseMatrix& b) {
    return (a.array() * b.transpose().array()).sum();
}

// Unclamped Re tr(a b) after the integrity checks shared by trace_prob and
// check_invariance.
double checked_trace(const DenseMatrix& a, const DenseMatrix& b) {
    const Complex t = trace_of_product(a, b);
    if (std::abs(t.imag()) > kProbSlack || t.real() < -kProbSlack ||
        t.real() > 1.0 + kProbSlack) {
        throw Error(ErrorKind::NumericalIntegrity,
                    "trace_prob: tr(P rho) = (" + std::to_string(t.real()) + ", " +
                        std::to_string(t.imag()) + ") is not a probability");
    }
    return t.real();
}

}  // namespace

ComplexMatrix enforce_reality(RealityMode mode, const ComplexMatrix& a) {
    if (mode == RealityMode::Real && a.max_imag() > kRealTol) {
        throw Error(ErrorKind::NotReal, "REAL mode: matrix has imaginary part " +
                                            std::to_string(a.max_imag()));
    }
    return a;
}

Projector::Projector(ComplexMatrix mat, RealityMode mode, double tol)
    : mat_(enforce_reality(mode, mat)) {
    if (!is_projector(mat_, tol)) {
        throw Error(ErrorKind::NotProjector, "matrix is not a Hermitian idempotent");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, RealityMode mode, double tol)
    : mat_(enforce_reality(mode, mat)) {
    if (!is_density(mat_, tol)) {
        throw Error(ErrorKind::NotDensity,
                    "matrix is not a positive semidefinite Hermitian unit-trace operator");
    }
}

double DensityMatrix::purity() const {
    return trace_of_product(mat_.dense(), mat_.dense()).real();
}

bool DensityMatrix::is_pure() const { return std::abs(purity() - 1.0) <= 1e-9; }

double trace_prob(const Projector& p, const DensityMatrix& rho) {
    require_same_dim(p.dim(), rho.dim(), "trace_prob");
    return std::clamp(checked_trace(p.mat().dense(), rho.mat().dense()), 0.0, 1.0);
}

ComplexMatrix unitary_conjugate(const ComplexMatrix& u, const ComplexMatrix& a) {
    require_same_dim(u.dim(), a.dim(), "unitary_conjugate");
    if (!is_unitary(u, kUnitaryTol)) {
        throw Error(ErrorKind::NotUnitary, "unitary_conjugate: u is not unitary");
    }
    return ComplexMatrix(u.dense() * a.dense() * u.dense().adjoint());
}

double check_invariance(const Projector& p, const DensityMatrix& rho, const ComplexMatrix& u) {
    require_same_dim(p.dim(), rho.dim(), "check_invariance");
    const ComplexMatrix p_t = unitary_conjugate(u, p.mat());
    const ComplexMatrix rho_t = unitary_conjugate(u, rho.mat());
    const double direct = checked_trace(p.mat().dense(), rho.mat().dense());
    const double rotated = checked_trace(p_t.dense(), rho_t.dense());
    return std::abs(direct - rotated);
}

bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    require_same_dim(a.dim(), b.dim(), "commutes");
    const double defect =
        (a.dense() * b.dense() - b.dense() * a.dense()).cwiseAbs().maxCoeff();
    return defect <= tol * std::max(1.0, a.max_abs() * b.max_abs());
}

Projector projector_meet(const Projector& p, const Projector& q) {
    require_same_dim(p.dim(), q.dim(), "projector_meet");
    if (!commutes(p.mat(), q.mat(), kDefaultTol)) {
        throw Error(ErrorKind::NonCommuting,
                    "projector_meet: projectors do not commute, so their product is not a "
                    "projector");
    }
    // The product of commuting projectors is Hermitian only up to rounding.
    return Projector(hermitian_part(mat_mul(p.mat(), q.mat())));
}

}  // namespace tracerule
