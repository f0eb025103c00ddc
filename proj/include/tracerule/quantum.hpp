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

#include "tracerule/matcore.hpp"

namespace tracerule {

/// COMPLEX admits any Hermitian operator; REAL restricts constructed
/// projectors and states to real symmetric matrices.
enum class RealityMode { Complex, Real };

/// Largest imaginary part tolerated in REAL mode.
inline constexpr double kRealTol = 1e-12;

/// Returns `a` unchanged, or throws NotReal in REAL mode when any
/// |Im a_ij| exceeds kRealTol.
ComplexMatrix enforce_reality(RealityMode mode, const ComplexMatrix& a);

/// Hermitian idempotent operator, validated once at construction.
class Projector {
   public:
    explicit Projector(ComplexMatrix mat, RealityMode mode = RealityMode::Complex,
                       double tol = kDefaultTol);

    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }

   private:
    ComplexMatrix mat_;
};

/// Positive semidefinite Hermitian unit-trace operator, validated once at
/// construction.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix mat, RealityMode mode = RealityMode::Complex,
                           double tol = kDefaultTol);

    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }

    /// tr(rho^2).
    double purity() const;
    /// Diagnostic only: purity within 1e-9 of 1.
    bool is_pure() const;

   private:
    ComplexMatrix mat_;
};

/// Re tr(p rho), clamped to [0, 1]. Throws NumericalIntegrity if the raw
/// value leaves [-1e-9, 1 + 1e-9] or carries an imaginary part above 1e-9.
double trace_prob(const Projector& p, const DensityMatrix& rho);

/// u a u^dagger. Throws NotUnitary unless ||u^dagger u - I||_max <= 1e-9.
ComplexMatrix unitary_conjugate(const ComplexMatrix& u, const ComplexMatrix& a);

/// |tr(p rho) - tr(u p u^dagger u rho u^dagger)|.
double check_invariance(const Projector& p, const DensityMatrix& rho, const ComplexMatrix& u);

/// ||ab - ba||_max <= tol * max(1, ||a||_max ||b||_max).
bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);

/// The product p q, which is again a projector exactly when p and q commute.
/// Throws NonCommuting otherwise.
Projector projector_meet(const Projector& p, const Projector& q);

}  // namespace tracerule
