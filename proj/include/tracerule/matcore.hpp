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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tracerule/error.hpp"

namespace tracerule {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Relative tolerance used by every operator-class predicate unless the
/// caller supplies its own. Scaled by max(1, ||a||_max).
inline constexpr double kDefaultTol = 1e-10;

/// Dense square complex matrix with finite entries and dimension >= 1.
///
/// Immutable once built; all arithmetic returns new values. Storage is an
/// Eigen matrix so callers that need heavy lifting can borrow `dense()`.
class ComplexMatrix {
   public:
    /// Wraps `m`. Throws DimensionMismatch if not square or empty, NonFinite
    /// on NaN/Inf entries.
    explicit ComplexMatrix(DenseMatrix m);

    /// Row-list construction, e.g. `{{1, 0}, {0, Complex(0, 1)}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);
    static ComplexMatrix zero(std::size_t dim);
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> diag);
    static ComplexMatrix diagonal(std::initializer_list<double> diag);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    Complex operator()(std::size_t row, std::size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    const DenseMatrix& dense() const noexcept { return m_; }

    /// Largest entry modulus.
    double max_abs() const;
    /// Largest imaginary-part modulus.
    double max_imag() const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.m_ == b.m_;
    }

   private:
    DenseMatrix m_;
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascend; each
/// eigenvector column has its first largest-magnitude component real and
/// nonnegative. Within a degenerate cluster the basis is arbitrary.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);

/// max_ij |a_ij - b_ij|. Throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - a^dagger||_max.
double hermiticity_defect(const ComplexMatrix& a);

/// Hermitian part (a + a^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Throws NotHermitian when the defect exceeds kDefaultTol relative.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues of the Hermitian part of `a`, ascending. No Hermiticity check.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol);
bool is_projector(const ComplexMatrix& a, double tol = kDefaultTol);
bool is_density(const ComplexMatrix& a, double tol = kDefaultTol);
/// ||u^dagger u - I||_max <= tol.
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q. Deterministic per seed.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// Real orthogonal analogue of random_unitary, for real-mode work.
ComplexMatrix random_orthogonal(std::size_t dim, std::uint64_t seed);

}  // namespace tracerule
