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

#include "tracerule/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "tracerule/rng.hpp"

namespace tracerule {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(op) + ": dimensions " + std::to_string(a.dim()) + " and " +
                        std::to_string(b.dim()) + " differ");
    }
}

double scale(const ComplexMatrix& a) { return std::max(1.0, a.max_abs()); }

// Rotates each column so its first largest-magnitude entry is real and >= 0.
void fix_phases(DenseMatrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double mag = std::abs(v(r, c));
            // Ties within rounding go to the earlier index.
            if (mag > best_abs * (1.0 + 1e-12)) {
                best_abs = mag;
                best = r;
            }
        }
        if (best_abs > 0.0) {
            const Complex phase = std::conj(v(best, c)) / best_abs;
            v.col(c) *= phase;
            v(best, c) = Complex(std::abs(v(best, c)), 0.0);
        }
    }
}

// QR of a Gaussian matrix; R's diagonal phases are absorbed so the result is
// Haar distributed rather than biased by the QR sign convention.
DenseMatrix haar_from_gaussian(const DenseMatrix& z) {
    Eigen::HouseholderQR<DenseMatrix> qr(z);
    DenseMatrix q = qr.householderQ();
    const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex d = r(i, i);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(i) *= d / mag;
    }
    return q;
}

}  // namespace

ComplexMatrix::ComplexMatrix(DenseMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix must be square with dimension >= 1, got " +
                        std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    if (!m_.allFinite()) {
        throw Error(ErrorKind::NonFinite, "matrix has a non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(from_rows(std::vector<std::vector<Complex>>(rows.begin(), rows.end()))) {}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    DenseMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(n));
        }
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(DenseMatrix::Zero(n, n));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(DenseMatrix::Identity(n, n));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    DenseMatrix m = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

double ComplexMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double ComplexMatrix::max_imag() const { return m_.imag().cwiseAbs().maxCoeff(); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "add");
    return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "subtract");
    return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.m_); }

ComplexMatrix adjoint(const ComplexMatrix& a) { return ComplexMatrix(a.dense().adjoint()); }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "mat_mul");
    return ComplexMatrix(a.dense() * b.dense());
}

Complex trace(const ComplexMatrix& a) { return a.dense().trace(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    return (a.dense() - b.dense()).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& a) {
    return (a.dense() - a.dense().adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    return ComplexMatrix(0.5 * (a.dense() + a.dense().adjoint()));
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
    if (!is_hermitian(a)) {
        throw Error(ErrorKind::NotHermitian,
                    "hermitian_eig: Hermiticity defect " + std::to_string(hermiticity_defect(a)));
    }
    // Symmetrize first: the solver only reads the lower triangle.
    const DenseMatrix h = 0.5 * (a.dense() + a.dense().adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalIntegrity, "hermitian_eig: eigensolver did not converge");
    }
    DenseMatrix v = solver.eigenvectors();
    fix_phases(v);
    const Eigen::VectorXd& w = solver.eigenvalues();
    return EigenDecomposition{std::vector<double>(w.data(), w.data() + w.size()),
                              ComplexMatrix(std::move(v))};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    const DenseMatrix h = 0.5 * (a.dense() + a.dense().adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalIntegrity, "eigensolver did not converge");
    }
    const Eigen::VectorXd& w = solver.eigenvalues();
    return {w.data(), w.data() + w.size()};
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    return hermiticity_defect(a) <= tol * scale(a);
}

bool is_projector(const ComplexMatrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    const double defect = (a.dense() * a.dense() - a.dense()).cwiseAbs().maxCoeff();
    return defect <= tol * scale(a);
}

bool is_density(const ComplexMatrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    if (std::abs(trace(a) - Complex(1.0, 0.0)) > tol) return false;
    const auto eigenvalues = hermitian_eigenvalues(a);
    return eigenvalues.front() >= -tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    const auto n = static_cast<Eigen::Index>(u.dim());
    const double defect =
        (u.dense().adjoint() * u.dense() - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    return defect <= tol;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "random_unitary: dim must be >= 1");
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(dim);
    DenseMatrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re, im);
        }
    }
    return ComplexMatrix(haar_from_gaussian(z));
}

ComplexMatrix random_orthogonal(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "random_orthogonal: dim must be >= 1");
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(dim);
    DenseMatrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(rng.normal(), 0.0);
    }
    DenseMatrix q = haar_from_gaussian(z);
    // Householder on real data stays real up to rounding; drop the dust.
    q = DenseMatrix(q.real().cast<Complex>());
    return ComplexMatrix(std::move(q));
}

}  // namespace tracerule
