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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "test_support.hpp"
#include "tracerule/matcore.hpp"

using namespace tracerule;
using namespace tracerule::testing;

namespace {

const Complex I1(0.0, 1.0);

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("ComplexMatrix rejects malformed input") {
    CHECK(kind_of([] { ComplexMatrix(DenseMatrix(2, 3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { ComplexMatrix(DenseMatrix(0, 0)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] {
              ComplexMatrix{{1.0, std::numeric_limits<double>::quiet_NaN()}, {0.0, 1.0}};
          }) == ErrorKind::NonFinite);
    CHECK(kind_of([] { ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("adjoint") {
    CHECK(adjoint(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));

    const ComplexMatrix a{{0.0, I1}, {0.0, 0.0}};
    const ComplexMatrix expected{{0.0, 0.0}, {-I1, 0.0}};
    CHECK(adjoint(a) == expected);

    SUBCASE("involution on random matrices") {
        Rng rng(11);
        for (int k = 0; k < 50; ++k) {
            const ComplexMatrix m = random_matrix(5, rng);
            CHECK(adjoint(adjoint(m)) == m);
        }
    }
}

TEST_CASE("mat_mul") {
    Rng rng(3);
    const ComplexMatrix a = random_matrix(4, rng);
    CHECK(max_abs_diff(mat_mul(a, ComplexMatrix::identity(4)), a) == 0.0);
    CHECK(mat_mul(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})) ==
          ComplexMatrix::zero(2));

    SUBCASE("matches the triple-loop product") {
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix x = random_matrix(4, rng);
            const ComplexMatrix y = random_matrix(4, rng);
            CHECK(max_diff(mat_mul(x, y), naive_product(x, y)) <= 1e-12);
        }
    }

    CHECK(kind_of([] { mat_mul(ComplexMatrix::identity(2), ComplexMatrix::identity(3)); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("trace") {
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(trace(ComplexMatrix::identity(n)) == Complex(static_cast<double>(n), 0.0));
    }
    CHECK(std::abs(trace(ComplexMatrix::diagonal({0.5, 0.3, 0.2})) - 1.0) <= 1e-15);

    SUBCASE("cyclicity") {
        Rng rng(5);
        for (std::size_t n : {5u, 8u}) {
            for (int k = 0; k < 50; ++k) {
                const ComplexMatrix a = random_matrix(n, rng);
                const ComplexMatrix b = random_matrix(n, rng);
                CHECK(std::abs(trace(mat_mul(a, b)) - trace(mat_mul(b, a))) <= 1e-12);
            }
        }
    }
}

TEST_CASE("hermitian_eig known spectra") {
    const auto d = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
    CHECK(d.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});

    const auto x = hermitian_eig(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    REQUIRE(x.eigenvalues.size() == 2);
    CHECK(x.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(kind_of([] { hermitian_eig(ComplexMatrix{{0.0, I1}, {I1, 0.0}}); }) ==
          ErrorKind::NotHermitian);
}

TEST_CASE("hermitian_eig reconstruction, unitarity and phase convention") {
    Rng rng(17);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int k = 0; k < 100; ++k) {
            const ComplexMatrix a = random_hermitian(n, rng, k % 4 == 0);
            const EigenDecomposition e = hermitian_eig(a);
            const DenseMatrix& v = e.eigenvectors.dense();

            std::vector<double> lambda = e.eigenvalues;
            CHECK(std::is_sorted(lambda.begin(), lambda.end()));

            // V Lambda V^dagger rebuilt entry by entry.
            double recon = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    Complex acc(0.0, 0.0);
                    for (std::size_t m = 0; m < n; ++m) {
                        acc += e.eigenvectors(i, m) * lambda[m] * std::conj(e.eigenvectors(j, m));
                    }
                    recon = std::max(recon, std::abs(acc - a(i, j)));
                }
            }
            CHECK(recon <= 1e-9 * std::max(1.0, a.max_abs()));
            CHECK(is_unitary(e.eigenvectors, 1e-9));

            for (Eigen::Index c = 0; c < v.cols(); ++c) {
                Eigen::Index best = 0;
                v.col(c).cwiseAbs().maxCoeff(&best);
                // The selected component may differ from the true max only by
                // rounding-level ties; it must be real and nonnegative.
                const double mag = std::abs(v(best, c));
                Eigen::Index pick = 0;
                for (Eigen::Index r = 0; r < v.rows(); ++r) {
                    if (std::abs(v(r, c)) >= mag * (1.0 - 1e-12)) {
                        pick = r;
                        break;
                    }
                }
                CHECK(v(pick, c).imag() == 0.0);
                CHECK(v(pick, c).real() >= 0.0);
            }
        }
    }
}

TEST_CASE("is_hermitian") {
    CHECK(is_hermitian(ComplexMatrix::identity(3)));
    CHECK_FALSE(is_hermitian(ComplexMatrix{{0.0, I1}, {I1, 0.0}}));
    CHECK(is_hermitian(ComplexMatrix{{1.0, Complex(1, 1)}, {Complex(1, -1), 2.0}}));
    CHECK(kind_of([] { is_hermitian(ComplexMatrix::identity(2), 0.0); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("is_projector") {
    CHECK(is_projector(ComplexMatrix::diagonal({1.0, 0.0, 1.0})));
    const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(is_projector(plus));

    // Product of two non-commuting projectors, formed by the triple loop.
    const auto prod = naive_product(ComplexMatrix::diagonal({1.0, 0.0}), plus);
    const ComplexMatrix half_row = ComplexMatrix::from_rows(prod);
    CHECK(half_row == ComplexMatrix{{0.5, 0.5}, {0.0, 0.0}});
    CHECK_FALSE(is_projector(half_row));
}

TEST_CASE("is_density") {
    CHECK(is_density(ComplexMatrix::diagonal({0.5, 0.5})));
    CHECK_FALSE(is_density(ComplexMatrix::diagonal({1.5, -0.5})));
    CHECK(is_density(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}));
    CHECK_FALSE(is_density(ComplexMatrix::diagonal({0.5, 0.4})));
}

TEST_CASE("random_unitary") {
    SUBCASE("dim 1 is a phase") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ComplexMatrix u = random_unitary(1, seed);
            CHECK(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-12);
        }
    }
    SUBCASE("deterministic per seed") {
        CHECK(random_unitary(5, 42) == random_unitary(5, 42));
        CHECK_FALSE(random_unitary(5, 42) == random_unitary(5, 43));
    }
    SUBCASE("unitary at dim 8") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const ComplexMatrix u = random_unitary(8, seed);
            const auto prod = naive_product(adjoint(u), u);
            CHECK(max_diff(ComplexMatrix::identity(8), prod) <= 1e-9);
        }
    }
    SUBCASE("orthogonal variant is real") {
        const ComplexMatrix q = random_orthogonal(6, 9);
        CHECK(q.max_imag() == 0.0);
        CHECK(is_unitary(q, 1e-9));
    }
    CHECK(kind_of([] { random_unitary(0, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("conjugation preserves projectors") {
    Rng rng(23);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = uniform_int(rng, 2, 8);
        const std::vector<int> chi = random_chi(n, rng);
        const ComplexMatrix p = ComplexMatrix::diagonal(std::vector<double>(chi.begin(), chi.end()));
        const ComplexMatrix u = random_unitary(n, rng.next_u64());
        const ComplexMatrix upu = mat_mul(mat_mul(u, p), adjoint(u));
        CHECK(is_projector(upu));
    }
}
