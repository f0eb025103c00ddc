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

#include "tracerule/superselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tracerule {

namespace {

constexpr double kComplianceTol = 1e-9;

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": dimensions " +
                                                      std::to_string(a) + " and " +
                                                      std::to_string(b) + " differ");
    }
}

}  // namespace

Hamiltonian::Hamiltonian(ComplexMatrix mat) : mat_(std::move(mat)), eig_(hermitian_eig(mat_)) {}

double Hamiltonian::default_cluster_tol() const {
    const auto& e = eig_.eigenvalues;
    const double largest = std::max(std::abs(e.front()), std::abs(e.back()));
    return 1e-8 * std::max(1.0, largest);
}

ComplexMatrix evolution_operator(const Hamiltonian& h, double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::NonFinite, "evolution time is not finite");
    const DenseMatrix& v = h.eig().eigenvectors.dense();
    const auto& e = h.energies();
    Eigen::VectorXcd phases(static_cast<Eigen::Index>(e.size()));
    for (std::size_t j = 0; j < e.size(); ++j) {
        phases(static_cast<Eigen::Index>(j)) = std::polar(1.0, -e[j] * t);
    }
    return ComplexMatrix(v * phases.asDiagonal() * v.adjoint());
}

DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t) {
    require_same_dim(rho.dim(), h.dim(), "evolve");
    const DenseMatrix u = evolution_operator(h, t).dense();
    const ComplexMatrix out(u * rho.mat().dense() * u.adjoint());
    return DensityMatrix(hermitian_part(out));
}

EnergyBlocks energy_blocks(const Hamiltonian& h, double cluster_tol) {
    if (!(cluster_tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cluster tolerance must be positive");
    }
    const auto& e = h.energies();
    EnergyBlocks blocks;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (j == 0 || e[j] - e[j - 1] > cluster_tol) blocks.clusters.emplace_back();
        blocks.clusters.back().push_back(j);
    }
    const DenseMatrix& v = h.eig().eigenvectors.dense();
    const auto n = static_cast<Eigen::Index>(h.dim());
    for (const auto& cluster : blocks.clusters) {
        DenseMatrix pi = DenseMatrix::Zero(n, n);
        double mean = 0.0;
        for (std::size_t j : cluster) {
            const auto col = v.col(static_cast<Eigen::Index>(j));
            pi += col * col.adjoint();
            mean += e[j];
        }
        blocks.energies.push_back(mean / static_cast<double>(cluster.size()));
        blocks.projectors.emplace_back(std::move(pi));
    }
    return blocks;
}

EnergyBlocks energy_blocks(const Hamiltonian& h) {
    return energy_blocks(h, h.default_cluster_tol());
}

double min_energy_gap(const EnergyBlocks& blocks) {
    if (blocks.energies.size() < 2) return 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < blocks.energies.size(); ++k) {
        gap = std::min(gap, blocks.energies[k] - blocks.energies[k - 1]);
    }
    return gap;
}

ComplexMatrix block_diagonal_part(const EnergyBlocks& blocks, const ComplexMatrix& a) {
    if (blocks.projectors.empty()) throw Error(ErrorKind::InvalidArgument, "no energy blocks");
    require_same_dim(a.dim(), blocks.projectors.front().dim(), "block_diagonal_part");
    const auto n = static_cast<Eigen::Index>(a.dim());
    DenseMatrix out = DenseMatrix::Zero(n, n);
    for (const auto& pi : blocks.projectors) out += pi.dense() * a.dense() * pi.dense();
    return ComplexMatrix(std::move(out));
}

DensityMatrix dephase(const DensityMatrix& rho, const EnergyBlocks& blocks) {
    return DensityMatrix(hermitian_part(block_diagonal_part(blocks, rho.mat())));
}

DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h) {
    require_same_dim(rho.dim(), h.dim(), "dephase");
    return dephase(rho, energy_blocks(h));
}

bool is_superselection_compliant(const Projector& p, const EnergyBlocks& blocks) {
    return max_abs_diff(block_diagonal_part(blocks, p.mat()), p.mat()) <= kComplianceTol;
}

bool is_superselection_compliant(const Projector& p, const Hamiltonian& h) {
    require_same_dim(p.dim(), h.dim(), "is_superselection_compliant");
    return is_superselection_compliant(p, energy_blocks(h));
}

}  // namespace tracerule
