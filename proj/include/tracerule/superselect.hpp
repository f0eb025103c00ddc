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
#include <vector>

#include "tracerule/matcore.hpp"
#include "tracerule/quantum.hpp"

namespace tracerule {

/// Time-independent Hermitian generator (hbar = 1). Any conserved Hermitian
/// observable may stand in for the energy. The spectral decomposition is
/// computed once at construction.
class Hamiltonian {
   public:
    explicit Hamiltonian(ComplexMatrix mat);

    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }
    const EigenDecomposition& eig() const noexcept { return eig_; }
    const std::vector<double>& energies() const noexcept { return eig_.eigenvalues; }

    /// 1e-8 * max(1, max |E|).
    double default_cluster_tol() const;

   private:
    ComplexMatrix mat_;
    EigenDecomposition eig_;
};

/// Partition of the spectrum into (near-)degenerate clusters.
struct EnergyBlocks {
    /// 0-based eigen-indices per cluster, clusters in ascending energy.
    std::vector<std::vector<std::size_t>> clusters;
    /// Mean energy of each cluster.
    std::vector<double> energies;
    /// Spectral projector onto each cluster's eigenspace.
    std::vector<ComplexMatrix> projectors;
};

/// exp(-i H t) built spectrally as V diag(exp(-i E_j t)) V^dagger.
ComplexMatrix evolution_operator(const Hamiltonian& h, double t);

DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t);

/// Greedy clustering of the ascending spectrum: neighbours whose gap is at
/// most cluster_tol share a cluster.
EnergyBlocks energy_blocks(const Hamiltonian& h, double cluster_tol);
EnergyBlocks energy_blocks(const Hamiltonian& h);

/// Smallest gap between distinct clusters; 0 when there is a single cluster.
double min_energy_gap(const EnergyBlocks& blocks);

/// sum_k Pi_k a Pi_k.
ComplexMatrix block_diagonal_part(const EnergyBlocks& blocks, const ComplexMatrix& a);

/// Infinite-time average of evolve(rho, h, t), in closed form.
DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h);
DensityMatrix dephase(const DensityMatrix& rho, const EnergyBlocks& blocks);

/// True iff p is block-diagonal across the energy clusters (to 1e-9).
bool is_superselection_compliant(const Projector& p, const Hamiltonian& h);
bool is_superselection_compliant(const Projector& p, const EnergyBlocks& blocks);

}  // namespace tracerule
