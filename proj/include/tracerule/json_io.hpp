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

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tracerule/classical.hpp"
#include "tracerule/matcore.hpp"
#include "tracerule/measure.hpp"
#include "tracerule/quantum.hpp"
#include "tracerule/sampler.hpp"
#include "tracerule/superselect.hpp"

namespace tracerule {

// Insertion order matters: projector lists double as measurement partitions.
using Json = nlohmann::ordered_json;

// Matrices are arrays of rows; each entry is [re, im]. A bare number is read
// as a real entry. Doubles are written in shortest round-trip form.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"n": int, "schedule": [[state, duration], ...]}, states 1-based.
Json cycle_to_json(const ClassicalCycle& c);
ClassicalCycle cycle_from_json(const Json& j);

// {"atoms": [{"label": string, "operator": matrix}, ...]}
Json algebra_to_json(const PerceptionAlgebra& alg);
PerceptionAlgebra algebra_from_json(const Json& j, RealityMode mode = RealityMode::Complex,
                                    double tol = kDefaultTol);

Json report_to_json(const SampleReport& r);
SampleReport report_from_json(const Json& j);

struct LabeledProjector {
    std::string label;
    Projector projector;
    /// Set when the file gave a characteristic vector rather than a matrix.
    std::optional<PerceptionSet> chi;
};

/// Everything one CLI invocation may operate on. Every present matrix has
/// passed its class check and all dimensions agree.
struct SystemSpec {
    RealityMode mode = RealityMode::Complex;
    std::optional<ClassicalCycle> cycle;
    std::optional<DensityMatrix> rho;
    std::optional<Hamiltonian> hamiltonian;
    std::vector<LabeledProjector> projectors;
    std::optional<PerceptionAlgebra> algebra;
    /// Named unions of algebra atoms to evaluate ("sets").
    std::vector<std::pair<std::string, LabelSet>> sets;
    /// Optional conditioning set for conditional probabilities ("given").
    std::optional<LabelSet> given;

    std::optional<std::size_t> dim() const;
};

/// Parses and validates a spec document. A `"real": true` key or
/// `force_real` selects REAL mode. Throws SpecParse for malformed input,
/// NotReal for complex entries under REAL mode, Validation otherwise.
SystemSpec load_system_spec(const Json& j, bool force_real = false, double tol = kDefaultTol);
SystemSpec load_system_spec_file(const std::filesystem::path& path, bool force_real = false,
                                 double tol = kDefaultTol);

}  // namespace tracerule
