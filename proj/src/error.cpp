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

#include "tracerule/error.hpp"

namespace tracerule {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotProjector: return "NotProjector";
        case ErrorKind::NotDensity: return "NotDensity";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotReal: return "NotReal";
        case ErrorKind::NonCommuting: return "NonCommuting";
        case ErrorKind::NumericalIntegrity: return "NumericalIntegrity";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::ZeroTotalMeasure: return "ZeroTotalMeasure";
        case ErrorKind::NotSubset: return "NotSubset";
        case ErrorKind::ZeroConditionMeasure: return "ZeroConditionMeasure";
        case ErrorKind::NotAPartition: return "NotAPartition";
        case ErrorKind::SpecParse: return "SpecParse";
        case ErrorKind::Validation: return "Validation";
    }
    return "Unknown";
}

}  // namespace tracerule
