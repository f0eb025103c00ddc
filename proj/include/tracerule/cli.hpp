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

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tracerule/json_io.hpp"

namespace tracerule::cli {

/// Exit codes of the `tracerule` binary.
enum ExitCode : int {
    kOk = 0,
    kError = 1,          // library or spec error, tagged on stderr
    kUsage = 2,          // bad command line
    kChecksFailed = 3,   // ran fine but a check or deviation test failed
};

struct CommandOutput {
    Json json;
    std::string table;
    bool ok = true;
};

CommandOutput cmd_classical(const SystemSpec& spec);
CommandOutput cmd_quantum(const SystemSpec& spec);
CommandOutput cmd_dephase(const SystemSpec& spec);
CommandOutput cmd_measure(const SystemSpec& spec);
CommandOutput cmd_sample(const SystemSpec& spec, std::uint64_t n, std::uint64_t seed);
CommandOutput cmd_check(const SystemSpec& spec, std::uint64_t seed);

/// Full command-line entry point. Results go to `out` (or --out), all
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tracerule::cli
