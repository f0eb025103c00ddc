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

#include "tracerule/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tracerule {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::SpecParse, what); }

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) parse_error(where + ": expected a number");
    return j.get<double>();
}

Complex entry_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) {
        return {number_at(j[0], where), number_at(j[1], where)};
    }
    parse_error(where + ": matrix entry must be [re, im] or a number");
}

bool is_number_array(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& v : j) {
        if (!v.is_number()) return false;
    }
    return true;
}

// Runs `build`, re-tagging library failures as Validation with the key that
// produced them. NotReal and SpecParse pass through unchanged.
template <typename F>
auto validated(const std::string& key, F&& build) -> decltype(build()) {
    try {
        return build();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotReal || e.kind() == ErrorKind::SpecParse) {
            throw Error(e.kind(), key + ": " + e.what());
        }
        throw Error(ErrorKind::Validation,
                    key + ": " + e.what() + " (" + std::string(to_string(e.kind())) + ")");
    }
}

LabelSet label_set_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_error(where + ": expected an array of atom labels");
    LabelSet s;
    for (const auto& v : j) {
        if (!v.is_string()) parse_error(where + ": atom labels must be strings");
        s.insert(v.get<std::string>());
    }
    return s;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Complex z = m(i, j);
            row.push_back(Json::array({z.real(), z.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
    std::vector<std::vector<Complex>> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "matrix row " + std::to_string(i);
        if (!j[i].is_array()) parse_error(where + ": expected an array");
        if (j[i].size() != j.size()) {
            parse_error(where + ": has " + std::to_string(j[i].size()) + " entries, expected " +
                        std::to_string(j.size()));
        }
        std::vector<Complex> row;
        row.reserve(j[i].size());
        for (const auto& e : j[i]) row.push_back(entry_from_json(e, where));
        rows.push_back(std::move(row));
    }
    try {
        return ComplexMatrix::from_rows(rows);
    } catch (const Error& e) {
        parse_error(std::string("matrix: ") + e.what());
    }
}

Json cycle_to_json(const ClassicalCycle& c) {
    Json schedule = Json::array();
    for (const Dwell& d : c.schedule()) schedule.push_back(Json::array({d.state, d.duration}));
    return Json{{"n", c.states()}, {"schedule", std::move(schedule)}};
}

ClassicalCycle cycle_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("schedule")) {
        parse_error("cycle must be an object with \"n\" and \"schedule\"");
    }
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
        parse_error("cycle.n must be a positive integer");
    }
    const auto& sched = j["schedule"];
    if (!sched.is_array()) parse_error("cycle.schedule must be an array");
    std::vector<Dwell> dwells;
    for (const auto& e : sched) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer()) {
            parse_error("cycle.schedule entries must be [state, duration]");
        }
        const long long state = e[0].get<long long>();
        if (state < 1) parse_error("cycle.schedule states are 1-based");
        dwells.push_back({static_cast<std::size_t>(state), number_at(e[1], "cycle.schedule")});
    }
    return ClassicalCycle(j["n"].get<std::size_t>(), std::move(dwells));
}

Json algebra_to_json(const PerceptionAlgebra& alg) {
    Json atoms = Json::array();
    for (const Atom& a : alg.atoms()) {
        atoms.push_back(Json{{"label", a.label}, {"operator", matrix_to_json(a.op.mat())}});
    }
    return Json{{"atoms", std::move(atoms)}};
}

PerceptionAlgebra algebra_from_json(const Json& j, RealityMode mode, double tol) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        parse_error("algebra must be an object with an \"atoms\" array");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("label") || !a["label"].is_string() ||
            !a.contains("operator")) {
            parse_error("algebra atoms need a string \"label\" and an \"operator\"");
        }
        std::string label = a["label"].get<std::string>();
        ComplexMatrix op = matrix_from_json(a["operator"]);
        atoms.push_back(Atom{label, PovOperator(std::move(op), mode, tol)});
    }
    return PerceptionAlgebra(std::move(atoms));
}

Json report_to_json(const SampleReport& r) {
    return Json{{"outcome_labels", r.outcome_labels},
                {"outcome_counts", r.outcome_counts},
                {"total", r.total},
                {"empirical_freqs", r.empirical_freqs},
                {"expected_probs", r.expected_probs},
                {"max_abs_deviation", r.max_abs_deviation},
                {"seed", r.seed}};
}

SampleReport report_from_json(const Json& j) {
    try {
        SampleReport r;
        r.outcome_labels = j.at("outcome_labels").get<std::vector<std::string>>();
        r.outcome_counts = j.at("outcome_counts").get<std::vector<std::uint64_t>>();
        r.total = j.at("total").get<std::uint64_t>();
        r.empirical_freqs = j.at("empirical_freqs").get<std::vector<double>>();
        r.expected_probs = j.at("expected_probs").get<std::vector<double>>();
        r.max_abs_deviation = j.at("max_abs_deviation").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        parse_error(std::string("sample report: ") + e.what());
    }
}

std::optional<std::size_t> SystemSpec::dim() const {
    if (rho) return rho->dim();
    if (hamiltonian) return hamiltonian->dim();
    if (!projectors.empty()) return projectors.front().projector.dim();
    if (algebra) return algebra->dim();
    if (cycle) return cycle->states();
    return std::nullopt;
}

SystemSpec load_system_spec(const Json& j, bool force_real, double tol) {
    if (!j.is_object()) parse_error("spec must be a JSON object");
    SystemSpec spec;
    if (j.contains("real")) {
        if (!j["real"].is_boolean()) parse_error("\"real\" must be a boolean");
        if (j["real"].get<bool>()) spec.mode = RealityMode::Real;
    }
    if (force_real) spec.mode = RealityMode::Real;

    if (j.contains("cycle")) {
        spec.cycle = validated("cycle", [&] { return cycle_from_json(j["cycle"]); });
    }
    if (j.contains("rho")) {
        spec.rho = validated(
            "rho", [&] { return DensityMatrix(matrix_from_json(j["rho"]), spec.mode, tol); });
    }
    if (j.contains("hamiltonian")) {
        spec.hamiltonian = validated("hamiltonian", [&] {
            return Hamiltonian(enforce_reality(spec.mode, matrix_from_json(j["hamiltonian"])));
        });
    }
    if (j.contains("projectors")) {
        const auto& ps = j["projectors"];
        if (!ps.is_object()) parse_error("\"projectors\" must map labels to matrices or vectors");
        for (const auto& [label, value] : ps.items()) {
            const std::string key = "projectors." + label;
            if (is_number_array(value)) {
                auto chi = validated(key, [&] {
                    std::vector<int> bits;
                    for (const auto& v : value) {
                        const double x = v.get<double>();
                        if (x != 0.0 && x != 1.0) {
                            parse_error("characteristic vector entries must be 0 or 1");
                        }
                        bits.push_back(static_cast<int>(x));
                    }
                    return PerceptionSet(std::move(bits));
                });
                Projector p(diag_projector(chi), spec.mode, tol);
                spec.projectors.push_back({label, std::move(p), std::move(chi)});
            } else {
                auto p = validated(
                    key, [&] { return Projector(matrix_from_json(value), spec.mode, tol); });
                spec.projectors.push_back({label, std::move(p), std::nullopt});
            }
        }
    }
    if (j.contains("algebra")) {
        spec.algebra =
            validated("algebra", [&] { return algebra_from_json(j["algebra"], spec.mode, tol); });
    }
    if (j.contains("sets")) {
        if (!j["sets"].is_object()) parse_error("\"sets\" must map names to label arrays");
        for (const auto& [name, value] : j["sets"].items()) {
            spec.sets.emplace_back(name, label_set_from_json(value, "sets." + name));
        }
    }
    if (j.contains("given")) spec.given = label_set_from_json(j["given"], "given");

    // Cross-checks.
    const auto expected = spec.dim();
    auto check_dim = [&](std::size_t d, const std::string& what) {
        if (expected && d != *expected) {
            throw Error(ErrorKind::Validation, what + " has dimension " + std::to_string(d) +
                                                   ", expected " + std::to_string(*expected));
        }
    };
    if (spec.rho) check_dim(spec.rho->dim(), "rho");
    if (spec.hamiltonian) check_dim(spec.hamiltonian->dim(), "hamiltonian");
    for (const auto& p : spec.projectors) check_dim(p.projector.dim(), "projectors." + p.label);
    if (spec.algebra) check_dim(spec.algebra->dim(), "algebra");
    if (spec.cycle) check_dim(spec.cycle->states(), "cycle");
    if ((!spec.sets.empty() || spec.given) && !spec.algebra) {
        throw Error(ErrorKind::Validation, "\"sets\"/\"given\" require an \"algebra\"");
    }
    for (const auto& [name, s] : spec.sets) {
        for (const auto& label : s) {
            validated("sets." + name, [&] { return spec.algebra->atom(label).dim(); });
        }
    }
    if (spec.given) {
        for (const auto& label : *spec.given) {
            validated("given", [&] { return spec.algebra->atom(label).dim(); });
        }
    }
    return spec;
}

SystemSpec load_system_spec_file(const std::filesystem::path& path, bool force_real, double tol) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open spec file '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        parse_error("'" + path.string() + "': " + e.what());
    }
    return load_system_spec(j, force_real, tol);
}

}  // namespace tracerule
