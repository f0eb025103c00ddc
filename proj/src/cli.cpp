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

#include "tracerule/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

namespace tracerule::cli {

namespace {

constexpr double kAgreementTol = 1e-12;
constexpr double kInvarianceTol = 1e-9;
constexpr std::size_t kAverageSteps = 100000;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Left-aligned plain-text table.
class Table {
   public:
    explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()), 0);
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        }
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t c = 0; c < rows_[i].size(); ++c) {
                os << std::left << std::setw(static_cast<int>(width[c]) + 2) << rows_[i][c];
            }
            os << '\n';
            if (i == 0) {
                std::size_t total = 0;
                for (auto w : width) total += w + 2;
                os << std::string(total, '-') << '\n';
            }
        }
        return os.str();
    }

   private:
    std::vector<std::vector<std::string>> rows_;
};

std::string matrix_str(const ComplexMatrix& m) {
    std::ostringstream os;
    const bool real = m.max_imag() == 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Complex z = m(i, j);
            if (j) os << ", ";
            if (real) {
                os << fmt(z.real());
            } else {
                os << fmt(z.real()) << (z.imag() < 0 ? "-" : "+") << fmt(std::abs(z.imag()))
                   << "i";
            }
        }
        os << "]\n";
    }
    return os.str();
}

std::string set_str(const PerceptionSet& s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.contains(i)) continue;
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

std::string labels_str(const LabelSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s) {
        if (!first) out += ",";
        out += l;
        first = false;
    }
    return out + "}";
}

[[noreturn]] void missing(const std::string& what, const std::string& command) {
    throw Error(ErrorKind::Validation, command + " requires " + what + " in the spec");
}

const DensityMatrix& require_rho(const SystemSpec& spec, const std::string& command) {
    if (!spec.rho) missing("\"rho\"", command);
    return *spec.rho;
}

// The perception sets used by `classical`: the spec's characteristic
// vectors, or every singleton when none are given.
std::vector<std::pair<std::string, PerceptionSet>> classical_sets(const SystemSpec& spec) {
    std::vector<std::pair<std::string, PerceptionSet>> sets;
    for (const auto& p : spec.projectors) {
        if (!p.chi) {
            throw Error(ErrorKind::Validation, "classical: projector '" + p.label +
                                                   "' must be a characteristic vector");
        }
        sets.emplace_back(p.label, *p.chi);
    }
    if (sets.empty()) {
        const std::size_t n = spec.cycle->states();
        for (std::size_t i = 1; i <= n; ++i) {
            sets.emplace_back("{" + std::to_string(i) + "}", PerceptionSet::from_members(n, {i}));
        }
    }
    return sets;
}

ComplexMatrix random_basis_change(RealityMode mode, std::size_t dim, std::uint64_t seed) {
    return mode == RealityMode::Real ? random_orthogonal(dim, seed) : random_unitary(dim, seed);
}

bool is_partition(const std::vector<LabeledProjector>& ps) {
    if (ps.empty()) return false;
    const auto n = static_cast<Eigen::Index>(ps.front().projector.dim());
    DenseMatrix sum = DenseMatrix::Zero(n, n);
    for (const auto& p : ps) sum += p.projector.mat().dense();
    if ((sum - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) return false;
    for (std::size_t a = 0; a < ps.size(); ++a) {
        for (std::size_t b = a + 1; b < ps.size(); ++b) {
            const DenseMatrix prod = ps[a].projector.mat().dense() * ps[b].projector.mat().dense();
            if (prod.cwiseAbs().maxCoeff() > 1e-9) return false;
        }
    }
    return true;
}

}  // namespace

CommandOutput cmd_classical(const SystemSpec& spec) {
    if (!spec.cycle) missing("\"cycle\"", "classical");
    const ClassicalCycle& cycle = *spec.cycle;
    const FractionVector f = dwell_fractions(cycle);
    const DensityMatrix rho(classical_density(f));

    CommandOutput out;
    out.json = Json{{"command", "classical"},
                    {"n", cycle.states()},
                    {"period", cycle.period()},
                    {"dwell_fractions", f.values()},
                    {"rho", matrix_to_json(rho.mat())}};
    Table table({"set", "chi", "classical_prob", "trace_prob", "abs_diff"});
    Json rows = Json::array();
    double worst = 0.0;
    for (const auto& [label, s] : classical_sets(spec)) {
        const double direct = classical_prob(s, f);
        const double via_trace = trace_prob(Projector(diag_projector(s)), rho);
        const double diff = std::abs(direct - via_trace);
        worst = std::max(worst, diff);
        rows.push_back(Json{{"label", label},
                            {"chi", s.chi()},
                            {"classical_prob", direct},
                            {"trace_prob", via_trace},
                            {"abs_diff", diff}});
        table.add({label, set_str(s), fmt(direct), fmt(via_trace), fmt(diff)});
    }
    out.ok = worst <= kAgreementTol;
    out.json["sets"] = std::move(rows);
    out.json["max_abs_diff"] = worst;
    out.json["agree"] = out.ok;

    std::ostringstream os;
    os << "classical cycle: n = " << cycle.states() << ", period = " << fmt(cycle.period())
       << "\ndensity matrix diag(dwell fractions):\n"
       << matrix_str(rho.mat()) << '\n'
       << table.str() << "\ntrace rule agrees with chi.f: " << yes_no(out.ok)
       << " (max diff " << fmt(worst) << ")\n";
    out.table = os.str();
    return out;
}

CommandOutput cmd_quantum(const SystemSpec& spec) {
    const DensityMatrix& rho = require_rho(spec, "quantum");
    if (spec.projectors.empty()) missing("\"projectors\"", "quantum");

    std::optional<EnergyBlocks> blocks;
    std::optional<DensityMatrix> dephased;
    if (spec.hamiltonian) {
        blocks = energy_blocks(*spec.hamiltonian);
        dephased = dephase(rho, *blocks);
    }

    CommandOutput out;
    out.json = Json{{"command", "quantum"},
                    {"mode", spec.mode == RealityMode::Real ? "real" : "complex"},
                    {"n", rho.dim()},
                    {"purity", rho.purity()},
                    {"pure", rho.is_pure()}};
    std::vector<std::string> header{"projector", "trace_prob"};
    if (blocks) {
        header.insert(header.end(), {"compliant", "dephased_prob"});
    }
    Table table(std::move(header));
    Json rows = Json::array();
    for (const auto& p : spec.projectors) {
        const double prob = trace_prob(p.projector, rho);
        Json row{{"label", p.label}, {"trace_prob", prob}};
        std::vector<std::string> cells{p.label, fmt(prob)};
        if (blocks) {
            const bool compliant = is_superselection_compliant(p.projector, *blocks);
            const double after = trace_prob(p.projector, *dephased);
            row["compliant"] = compliant;
            row["dephased_prob"] = after;
            cells.push_back(yes_no(compliant));
            cells.push_back(fmt(after));
            // Compliant projectors cannot see the time-dependent coherences.
            if (compliant && std::abs(prob - after) > kInvarianceTol) out.ok = false;
        }
        rows.push_back(std::move(row));
        table.add(std::move(cells));
    }
    out.json["projectors"] = std::move(rows);
    out.json["consistent"] = out.ok;

    std::ostringstream os;
    os << "quantum state: n = " << rho.dim() << ", purity tr(rho^2) = " << fmt(rho.purity())
       << (rho.is_pure() ? " (pure)" : "") << "\n\n"
       << table.str();
    if (blocks) {
        os << "\ncompliant projectors unchanged by dephasing: " << yes_no(out.ok) << '\n';
    }
    out.table = os.str();
    return out;
}

CommandOutput cmd_dephase(const SystemSpec& spec) {
    const DensityMatrix& rho = require_rho(spec, "dephase");
    if (!spec.hamiltonian) missing("\"hamiltonian\"", "dephase");
    const Hamiltonian& h = *spec.hamiltonian;
    const EnergyBlocks blocks = energy_blocks(h);
    const DensityMatrix avg = dephase(rho, blocks);
    const double idempotency = max_abs_diff(dephase(avg, blocks).mat(), avg.mat());
    const double trace_shift = std::abs(trace(avg.mat()) - trace(rho.mat()));

    CommandOutput out;
    Json clusters = Json::array();
    Table blocks_table({"block", "energy", "size"});
    for (std::size_t k = 0; k < blocks.clusters.size(); ++k) {
        clusters.push_back(Json{{"energy", blocks.energies[k]},
                                {"indices", blocks.clusters[k]},
                                {"projector", matrix_to_json(blocks.projectors[k])}});
        blocks_table.add({std::to_string(k + 1), fmt(blocks.energies[k]),
                          std::to_string(blocks.clusters[k].size())});
    }
    out.json = Json{{"command", "dephase"},
                    {"energies", h.energies()},
                    {"cluster_tol", h.default_cluster_tol()},
                    {"blocks", std::move(clusters)},
                    {"rho", matrix_to_json(rho.mat())},
                    {"dephased_rho", matrix_to_json(avg.mat())},
                    {"idempotency_defect", idempotency},
                    {"trace_shift", trace_shift}};

    std::ostringstream os;
    os << "energy blocks:\n"
       << blocks_table.str() << "\ndephased density matrix:\n"
       << matrix_str(avg.mat()) << "\nidempotency defect " << fmt(idempotency)
       << ", trace shift " << fmt(trace_shift) << '\n';

    if (!spec.projectors.empty()) {
        Table table({"projector", "compliant", "prob", "dephased_prob"});
        Json rows = Json::array();
        for (const auto& p : spec.projectors) {
            const bool compliant = is_superselection_compliant(p.projector, blocks);
            const double before = trace_prob(p.projector, rho);
            const double after = trace_prob(p.projector, avg);
            rows.push_back(Json{{"label", p.label},
                                {"compliant", compliant},
                                {"prob", before},
                                {"dephased_prob", after}});
            table.add({p.label, yes_no(compliant), fmt(before), fmt(after)});
            if (compliant && std::abs(before - after) > kInvarianceTol) out.ok = false;
        }
        out.json["projectors"] = std::move(rows);
        os << '\n' << table.str();
    }
    out.table = os.str();
    return out;
}

CommandOutput cmd_measure(const SystemSpec& spec) {
    const DensityMatrix& rho = require_rho(spec, "measure");
    if (!spec.algebra) missing("\"algebra\"", "measure");
    const PerceptionAlgebra& alg = *spec.algebra;
    const double total = total_measure(alg, rho).value;

    CommandOutput out;
    out.json = Json{{"command", "measure"}, {"total_measure", total}};

    // Atoms first, then any named unions from the spec.
    std::vector<std::pair<std::string, LabelSet>> sets;
    for (const Atom& a : alg.atoms()) sets.emplace_back(a.label, LabelSet{a.label});
    sets.insert(sets.end(), spec.sets.begin(), spec.sets.end());

    std::vector<std::string> header{"set", "atoms", "measure", "normalized_prob"};
    if (spec.given) header.push_back("conditional_prob");
    Table table(std::move(header));
    Json rows = Json::array();
    for (const auto& [name, s] : sets) {
        const double m = measure_of(alg, s, rho).value;
        const double p = normalized_prob(alg, s, rho);
        Json row{{"label", name},
                 {"atoms", std::vector<std::string>(s.begin(), s.end())},
                 {"measure", m},
                 {"normalized_prob", p}};
        std::vector<std::string> cells{name, labels_str(s), fmt(m), fmt(p)};
        if (spec.given) {
            if (std::includes(spec.given->begin(), spec.given->end(), s.begin(), s.end())) {
                const double c = conditional_prob(alg, s, *spec.given, rho);
                row["conditional_prob"] = c;
                cells.push_back(fmt(c));
            } else {
                row["conditional_prob"] = nullptr;
                cells.push_back("-");
            }
        }
        rows.push_back(std::move(row));
        table.add(std::move(cells));
    }
    out.json["sets"] = std::move(rows);
    if (spec.given) {
        out.json["given"] = std::vector<std::string>(spec.given->begin(), spec.given->end());
        out.json["given_measure"] = measure_of(alg, *spec.given, rho).value;
    }

    std::ostringstream os;
    os << "total measure f(M) = " << fmt(total) << "\n";
    if (spec.given) os << "conditioning on " << labels_str(*spec.given) << "\n";
    os << '\n' << table.str();
    out.table = os.str();
    return out;
}

CommandOutput cmd_sample(const SystemSpec& spec, std::uint64_t n, std::uint64_t seed) {
    const bool quantum = spec.rho && !spec.projectors.empty();
    if (!spec.cycle && !quantum) missing("a \"cycle\" or \"rho\" with \"projectors\"", "sample");

    CommandOutput out;
    out.json = Json{{"command", "sample"}, {"n", n}, {"seed", seed}};
    std::ostringstream os;
    auto emit = [&](const char* key, const SampleReport& r) {
        const bool pass = deviation_check(r, kDefaultSigmaMultiplier);
        Json j = report_to_json(r);
        j["pass"] = pass;
        out.json[key] = std::move(j);
        out.ok = out.ok && pass;
        Table table({"outcome", "count", "empirical", "expected"});
        for (std::size_t k = 0; k < r.outcome_counts.size(); ++k) {
            table.add({r.outcome_labels[k], std::to_string(r.outcome_counts[k]),
                       fmt(r.empirical_freqs[k]), fmt(r.expected_probs[k])});
        }
        os << key << " sampling, N = " << r.total << ", seed = " << r.seed << "\n"
           << table.str() << "max |deviation| = " << fmt(r.max_abs_deviation)
           << ", 5-sigma check: " << (pass ? "pass" : "FAIL") << "\n\n";
    };
    if (spec.cycle) emit("classical", sample_classical(*spec.cycle, n, seed));
    if (quantum) {
        std::vector<Projector> partition;
        std::vector<std::string> labels;
        for (const auto& p : spec.projectors) {
            partition.push_back(p.projector);
            labels.push_back(p.label);
        }
        emit("quantum", sample_measurement(partition, *spec.rho, n, seed, std::move(labels)));
    }
    out.json["pass"] = out.ok;
    out.table = os.str();
    return out;
}

CommandOutput cmd_check(const SystemSpec& spec, std::uint64_t seed) {
    CommandOutput out;
    Json checks = Json::array();
    Table table({"check", "result", "detail"});
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back(Json{{"check", name}, {"pass", pass}, {"detail", detail}});
        table.add({name, pass ? "pass" : "FAIL", detail});
        out.ok = out.ok && pass;
    };

    record("spec validation", true,
           std::string("mode ") + (spec.mode == RealityMode::Real ? "real" : "complex"));

    if (spec.cycle) {
        const FractionVector f = dwell_fractions(*spec.cycle);
        const DensityMatrix rho(classical_density(f));
        double worst = 0.0;
        for (const auto& [label, s] : classical_sets(spec)) {
            worst = std::max(worst, std::abs(classical_prob(s, f) -
                                              trace_prob(Projector(diag_projector(s)), rho)));
        }
        record("classical trace identity", worst <= kAgreementTol, "max diff " + fmt(worst));
        const double avg_err = max_abs_diff(time_average_indicator(*spec.cycle, kAverageSteps),
                                            classical_density(f));
        record("time average of R(t)", avg_err <= 1e-4, "max diff " + fmt(avg_err));
    }

    if (spec.rho && !spec.projectors.empty()) {
        const DensityMatrix& rho = *spec.rho;
        const ComplexMatrix u = random_basis_change(spec.mode, rho.dim(), seed);
        double worst_inv = 0.0;
        double worst_comp = 0.0;
        for (const auto& p : spec.projectors) {
            worst_inv = std::max(worst_inv, check_invariance(p.projector, rho, u));
            const Projector complement(ComplexMatrix::identity(rho.dim()) - p.projector.mat());
            worst_comp = std::max(worst_comp, std::abs(trace_prob(complement, rho) -
                                                       (1.0 - trace_prob(p.projector, rho))));
        }
        record("unitary invariance", worst_inv <= kInvarianceTol, "max diff " + fmt(worst_inv));
        record("complementarity", worst_comp <= 1e-10, "max diff " + fmt(worst_comp));
        const bool partition = is_partition(spec.projectors);
        checks.push_back(Json{{"check", "projectors form a partition"},
                              {"pass", true},
                              {"detail", partition ? "yes" : "no"}});
        table.add({"projectors form a partition", "info", partition ? "yes" : "no"});
    }

    if (spec.rho && spec.hamiltonian) {
        const EnergyBlocks blocks = energy_blocks(*spec.hamiltonian);
        const DensityMatrix avg = dephase(*spec.rho, blocks);
        const double idem = max_abs_diff(dephase(avg, blocks).mat(), avg.mat());
        record("dephase idempotent", idem <= 1e-10, "defect " + fmt(idem));
        const double shift = std::abs(trace(avg.mat()) - trace(spec.rho->mat()));
        record("dephase preserves trace", shift <= 1e-12, "shift " + fmt(shift));
        double worst = 0.0;
        for (const auto& p : spec.projectors) {
            if (!is_superselection_compliant(p.projector, blocks)) continue;
            for (double t : {0.5, 1.0, 2.0 * std::numbers::pi, 17.0}) {
                const double now = trace_prob(p.projector, evolve(*spec.rho, *spec.hamiltonian, t));
                worst = std::max(worst, std::abs(now - trace_prob(p.projector, avg)));
            }
        }
        record("compliant probabilities time-independent", worst <= kInvarianceTol,
               "max diff " + fmt(worst));
    }

    if (spec.rho && spec.algebra) {
        double summed = 0.0;
        for (const Atom& a : spec.algebra->atoms()) {
            summed += measure_of(*spec.algebra, {a.label}, *spec.rho).value;
        }
        const double total = total_measure(*spec.algebra, *spec.rho).value;
        record("measure additivity", std::abs(total - summed) <= 1e-12,
               "total " + fmt(total) + ", atom sum " + fmt(summed));
    }

    out.json = Json{{"command", "check"}, {"checks", std::move(checks)}, {"pass", out.ok}};
    out.table = table.str();
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace-rule probabilities for classical cycles, quantum states and POV measures",
                 "tracerule"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string spec_path;
    bool as_json = false;
    std::string out_path;
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    bool real = false;
    double tol = kDefaultTol;
    app.add_option("--spec", spec_path, "System spec (JSON)")->required();
    app.add_flag("--json", as_json, "Emit machine-readable JSON");
    app.add_option("--out", out_path, "Write results to this path instead of stdout");
    app.add_option("--n", n, "Number of samples")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Random seed");
    app.add_flag("--real", real, "REAL mode: reject complex operators");
    app.add_option("--tol", tol, "Tolerance for operator class checks")
        ->check(CLI::PositiveNumber);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"classical", "Dwell-fraction probabilities of a classical cycle"},
        {"quantum", "Trace-rule probabilities of projectors"},
        {"dephase", "Energy blocks and the time-averaged state"},
        {"measure", "POV measures, normalized and conditional probabilities"},
        {"sample", "Monte Carlo sampling against the trace rule"},
        {"check", "Run every applicable validation on a spec"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error[Usage]: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const SystemSpec spec = load_system_spec_file(spec_path, real, tol);
        CommandOutput result;
        if (command == "classical") {
            result = cmd_classical(spec);
        } else if (command == "quantum") {
            result = cmd_quantum(spec);
        } else if (command == "dephase") {
            result = cmd_dephase(spec);
        } else if (command == "measure") {
            result = cmd_measure(spec);
        } else if (command == "sample") {
            result = cmd_sample(spec, n, seed);
        } else {
            result = cmd_check(spec, seed);
        }

        const std::string text = as_json ? result.json.dump(2) + "\n" : result.table;
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(out_path);
            if (!file) {
                err << "error[Io]: cannot write '" << out_path << "'\n";
                return kError;
            }
            file << text;
        }
        if (!result.ok) {
            err << command << ": one or more checks failed\n";
            return kChecksFailed;
        }
        return kOk;
    } catch (const Error& e) {
        err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace tracerule::cli
