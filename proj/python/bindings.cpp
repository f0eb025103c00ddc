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

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tracerule/classical.hpp"
#include "tracerule/cli.hpp"
#include "tracerule/json_io.hpp"
#include "tracerule/matcore.hpp"
#include "tracerule/measure.hpp"
#include "tracerule/quantum.hpp"
#include "tracerule/sampler.hpp"
#include "tracerule/superselect.hpp"

namespace py = pybind11;
using namespace tracerule;

namespace {

// numpy <-> ComplexMatrix. Real arrays are promoted by pybind's Eigen caster.
ComplexMatrix to_matrix(const DenseMatrix& m) { return ComplexMatrix(m); }
DenseMatrix to_numpy(const ComplexMatrix& m) { return m.dense(); }

std::vector<Dwell> to_schedule(const std::vector<std::pair<std::size_t, double>>& entries) {
    std::vector<Dwell> out;
    out.reserve(entries.size());
    for (const auto& [state, duration] : entries) out.push_back({state, duration});
    return out;
}

}  // namespace

PYBIND11_MODULE(_tracerule, m) {
    m.doc() = "Trace-rule probabilities: classical cycles, density matrices, POV measures";

    static py::exception<Error> error_type(m, "TraceRuleError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = py::handle(error_type.ptr())(std::string(to_string(e.kind())) + ": " + e.what());
            err.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), err.ptr());
        }
    });

    py::enum_<RealityMode>(m, "RealityMode")
        .value("COMPLEX", RealityMode::Complex)
        .value("REAL", RealityMode::Real);

    // matcore
    m.def("adjoint", [](const DenseMatrix& a) { return to_numpy(adjoint(to_matrix(a))); });
    m.def("mat_mul", [](const DenseMatrix& a, const DenseMatrix& b) {
        return to_numpy(mat_mul(to_matrix(a), to_matrix(b)));
    });
    m.def("trace", [](const DenseMatrix& a) { return trace(to_matrix(a)); });
    m.def("hermitian_eig", [](const DenseMatrix& a) {
        auto eig = hermitian_eig(to_matrix(a));
        return std::make_tuple(eig.eigenvalues, to_numpy(eig.eigenvectors));
    });
    m.def("is_hermitian", [](const DenseMatrix& a, double tol) { return is_hermitian(to_matrix(a), tol); },
          py::arg("a"), py::arg("tol") = kDefaultTol);
    m.def("is_projector", [](const DenseMatrix& a, double tol) { return is_projector(to_matrix(a), tol); },
          py::arg("a"), py::arg("tol") = kDefaultTol);
    m.def("is_density", [](const DenseMatrix& a, double tol) { return is_density(to_matrix(a), tol); },
          py::arg("a"), py::arg("tol") = kDefaultTol);
    m.def("random_unitary",
          [](std::size_t dim, std::uint64_t seed) { return to_numpy(random_unitary(dim, seed)); },
          py::arg("dim"), py::arg("seed"));
    m.def("random_orthogonal",
          [](std::size_t dim, std::uint64_t seed) { return to_numpy(random_orthogonal(dim, seed)); },
          py::arg("dim"), py::arg("seed"));

    // classical
    py::class_<ClassicalCycle>(m, "ClassicalCycle")
        .def(py::init([](std::size_t n, const std::vector<std::pair<std::size_t, double>>& s) {
                 return ClassicalCycle(n, to_schedule(s));
             }),
             py::arg("n"), py::arg("schedule"))
        .def_property_readonly("n", &ClassicalCycle::states)
        .def_property_readonly("period", &ClassicalCycle::period)
        .def("state_at", &ClassicalCycle::state_at);

    m.def("char_and", [](std::vector<int> a, std::vector<int> b) {
        return char_and(PerceptionSet(std::move(a)), PerceptionSet(std::move(b))).chi();
    });
    m.def("char_or", [](std::vector<int> a, std::vector<int> b) {
        return char_or(PerceptionSet(std::move(a)), PerceptionSet(std::move(b))).chi();
    });
    m.def("classical_prob", [](std::vector<int> chi, std::vector<double> f) {
        return classical_prob(PerceptionSet(std::move(chi)), FractionVector(std::move(f)));
    });
    m.def("diag_projector",
          [](std::vector<int> chi) { return to_numpy(diag_projector(PerceptionSet(std::move(chi)))); });
    m.def("classical_density",
          [](std::vector<double> f) { return to_numpy(classical_density(FractionVector(std::move(f)))); });
    m.def("indicator_matrix",
          [](const ClassicalCycle& c, double t) { return to_numpy(indicator_matrix(c, t)); });
    m.def("time_average_indicator", [](const ClassicalCycle& c, std::size_t steps) {
        return to_numpy(time_average_indicator(c, steps));
    });
    m.def("dwell_fractions", [](const ClassicalCycle& c) { return dwell_fractions(c).values(); });

    // quantum
    py::class_<Projector>(m, "Projector")
        .def(py::init([](const DenseMatrix& a, RealityMode mode) {
                 return Projector(to_matrix(a), mode);
             }),
             py::arg("mat"), py::arg("mode") = RealityMode::Complex)
        .def_property_readonly("mat", [](const Projector& p) { return to_numpy(p.mat()); });
    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const DenseMatrix& a, RealityMode mode) {
                 return DensityMatrix(to_matrix(a), mode);
             }),
             py::arg("mat"), py::arg("mode") = RealityMode::Complex)
        .def_property_readonly("mat", [](const DensityMatrix& r) { return to_numpy(r.mat()); })
        .def_property_readonly("purity", &DensityMatrix::purity)
        .def_property_readonly("is_pure", &DensityMatrix::is_pure);

    m.def("trace_prob", &trace_prob, py::arg("p"), py::arg("rho"));
    m.def("unitary_conjugate", [](const DenseMatrix& u, const DenseMatrix& a) {
        return to_numpy(unitary_conjugate(to_matrix(u), to_matrix(a)));
    });
    m.def("check_invariance", [](const Projector& p, const DensityMatrix& rho, const DenseMatrix& u) {
        return check_invariance(p, rho, to_matrix(u));
    });
    m.def("commutes",
          [](const DenseMatrix& a, const DenseMatrix& b, double tol) {
              return commutes(to_matrix(a), to_matrix(b), tol);
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
    m.def("projector_meet", &projector_meet);
    m.def("enforce_reality", [](RealityMode mode, const DenseMatrix& a) {
        return to_numpy(enforce_reality(mode, to_matrix(a)));
    });

    // superselect
    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def(py::init([](const DenseMatrix& a) { return Hamiltonian(to_matrix(a)); }))
        .def_property_readonly("energies", &Hamiltonian::energies)
        .def_property_readonly("mat", [](const Hamiltonian& h) { return to_numpy(h.mat()); });
    m.def("evolve", &evolve, py::arg("rho"), py::arg("h"), py::arg("t"));
    m.def("dephase", py::overload_cast<const DensityMatrix&, const Hamiltonian&>(&dephase));
    m.def("energy_blocks",
          [](const Hamiltonian& h, std::optional<double> tol) {
              const EnergyBlocks b = tol ? energy_blocks(h, *tol) : energy_blocks(h);
              std::vector<DenseMatrix> projectors;
              for (const auto& p : b.projectors) projectors.push_back(p.dense());
              py::dict out;
              out["clusters"] = b.clusters;
              out["energies"] = b.energies;
              out["projectors"] = projectors;
              return out;
          },
          py::arg("h"), py::arg("cluster_tol") = py::none());
    m.def("is_superselection_compliant",
          py::overload_cast<const Projector&, const Hamiltonian&>(&is_superselection_compliant));

    // measure
    py::class_<PerceptionAlgebra>(m, "PerceptionAlgebra")
        .def(py::init([](const std::vector<std::pair<std::string, DenseMatrix>>& atoms,
                         RealityMode mode) {
                 std::vector<Atom> out;
                 for (const auto& [label, op] : atoms) {
                     out.push_back(Atom{label, PovOperator(to_matrix(op), mode)});
                 }
                 return PerceptionAlgebra(std::move(out));
             }),
             py::arg("atoms"), py::arg("mode") = RealityMode::Complex)
        .def_property_readonly("labels", &PerceptionAlgebra::all_labels);
    m.def("union_operator", [](const PerceptionAlgebra& alg, const LabelSet& s) {
        return to_numpy(union_operator(alg, s).mat());
    });
    m.def("measure_of", [](const PerceptionAlgebra& alg, const LabelSet& s, const DensityMatrix& rho) {
        return measure_of(alg, s, rho).value;
    });
    m.def("total_measure", [](const PerceptionAlgebra& alg, const DensityMatrix& rho) {
        return total_measure(alg, rho).value;
    });
    m.def("normalized_prob", &normalized_prob);
    m.def("conditional_prob", &conditional_prob, py::arg("alg"), py::arg("s_sub"), py::arg("m_sub"),
          py::arg("rho"));

    // sampler
    py::class_<SampleReport>(m, "SampleReport")
        .def_readonly("outcome_labels", &SampleReport::outcome_labels)
        .def_readonly("outcome_counts", &SampleReport::outcome_counts)
        .def_readonly("total", &SampleReport::total)
        .def_readonly("empirical_freqs", &SampleReport::empirical_freqs)
        .def_readonly("expected_probs", &SampleReport::expected_probs)
        .def_readonly("max_abs_deviation", &SampleReport::max_abs_deviation)
        .def_readonly("seed", &SampleReport::seed)
        .def("to_json", [](const SampleReport& r) { return report_to_json(r).dump(); });
    m.def("sample_classical", &sample_classical, py::arg("cycle"), py::arg("n_samples"),
          py::arg("seed"));
    m.def("sample_measurement", &sample_measurement, py::arg("partition"), py::arg("rho"),
          py::arg("n_samples"), py::arg("seed"), py::arg("labels") = std::vector<std::string>{});
    m.def("deviation_check", &deviation_check, py::arg("report"),
          py::arg("sigma_multiplier") = kDefaultSigmaMultiplier);

    // CLI, in-process.
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"tracerule"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_tuple(code, out.str(), err.str());
    });
}
