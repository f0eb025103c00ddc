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

// Acceptance gate. One PASS/FAIL line per criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "tracerule/classical.hpp"
#include "tracerule/json_io.hpp"
#include "tracerule/measure.hpp"
#include "tracerule/quantum.hpp"
#include "tracerule/sampler.hpp"
#include "tracerule/superselect.hpp"

using namespace tracerule;
using namespace tracerule::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
    std::optional<double> limit;
};

// Accumulates named maxima against their bounds.
class Ledger {
   public:
    void bound(const std::string& name, double value, double limit) {
        worst_[name] = std::max(worst_.count(name) ? worst_[name] : 0.0, value);
        limits_[name] = limit;
        if (!(value <= limit)) pass_ = false;
    }
    void require(const std::string& name, bool ok) {
        if (!ok) {
            pass_ = false;
            failures_.push_back(name);
        }
    }
    bool pass() const { return pass_; }
    std::string summary() const {
        std::ostringstream os;
        os.precision(2);
        bool first = true;
        for (const auto& [name, v] : worst_) {
            os << (first ? "" : ", ") << name << " " << std::scientific << v << " <= " << limits_.at(name);
            first = false;
        }
        for (const auto& f : failures_) os << (first ? "" : ", ") << "FAILED " << f, first = false;
        return os.str();
    }

   private:
    bool pass_ = true;
    std::map<std::string, double> worst_;
    std::map<std::string, double> limits_;
    std::vector<std::string> failures_;
};

RealityMode mode_of(bool real) { return real ? RealityMode::Real : RealityMode::Complex; }

template <class F>
bool throws_kind(ErrorKind kind, F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

// Dwell fractions by summing durations per state.
std::vector<double> oracle_fractions(const ClassicalCycle& c) {
    std::vector<double> f(c.states(), 0.0);
    double total = 0.0;
    for (const auto& d : c.schedule()) {
        f[d.state - 1] += d.duration;
        total += d.duration;
    }
    for (auto& x : f) x /= total;
    return f;
}

// u a u^dagger by explicit loops.
ComplexMatrix naive_conjugate(const ComplexMatrix& u, const ComplexMatrix& a) {
    const std::size_t n = u.dim();
    const auto ua = naive_product(u, a);
    std::vector<std::vector<Complex>> out(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += ua[i][k] * std::conj(u(j, k));
            out[i][j] = acc;
        }
    }
    return ComplexMatrix::from_rows(out);
}

// ---------------------------------------------------------------------------

Outcome classical_identity(bool real) {
    Rng rng(real ? 8001 : 1001);
    Ledger led;
    const RealityMode mode = mode_of(real);
    for (int k = 0; k < 500; ++k) {
        const ClassicalCycle c = random_cycle(uniform_int(rng, 1, 8), rng);
        const FractionVector f = dwell_fractions(c);
        const PerceptionSet s(random_chi(c.states(), rng));
        const double direct = classical_prob(s, f);
        const double via_trace = trace_prob(Projector(diag_projector(s), mode), DensityMatrix(classical_density(f), mode));
        led.bound("max |chi.f - tr(P rho)|", std::abs(direct - via_trace), 1e-12);
        led.bound("max |chi.f - oracle|", std::abs(direct - index_loop_prob(members(s), oracle_fractions(c))), 1e-12);
    }
    return {led.pass(), led.summary(), 0.0, 1.0};
}

Outcome time_average(bool real) {
    Rng rng(real ? 8002 : 1002);
    Ledger led;
    for (int k = 0; k < 50; ++k) {
        const ClassicalCycle c = random_cycle(uniform_int(rng, 1, 8), rng);
        const ComplexMatrix avg = time_average_indicator(c, 100000);
        const std::vector<double> f = oracle_fractions(c);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.states(); ++i) {
            for (std::size_t j = 0; j < c.states(); ++j) {
                worst = std::max(worst, std::abs(avg(i, j) - (i == j ? f[i] : 0.0)));
            }
        }
        led.bound("max entry error", worst, 1e-4);
        led.bound("max |dwell_fractions - oracle|",
                  max_abs_diff(classical_density(dwell_fractions(c)), ComplexMatrix::diagonal(f)), 1e-12);
    }
    return {led.pass(), led.summary(), 0.0, 10.0};
}

Outcome unitary_invariance(bool real) {
    Rng rng(real ? 8003 : 1003);
    Ledger led;
    const RealityMode mode = mode_of(real);
    for (int k = 0; k < 1000; ++k) {
        const Projector p = random_projector(8, rng, real);
        const DensityMatrix rho = random_density(8, rng, real);
        const ComplexMatrix u = random_basis(8, rng, real);
        led.bound("max check_invariance", check_invariance(p, rho, u), 1e-9);
        // Both sides by loops, and the rotated pair re-validated in the same mode.
        const ComplexMatrix pt = naive_conjugate(u, p.mat());
        const ComplexMatrix rt = naive_conjugate(u, rho.mat());
        const double before = naive_trace_product(p.mat(), rho.mat()).real();
        const double after = trace_prob(Projector(hermitian_part(pt), mode), DensityMatrix(hermitian_part(rt), mode));
        led.bound("max |tr(P rho) - tr(P~ rho~)| oracle", std::abs(before - after), 1e-9);
    }
    return {led.pass(), led.summary(), 0.0, 5.0};
}

Outcome meet_boundary(bool real) {
    Ledger led;
    const RealityMode mode = mode_of(real);
    std::size_t pairs = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint64_t a = 0; a < (1U << n); ++a) {
            for (std::uint64_t b = 0; b < (1U << n); ++b) {
                const PerceptionSet s = subset_from_mask(n, a);
                const PerceptionSet t = subset_from_mask(n, b);
                const ComplexMatrix want = diag_projector(char_and(s, t));
                const ComplexMatrix prod = ComplexMatrix::from_rows(naive_product(diag_projector(s), diag_projector(t)));
                const Projector meet = projector_meet(Projector(diag_projector(s), mode), Projector(diag_projector(t), mode));
                led.require("exact P(S and S') = P(S)P(S')", want == prod && meet.mat() == want);
                ++pairs;
            }
        }
    }
    const ComplexMatrix up = ComplexMatrix::diagonal({1.0, 0.0});
    const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    const ComplexMatrix prod = ComplexMatrix::from_rows(naive_product(up, plus));
    double defect = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) defect = std::max(defect, std::abs(prod(i, j) - std::conj(prod(j, i))));
    }
    led.bound("|defect - 0.5|", std::abs(defect - 0.5), 1e-12);
    led.bound("|library defect - 0.5|", std::abs(hermiticity_defect(prod) - 0.5), 1e-12);
    led.require("NonCommuting raised",
                throws_kind(ErrorKind::NonCommuting, [&] { projector_meet(Projector(up, mode), Projector(plus, mode)); }));
    return {led.pass(), std::to_string(pairs) + " exhaustive pairs exact; " + led.summary(), 0.0, std::nullopt};
}

Outcome superselection(bool real) {
    Rng rng(real ? 8005 : 1005);
    Ledger led;
    const RealityMode mode = mode_of(real);
    constexpr std::size_t kSamples = 20000;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = uniform_int(rng, 2, 6);
        std::optional<BlockHamiltonian> bh;
        ComplexMatrix hm = ComplexMatrix::zero(n);
        if (k % 2 == 0) {
            bh = random_block_hamiltonian(n, rng, real);
            hm = bh->mat;
        } else {
            hm = random_hermitian(n, rng, real);
        }
        const Hamiltonian h(enforce_reality(mode, hm));
        const DensityMatrix rho = random_density(n, rng, real);
        const DensityMatrix bar = dephase(rho, h);
        if (real) led.require("dephased state stays real", bar.mat().max_imag() <= 1e-12);

        led.bound("idempotency", max_abs_diff(dephase(bar, h).mat(), bar.mat()), 1e-10);
        led.bound("trace shift", std::abs(trace(bar.mat()) - trace(rho.mat())), 1e-12);
        for (int j = 0; j < 20; ++j) {
            led.bound("time variation", max_abs_diff(evolve(bar, h, 50.0 * rng.normal()).mat(), bar.mat()), 1e-9);
        }

        // Long-time average of evolve on a uniform grid over [0, 1e3/gap).
        const EnergyBlocks blocks = energy_blocks(h);
        const double gap = min_energy_gap(blocks);
        const double window = gap > 0.0 ? 1e3 / gap : 1.0;
        const auto dn = static_cast<Eigen::Index>(n);
        DenseMatrix acc = DenseMatrix::Zero(dn, dn);
        for (std::size_t m = 0; m < kSamples; ++m) {
            const double t = (static_cast<double>(m) + 0.5) * window / static_cast<double>(kSamples);
            acc += evolve(rho, h, t).mat().dense();
        }
        const ComplexMatrix avg(acc / static_cast<double>(kSamples));
        led.bound("long-time oracle", max_abs_diff(avg, bar.mat()), 5e-3);

        // Compliant projectors: in-level subspaces, or unions of eigenvectors.
        const ComplexMatrix pm = bh ? random_compliant_projector(*bh, rng, real)
                                    : rotated_projector(hermitian_eig(hm).eigenvectors, random_chi(n, rng));
        const Projector p(pm, mode);
        led.require("compliance detected", is_superselection_compliant(p, h));
        const double p_bar = naive_trace_product(p.mat(), bar.mat()).real();
        for (int j = 0; j < 10; ++j) {
            const double p_t = trace_prob(p, evolve(rho, h, 50.0 * rng.normal()));
            led.bound("compliant prob drift", std::abs(p_t - p_bar), 1e-9);
        }
    }
    return {led.pass(), led.summary(), 0.0, 60.0};
}

Outcome pov_additivity(bool real) {
    Rng rng(real ? 8006 : 1006);
    Ledger led;
    const RealityMode mode = mode_of(real);
    for (int k = 0; k < 500; ++k) {
        const std::size_t n = uniform_int(rng, 1, 8);
        const PerceptionAlgebra alg = random_algebra(n, uniform_int(rng, 1, 6), rng, real);
        const DensityMatrix rho = random_density(n, rng, real);
        const LabelSet all = alg.all_labels();

        LabelSet s;
        LabelSet t;
        for (const auto& l : all) {
            const auto r = rng.next_u64() % 3;
            if (r == 0) s.insert(l);
            if (r == 1) t.insert(l);
        }
        LabelSet st = s;
        st.insert(t.begin(), t.end());
        const double lhs = measure_of(alg, st, rho).value;
        led.bound("additivity", std::abs(lhs - measure_of(alg, s, rho).value - measure_of(alg, t, rho).value), 1e-12);
        double oracle = 0.0;
        for (const auto& l : st) oracle += naive_trace_product(alg.atom(l).mat(), rho.mat()).real();
        led.bound("measure vs loop oracle", std::abs(lhs - oracle), 1e-12);

        // Chain rule through a conditioning set m containing s.
        LabelSet m = s;
        for (const auto& l : all) {
            if (rng.next_u64() & 1U) m.insert(l);
        }
        if (!m.empty() && measure_of(alg, m, rho).value > 1e-12) {
            const double chain = conditional_prob(alg, s, m, rho) * normalized_prob(alg, m, rho);
            led.bound("chain rule", std::abs(normalized_prob(alg, s, rho) - chain), 1e-10);
        }

        // Projective algebra built from a partition of unity.
        const std::size_t parts = uniform_int(rng, 1, n);
        const auto ps = random_partition(n, parts, rng, real);
        std::vector<Atom> atoms;
        for (std::size_t j = 0; j < parts; ++j) atoms.push_back({atom_label(j), PovOperator(ps[j], mode)});
        const PerceptionAlgebra proj(std::move(atoms));
        for (std::size_t j = 0; j < parts; ++j) {
            const double np = normalized_prob(proj, {atom_label(j)}, rho);
            led.bound("projective reduction", std::abs(np - trace_prob(Projector(ps[j], mode), rho)), 1e-12);
        }
    }
    return {led.pass(), led.summary(), 0.0, std::nullopt};
}

Outcome monte_carlo(bool real) {
    Rng rng(real ? 8007 : 1007);
    Ledger led;
    const RealityMode mode = mode_of(real);
    constexpr std::uint64_t kN = 1000000;
    auto check_freqs = [&](const SampleReport& r, const std::vector<double>& expected) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const double p = expected[i];
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(kN));
            const double dev = std::abs(r.empirical_freqs[i] - p);
            // Deviation in units of sigma; a zero-probability outcome must never occur.
            led.bound("max deviation / sigma", sigma > 0.0 ? dev / sigma : (dev == 0.0 ? 0.0 : 1e300), 5.0);
            total += r.outcome_counts[i];
        }
        led.require("counts sum to N", total == kN && r.total == kN);
    };

    std::optional<std::pair<ClassicalCycle, std::uint64_t>> first_classical;
    for (int k = 0; k < 20; ++k) {
        const ClassicalCycle c = random_cycle(uniform_int(rng, 2, 8), rng);
        const std::uint64_t seed = rng.next_u64();
        check_freqs(sample_classical(c, kN, seed), oracle_fractions(c));
        if (!first_classical) first_classical.emplace(c, seed);
    }

    std::vector<Projector> first_partition;
    std::optional<DensityMatrix> first_rho;
    std::uint64_t first_seed = 0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = uniform_int(rng, 2, 6);
        const auto parts = random_partition(n, uniform_int(rng, 2, n), rng, real);
        std::vector<Projector> ps;
        for (const auto& p : parts) ps.emplace_back(p, mode);
        const DensityMatrix rho = random_density(n, rng, real);
        std::vector<double> expected;
        for (const auto& p : parts) expected.push_back(naive_trace_product(p, rho.mat()).real());
        const std::uint64_t seed = rng.next_u64();
        check_freqs(sample_measurement(ps, rho, kN, seed), expected);
        if (!first_rho) {
            first_partition = ps;
            first_rho = rho;
            first_seed = seed;
        }
    }

    const std::string a = report_to_json(sample_classical(first_classical->first, kN, first_classical->second)).dump();
    const std::string b = report_to_json(sample_classical(first_classical->first, kN, first_classical->second)).dump();
    const std::string c = report_to_json(sample_measurement(first_partition, *first_rho, kN, first_seed)).dump();
    const std::string d = report_to_json(sample_measurement(first_partition, *first_rho, kN, first_seed)).dump();
    led.require("byte-identical reruns", a == b && c == d);
    return {led.pass(), "40 cases x 1e6 samples; " + led.summary(), 0.0, 30.0};
}

// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome(bool)> run;
};

Outcome timed(const Criterion& c, bool real) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run(real);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.limit && o.seconds >= *o.limit) {
        o.pass = false;
        o.detail += "; runtime over limit";
    }
    return o;
}

std::string timing(const Outcome& o) {
    char buf[64];
    if (o.limit) {
        std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", o.seconds, *o.limit);
    } else {
        std::snprintf(buf, sizeof buf, "%.2f s", o.seconds);
    }
    return buf;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "classical identity", classical_identity},
        {2, "time-average construction", time_average},
        {3, "unitary invariance", unitary_invariance},
        {4, "meet law boundary", meet_boundary},
        {5, "superselection suite", superselection},
        {6, "POV additivity", pov_additivity},
        {7, "Monte Carlo agreement", monte_carlo},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const Outcome o = timed(c, false);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << "; "
                  << timing(o) << std::endl;
        failed += o.pass ? 0 : 1;
    }

    // 8: everything again in REAL mode with real symmetric / orthogonal inputs.
    bool real_ok = true;
    std::ostringstream real_detail;
    double real_seconds = 0.0;
    for (const auto& c : criteria) {
        const Outcome o = timed(c, true);
        real_ok = real_ok && o.pass;
        real_seconds += o.seconds;
        std::cout << "     [8." << c.id << "] " << (o.pass ? "ok  " : "FAIL") << " " << c.name << " (real): " << o.detail
                  << "; " << timing(o) << std::endl;
        if (!o.pass) real_detail << " 8." << c.id << " failed;";
    }
    const ComplexMatrix complex_rho{{0.5, Complex(0.0, -0.5)}, {Complex(0.0, 0.5), 0.5}};
    const bool rejects = throws_kind(ErrorKind::NotReal, [&] { DensityMatrix(complex_rho, RealityMode::Real); }) &&
                         throws_kind(ErrorKind::NotReal, [&] {
                             Projector(ComplexMatrix{{0.5, Complex(0.0, -0.5)}, {Complex(0.0, 0.5), 0.5}},
                                       RealityMode::Real);
                         }) &&
                         throws_kind(ErrorKind::NotReal, [&] { PovOperator(complex_rho, RealityMode::Real); }) &&
                         throws_kind(ErrorKind::NotReal, [&] {
                             load_system_spec(Json::parse(R"({"rho": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]]})"), true);
                         });
    if (!rejects) real_detail << " complex input accepted in REAL mode;";
    const bool eight = real_ok && rejects;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f s", real_seconds);
    std::cout << (eight ? "PASS" : "FAIL") << " [8] real-mode restriction: criteria 1-7 rerun in REAL mode "
              << (real_ok ? "all pass" : "with failures") << ", complex input raises NotReal: "
              << (rejects ? "yes" : "no") << real_detail.str() << "; " << secs << std::endl;
    failed += eight ? 0 : 1;

    std::cout << (failed == 0 ? "all 8 criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
