// Copyright 2026 The qsvt-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qsvt/harness.hpp"

namespace {

using namespace qsvt;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string &name, const Outcome &o) {
    std::printf("criterion %d: %s  %s (%s)\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) {
        ++failures;
    }
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome worked_example() {
    const auto start = Clock::now();
    const auto rep = run_example({});
    const double elapsed = seconds_since(start);
    const auto &r = rep.result;
    const bool amps = std::abs(r.triples[0].simulated - 1.9999) <= 1e-3 &&
                      std::abs(r.triples[1].simulated - 0.8660) <= 1e-3;
    Outcome o;
    o.pass = std::abs(r.P_sim - kExampleP) <= 1e-3 && std::abs(r.F_sim - kExampleF) <= 1e-3 &&
             std::abs(r.N_alpha - kExampleNAlpha) <= 1e-3 && amps && r.num_qubits >= 7 && r.num_qubits <= 9 &&
             elapsed < 1.0;
    o.detail = fmt("P=%.6f F=%.6f N_alpha=%.6f amplitudes=(%.6f, %.6f) qubits=%zu runtime=%.3fs", r.P_sim, r.F_sim,
                   r.N_alpha, r.triples[0].simulated, r.triples[1].simulated, r.num_qubits, elapsed);
    return o;
}

Outcome intuitive_alpha() {
    const std::vector<double> sigma{2.0};
    const double a = alpha_intuitive(SpectrumProfile::from_threshold(sigma, 0.5)).alpha;
    return {std::abs(a - 2.0944) <= 1e-4, fmt("alpha=%.6f", a)};
}

Outcome analytic_agreement() {
    const auto start = Clock::now();
    double worst_p = 0.0, worst_f = 0.0;
    int errors = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto inst = dyadic_instance(seed, 4);
        PipelineConfig cfg;
        cfg.matrix = inst.matrix;
        cfg.tau = inst.tau;
        cfg.t_bits = 6;
        cfg.newton.m_bits = 8;
        try {
            const auto r = run_pipeline(cfg);
            worst_p = std::max(worst_p, std::abs(r.P_sim - r.P_analytic));
            worst_f = std::max(worst_f, std::abs(r.F_sim - r.F_analytic));
        } catch (const std::exception &) {
            ++errors;
        }
    }
    // Fixed-point decay: integer eigenvalues (exact phase labels) with
    // generic thresholds, so only the y register rounds.
    const std::vector<unsigned> ms{4, 8, 12};
    std::vector<double> err(ms.size(), 0.0);
    double alpha_max = 0.0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto inst = exact_encoding_instance(seed, 3, 2, 2);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            PipelineConfig cfg;
            cfg.matrix = inst.matrix;
            cfg.tau = inst.tau;
            cfg.t_bits = 3;
            cfg.newton.m_bits = ms[i];
            try {
                const auto r = run_pipeline(cfg);
                alpha_max = std::max(alpha_max, r.alpha);
                err[i] = std::max({err[i], std::abs(r.P_sim - r.P_analytic), std::abs(r.F_sim - r.F_analytic)});
            } catch (const std::exception &) {
                ++errors;
            }
        }
    }
    bool decay = true;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        decay = decay && err[i] <= 4 * alpha_max * std::ldexp(1.0, -static_cast<int>(ms[i]));
        if (i > 0) {
            decay = decay && err[i] < err[i - 1];
        }
    }
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = errors == 0 && worst_p < 1e-6 && worst_f < 1e-6 && decay && elapsed < 120;
    o.detail = fmt("50 instances: max|dP|=%.2e max|dF|=%.2e; m=4/8/12 error %.2e/%.2e/%.2e; failures=%d; %.1fs",
                   worst_p, worst_f, err[0], err[1], err[2], errors, elapsed);
    return o;
}

Outcome sweep_comparison() {
    const auto start = Clock::now();
    SweepConfig cfg;  // 120 instances, intuitive vs taylor2
    const auto records = run_sweep(cfg);
    const auto s = summarize(records);
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = records.size() == 240 && s.has_comparison && s.probability_verdict && s.fidelity_verdict && elapsed < 60;
    o.detail = fmt("rows=%zu median|dP|=%.5f (<= %.3f) median F margin=%.5f (>= -%.3f); %.1fs", records.size(),
                   s.median_P_difference, s.p_tolerance, s.median_F_margin, s.f_tolerance, elapsed);
    return o;
}

Outcome newton_suite() {
    NewtonConfig cfg;
    std::string fail;
    // Fixed-point identity.
    for (auto [sigma, tau] : {std::pair{2.0, 0.5}, std::pair{4.0, 1.0}, std::pair{8.0, 3.0}, std::pair{1.6, 1.4}}) {
        const auto y = FixedPointCode::from_value(1 - tau / sigma, 8);
        if (newton_step(y, tau, sigma * sigma) != y) {
            fail += " fixed-point";
        }
    }
    // Quadratic contraction.
    const double ulp = std::ldexp(1.0, -static_cast<int>(cfg.working_bits()));
    for (double ratio = 1.02; ratio < 2 * std::sqrt(3.0); ratio += 0.02) {
        const auto r = newton_iterate(cfg, 1.0, ratio * ratio);
        if (!r.converged()) {
            fail += fmt(" no-convergence@%.2f", ratio);
            continue;
        }
        const double y_star = 1 - 1 / ratio;
        for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
            const double e = std::abs(r.trace[i] - y_star);
            const double e_next = std::abs(r.trace[i + 1] - y_star);
            if (e_next > 1.5 * ratio * e * e + 0.5 * ratio * ratio * e * e * e + ulp) {
                fail += fmt(" contraction@%.2f", ratio);
            }
        }
    }
    // Guard beyond sigma/tau = 4.
    for (double ratio : {4.05, 4.5, 6.0, 10.0, 50.0}) {
        if (newton_iterate(cfg, 1.0, ratio * ratio).converged()) {
            fail += fmt(" guard@%.2f", ratio);
        }
    }
    // Brute force on a 1000-point grid of the convergent region.
    int compared = 0;
    for (int i = 0; i < 40; ++i) {
        for (int j = 0; j < 25; ++j) {
            const double tau = 0.05 + 0.4 * j;
            const double sigma = tau * (1.0 + 3.0 * (i + 1) / 40.0);
            const auto r = newton_iterate(cfg, tau, sigma * sigma);
            const double direct = std::min(std::floor(256 * (1 - tau / sigma) + 0.5) / 256, 255.0 / 256);
            if (!r.converged() || std::abs(r.y.value() - direct) > 1.0 / 256) {
                fail += " brute-force";
            }
            ++compared;
        }
    }
    return {fail.empty(), fmt("grid points=%d%s", compared, fail.empty() ? "" : (";" + fail.substr(0, 200)).c_str())};
}

double max_diff(const QuantumState &a, const QuantumState &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        d = std::max(d, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return d;
}

QuantumState random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &x : v) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : v) {
        x /= std::sqrt(norm);
    }
    return QuantumState::from_amplitudes(std::move(v));
}

Outcome operator_identities() {
    std::mt19937_64 rng(2026);
    double qft_dev = 0.0, pe_dev = 0.0, oracle_dev = 0.0, ry_dev = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        // QFT round trip on a 6-qubit register inside 8 qubits.
        auto s = random_state(8, rng);
        auto t = s;
        qft(t, {1, 6});
        iqft(t, {1, 6});
        qft_dev = std::max(qft_dev, max_diff(s, t));

        // Phase estimation and its adjoint, as full operators on C (t=3) x B (2 qubits).
        const Eigen::MatrixXd a = (Eigen::MatrixXd(4, 4) << 3, 1, 0, 0, 1, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 5).finished();
        const auto pe = choose_t0({1.38, 3.62, 1.0, 5.0}, 3);
        const QubitRange c{0, 3}, b{3, 2};
        s = random_state(5, rng);
        t = s;
        const std::vector<std::size_t> cq{0, 1, 2};
        for (auto q : cq) {
            apply_unitary(t, UnitaryMatrix::hadamard(), std::vector<std::size_t>{q});
        }
        conditional_evolution(t, pe, c, b, a, +1);
        iqft(t, c);
        qft(t, c);
        conditional_evolution(t, pe, c, b, a, -1);
        for (auto q : cq) {
            apply_unitary(t, UnitaryMatrix::hadamard(), std::vector<std::size_t>{q});
        }
        pe_dev = std::max(pe_dev, max_diff(s, t));

        // Oracle applied twice.
        NewtonConfig cfg;
        cfg.m_bits = 3;
        const auto enc = encode(choose_t0({4.0, 1.0}, 3), {4.0, 1.0});
        const auto oracle = build_sigma_tau_oracle(enc, cfg, 0.5);
        const auto layout = RegisterLayout::standard(3, 3, 2);
        s = random_state(layout.num_qubits(), rng);
        t = s;
        apply_sigma_tau_oracle(t, layout, oracle);
        apply_sigma_tau_oracle(t, layout, oracle);
        oracle_dev = std::max(oracle_dev, max_diff(s, t));
    }
    // Cascade against a single R_y(2 alpha theta) on every theta block.
    for (unsigned d = 1; d <= 6; ++d) {
        const auto layout = RegisterLayout::standard(d, 0, 1);
        const double alpha = 1.234;
        for (std::uint64_t raw = 0; raw < (std::uint64_t{1} << d); ++raw) {
            auto s = new_state(layout);
            for (unsigned j = 0; j < d; ++j) {
                if ((raw >> (d - 1 - j)) & 1) {
                    apply_unitary(s, UnitaryMatrix::pauli_x(), std::vector<std::size_t>{layout.reg_L.first + j});
                }
            }
            ry_cascade(s, layout, RotationConfig{alpha, d});
            const auto mono = UnitaryMatrix::ry(2 * alpha * std::ldexp(static_cast<double>(raw), -static_cast<int>(d)));
            const std::uint64_t a1 = std::uint64_t{1} << (layout.num_qubits() - 1);
            ry_dev = std::max(ry_dev, std::abs(s.amplitudes()[raw << 1] - mono(0, 0)));
            ry_dev = std::max(ry_dev, std::abs(s.amplitudes()[a1 | (raw << 1)] - mono(1, 0)));
        }
    }
    const double worst = std::max({qft_dev, pe_dev, oracle_dev, ry_dev});
    return {worst <= 1e-10,
            fmt("iqft.qft %.1e, PE adjoint %.1e, oracle^2 %.1e, ry cascade %.1e", qft_dev, pe_dev, oracle_dev, ry_dev)};
}

Outcome derivative_check() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    double worst_rel = 0.0, worst_id = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> sigma(1 + rng() % 10);
        for (auto &s : sigma) {
            s = u(rng);
        }
        std::ranges::sort(sigma, std::greater<>());
        const double tau = std::uniform_real_distribution<double>(0.05, 0.95)(rng) * sigma.front();
        const auto p = SpectrumProfile::from_threshold(sigma, tau);
        const double alpha = std::uniform_real_distribution<double>(0.05, std::numbers::pi / p.y1())(rng);
        const double h = 1e-5;
        const double fd = (g_objective(p, alpha + h) - g_objective(p, alpha - h)) / (2 * h);
        const double exact = g_derivative(p, alpha);
        worst_rel = std::max(worst_rel, std::abs(fd - exact) / std::max(std::abs(exact), 1e-3));
        worst_id = std::max(worst_id,
                            std::abs(g_objective(p, alpha) - std::sqrt(probability(p, alpha)) * fidelity_analytic(p, alpha)));
    }
    return {worst_rel < 1e-6 && worst_id <= 1e-12, fmt("max relative error %.1e, G identity %.1e", worst_rel, worst_id)};
}

}  // namespace

int main() {
    report(1, "worked example by state-vector simulation", worked_example());
    report(2, "intuitive alpha closed form", intuitive_alpha());
    report(3, "simulated vs analytic agreement", analytic_agreement());
    report(4, "intuitive vs taylor2 sweep", sweep_comparison());
    report(5, "Newton oracle properties", newton_suite());
    report(6, "operator identities", operator_identities());
    report(7, "objective derivative", derivative_check());
    std::printf("criterion 8: N/A   asymptotic speedup (not measurable on a classical simulator; excluded)\n");
    std::printf("%s: %d of 7 checked criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
