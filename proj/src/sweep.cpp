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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qsvt/error.hpp"
#include "qsvt/harness.hpp"

namespace qsvt {

double TauPolicy::tau_for(double sigma1) const {
    return kind == Kind::fixed ? value : value * sigma1;
}

std::string TauPolicy::describe() const {
    std::ostringstream os;
    os << (kind == Kind::fixed ? "fixed:" : "fraction:") << value;
    return os.str();
}

TauPolicy TauPolicy::parse(const std::string &text) {
    TauPolicy policy;
    std::string number = text;
    if (text.rfind("fixed:", 0) == 0) {
        policy.kind = Kind::fixed;
        number = text.substr(6);
    } else if (text.rfind("fraction:", 0) == 0) {
        number = text.substr(9);
    }
    std::size_t used = 0;
    try {
        policy.value = std::stod(number, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != number.size()) {
        throw Error(ErrorCode::invalid_input, "bad tau policy '" + text + "' (expected '0.3' or 'fixed:0.5')");
    }
    if (!(policy.value > 0.0) || (policy.kind == Kind::fraction && !(policy.value < 1.0))) {
        throw Error(ErrorCode::invalid_input, "tau policy must give 0 < tau < sigma1");
    }
    return policy;
}

void SweepConfig::validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorCode::invalid_input, msg); };
    if (n_instances < 1) {
        fail("n_instances must be at least 1");
    }
    if (p_min < 1 || q_min < 1 || p_min > p_max || q_min > q_max) {
        fail("p and q ranges must satisfy 1 <= min <= max");
    }
    if (r_min < 1 || r_min > r_max || r_min > std::min(p_min, q_min)) {
        fail("rank range must satisfy 1 <= r_min <= r_max and r_min <= min(p_min, q_min)");
    }
    if (!(tau.value > 0.0) || (tau.kind == TauPolicy::Kind::fraction && !(tau.value < 1.0))) {
        fail("tau policy must give 0 < tau < sigma1");
    }
    if (methods.empty()) {
        fail("at least one alpha method is required");
    }
    if (jobs < 1) {
        fail("jobs must be at least 1");
    }
    NewtonConfig{m_bits}.validate();
    if (t_bits < 1 || t_bits > 20) {
        fail("t_bits must lie in [1, 20]");
    }
    if (sigma_override && sigma_override->size() > std::min(p_min, q_min)) {
        fail("singular value override longer than min(p_min, q_min)");
    }
    if (simulate) {
        if (t_bits > 8 || r_max > 8) {
            fail("--simulate is limited to t_bits <= 8 and rank <= 8");
        }
        const std::size_t qubits = 1 + m_bits + t_bits + std::max<std::size_t>(1, ceil_log2(p_max) + ceil_log2(q_max));
        if (qubits > kDefaultMaxQubits) {
            fail("--simulate needs " + std::to_string(qubits) + " qubits, above the limit of " +
                 std::to_string(kDefaultMaxQubits));
        }
        if (sigma_override) {
            fail("--simulate draws integer-eigenvalue spectra and cannot take a singular value override");
        }
    }
}

void SweepConfig::use_simulation_sizes() {
    p_min = q_min = 2;
    p_max = q_max = 8;
    r_min = 1;
    r_max = 4;
}

namespace {

struct Drawn {
    InputMatrix matrix;
    std::size_t p, q, r;
};

Drawn draw_instance(const SweepConfig &cfg, std::uint64_t seed) {
    Rng rng(seed);
    Drawn d;
    d.p = rng.index(cfg.p_min, cfg.p_max);
    d.q = rng.index(cfg.q_min, cfg.q_max);
    LowRankOptions opts;
    if (cfg.sigma_override) {
        d.r = cfg.sigma_override->size();
        opts.sigma = cfg.sigma_override;
    } else {
        d.r = rng.index(cfg.r_min, std::max(cfg.r_min, std::min({cfg.r_max, d.p, d.q})));
    }
    if (cfg.simulate) {
        // sigma^2 distinct integers below 2^t_bits: phase estimation is exact.
        const std::size_t labels = (std::size_t{1} << cfg.t_bits) - 1;
        d.r = std::min(d.r, labels);
        std::vector<std::size_t> pool(labels);
        for (std::size_t i = 0; i < labels; ++i) {
            pool[i] = i + 1;
        }
        std::vector<double> sigma;
        for (std::size_t k = 0; k < d.r; ++k) {
            std::swap(pool[k], pool[rng.index(k, labels - 1)]);
            sigma.push_back(std::sqrt(static_cast<double>(pool[k])));
        }
        opts.sigma = sigma;
    }
    d.matrix = random_lowrank(d.p, d.q, d.r, rng.next(), opts);
    return d;
}

std::string clean_message(std::string msg) {
    for (auto &ch : msg) {
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') {
            ch = ';';
        }
    }
    return msg;
}

std::vector<ExperimentRecord> run_instance(const SweepConfig &cfg, std::size_t index) {
    using clock = std::chrono::steady_clock;
    std::vector<ExperimentRecord> rows;
    ExperimentRecord base;
    base.instance = index;
    base.seed = derive_seed(cfg.seed, index);
    base.t_bits = cfg.t_bits;
    base.m_bits = cfg.m_bits;
    std::optional<Drawn> drawn;
    std::optional<SpectrumProfile> profile;
    std::vector<double> y_encoded;
    std::string setup_error;
    try {
        drawn = draw_instance(cfg, base.seed);
        base.p = drawn->p;
        base.q = drawn->q;
        base.r = drawn->r;
        const auto spec = decompose(drawn->matrix);
        base.tau = cfg.tau.tau_for(spec.sigma.front());
        const ThresholdSpec thr(base.tau, spec.sigma.front());
        profile = SpectrumProfile::from_threshold(spec.sigma, thr.tau());
        if (!cfg.simulate) {
            // Fixed-point model: the y each label would carry in register L,
            // with ideal phase estimation.
            const NewtonConfig newton{cfg.m_bits};
            for (double s : spec.sigma) {
                const auto res = newton_iterate(newton, thr.tau(), s * s);
                if (!res.converged()) {
                    throw Error(ErrorCode::not_converged,
                                "Newton iteration failed (" + to_string(res.status) + ") at sigma/tau=" +
                                    std::to_string(s / thr.tau()));
                }
                y_encoded.push_back(res.y.value());
                base.newton_iterations = std::max(base.newton_iterations, res.iterations);
            }
            base.exact = true;
        }
    } catch (const std::exception &e) {
        setup_error = clean_message(e.what());
    }
    for (const auto method : cfg.methods) {
        ExperimentRecord rec = base;
        rec.method = method;
        const auto start = clock::now();
        if (!setup_error.empty()) {
            rec.error = setup_error;
        } else {
            try {
                const auto sol = solve_alpha(*profile, method);
                rec.alpha = sol.alpha;
                rec.P_analytic = sol.P;
                rec.F_analytic = sol.F;
                if (cfg.simulate) {
                    PipelineConfig pc;
                    pc.matrix = drawn->matrix;
                    pc.tau = rec.tau;
                    pc.alpha = sol.alpha;
                    pc.t_bits = cfg.t_bits;
                    pc.newton.m_bits = cfg.m_bits;
                    const auto res = run_pipeline(pc);
                    rec.P_sim = res.P_sim;
                    rec.F_sim = res.F_sim;
                    rec.newton_iterations = res.newton_iterations;
                    rec.exact = res.exact();
                } else {
                    const auto enc = SpectrumProfile::from_fractions(profile->sigma, y_encoded);
                    rec.P_sim = probability(enc, sol.alpha);
                    rec.F_sim = fidelity_encoded(*profile, y_encoded, sol.alpha);
                }
            } catch (const std::exception &e) {
                rec.error = clean_message(e.what());
            }
        }
        if (cfg.timing) {
            rec.wall_time = std::chrono::duration<double>(clock::now() - start).count();
        }
        rows.push_back(std::move(rec));
    }
    return rows;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return std::nan("");
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const SweepConfig &cfg) {
    cfg.validate();
    std::vector<std::vector<ExperimentRecord>> per_instance(cfg.n_instances);
    const auto n = static_cast<long long>(cfg.n_instances);
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
    for (long long i = 0; i < n; ++i) {
        per_instance[static_cast<std::size_t>(i)] = run_instance(cfg, static_cast<std::size_t>(i));
    }
    std::vector<ExperimentRecord> out;
    for (auto &rows : per_instance) {
        for (auto &r : rows) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

SweepSummary summarize(const std::vector<ExperimentRecord> &records, double p_tolerance, double f_tolerance) {
    SweepSummary s;
    s.p_tolerance = p_tolerance;
    s.f_tolerance = f_tolerance;
    std::vector<AlphaMethod> order;
    for (const auto &r : records) {
        if (std::find(order.begin(), order.end(), r.method) == order.end()) {
            order.push_back(r.method);
        }
    }
    for (const auto m : order) {
        MethodSummary ms{m};
        std::vector<double> ps, fs;
        for (const auto &r : records) {
            if (r.method != m) {
                continue;
            }
            ++ms.rows;
            if (!r.ok()) {
                ++ms.errors;
                continue;
            }
            ps.push_back(r.P_sim);
            fs.push_back(r.F_sim);
        }
        ms.median_P = median(ps);
        ms.median_F = median(fs);
        s.methods.push_back(ms);
    }
    const auto find = [&](AlphaMethod m) -> const MethodSummary * {
        for (const auto &ms : s.methods) {
            if (ms.method == m && ms.rows > ms.errors) {
                return &ms;
            }
        }
        return nullptr;
    };
    const auto *intuitive = find(AlphaMethod::intuitive);
    const auto *taylor2 = find(AlphaMethod::taylor2);
    if (intuitive && taylor2) {
        s.has_comparison = true;
        s.median_P_difference = std::abs(intuitive->median_P - taylor2->median_P);
        s.median_F_margin = intuitive->median_F - taylor2->median_F;
        s.probability_verdict = s.median_P_difference <= p_tolerance;
        s.fidelity_verdict = s.median_F_margin >= -f_tolerance;
    }
    return s;
}

const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> cols = {
        "instance", "seed",  "p",     "q",          "r",          "tau",   "alpha_method",      "alpha",  "P_analytic",
        "F_analytic", "P_sim", "F_sim", "newton_iterations", "t_bits", "m_bits", "exact", "wall_time", "error",
    };
    return cols;
}

void write_summary(std::ostream &out, const SweepSummary &summary, const std::string &prefix) {
    for (const auto &m : summary.methods) {
        out << prefix << "method=" << to_string(m.method) << " rows=" << m.rows << " errors=" << m.errors
            << " median_P=" << fmt(m.median_P) << " median_F=" << fmt(m.median_F) << '\n';
    }
    if (!summary.has_comparison) {
        out << prefix << "comparison=none (needs intuitive and taylor2 rows)\n";
        return;
    }
    out << prefix << "median_P_difference=" << fmt(summary.median_P_difference) << " tolerance=" << fmt(summary.p_tolerance)
        << " verdict=" << (summary.probability_verdict ? "PASS" : "FAIL") << '\n';
    out << prefix << "median_F_margin=" << fmt(summary.median_F_margin) << " tolerance=-" << fmt(summary.f_tolerance)
        << " verdict=" << (summary.fidelity_verdict ? "PASS" : "FAIL") << '\n';
    out << prefix << "tolerances are tool defaults\n";
}

void write_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<ExperimentRecord> &records,
               const SweepSummary &summary) {
    out << "#schema=" << kCsvSchema << '\n';
    out << "# inputs: seeded synthetic low-rank matrices U diag(sigma) V^T with Haar factors and ";
    if (cfg.sigma_override) {
        out << "fixed sigma";
    } else if (cfg.simulate) {
        out << "sigma^2 distinct integers in [1, 2^t_bits - 1]";
    } else {
        out << "sigma log-uniform in [0.1, 10]";
    }
    out << ", standing in for an image-derived corpus that is not available\n";
    out << "# mode=" << (cfg.simulate ? "simulate" : "analytic") << " n=" << cfg.n_instances << " seed=" << cfg.seed
        << " p=" << cfg.p_min << ".." << cfg.p_max << " q=" << cfg.q_min << ".." << cfg.q_max << " r=" << cfg.r_min
        << ".." << cfg.r_max << " tau=" << cfg.tau.describe() << " t_bits=" << cfg.t_bits << " m_bits=" << cfg.m_bits
        << '\n';
    const auto &cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto &r : records) {
        out << r.instance << ',' << r.seed << ',' << r.p << ',' << r.q << ',' << r.r << ',' << fmt(r.tau) << ','
            << to_string(r.method) << ',' << fmt(r.alpha) << ',' << fmt(r.P_analytic) << ',' << fmt(r.F_analytic) << ','
            << fmt(r.P_sim) << ',' << fmt(r.F_sim) << ',' << r.newton_iterations << ',' << r.t_bits << ',' << r.m_bits
            << ',' << (r.exact ? 1 : 0) << ',' << (r.wall_time ? fmt(*r.wall_time) : std::string()) << ',' << r.error
            << '\n';
    }
    write_summary(out, summary, "# ");
}

}  // namespace qsvt
