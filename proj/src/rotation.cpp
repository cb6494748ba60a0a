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

#include "qsvt/rotation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsvt/error.hpp"
#include "qsvt/kernels.hpp"

namespace qsvt {

namespace {

struct Quantized {
    std::int64_t raw;
    bool folded;
    bool clamped;
};

Quantized quantize(double v, unsigned bits) {
    Quantized q{0, false, false};
    if (v > 1.0) {
        v = 2.0 - v;
        q.folded = true;
    }
    const double scaled = std::floor(std::ldexp(v, static_cast<int>(bits)) + 0.5);
    const auto max_raw = static_cast<double>((std::uint64_t{1} << bits) - 1);
    if (!(scaled >= 0.0)) {  // also catches NaN
        q.clamped = true;
        q.raw = 0;
    } else if (scaled > max_raw) {
        q.clamped = true;
        q.raw = static_cast<std::int64_t>(max_raw);
    } else {
        q.raw = static_cast<std::int64_t>(scaled);
    }
    return q;
}

}  // namespace

FixedPointCode::FixedPointCode(unsigned m_bits, std::uint64_t raw) : m_bits_(m_bits), raw_(raw) {
    if (m_bits == 0 || m_bits > 52) {
        throw Error(ErrorCode::invalid_input, "fixed-point width must be in [1, 52] bits");
    }
    if (raw > max_raw()) {
        throw Error(ErrorCode::invalid_input, "fixed-point raw value out of range");
    }
}

FixedPointCode FixedPointCode::from_value(double value, unsigned m_bits) {
    if (m_bits == 0 || m_bits > 52) {
        throw Error(ErrorCode::invalid_input, "fixed-point width must be in [1, 52] bits");
    }
    const double scaled = std::floor(std::ldexp(value, static_cast<int>(m_bits)) + 0.5);
    const auto max_raw = static_cast<double>((std::uint64_t{1} << m_bits) - 1);
    return FixedPointCode(m_bits, static_cast<std::uint64_t>(std::clamp(scaled, 0.0, max_raw)));
}

double FixedPointCode::value() const {
    return std::ldexp(static_cast<double>(raw_), -static_cast<int>(m_bits_));
}

FixedPointCode FixedPointCode::narrowed(unsigned m_bits) const {
    if (m_bits >= m_bits_) {
        return FixedPointCode(m_bits, raw_ << (m_bits - m_bits_));
    }
    const unsigned drop = m_bits_ - m_bits;
    const std::uint64_t r = (raw_ + (std::uint64_t{1} << (drop - 1))) >> drop;
    return FixedPointCode(m_bits, std::min(r, (std::uint64_t{1} << m_bits) - 1));
}

void NewtonConfig::validate() const {
    if (m_bits == 0 || working_bits() > 52) {
        throw Error(ErrorCode::invalid_input, "Newton register width must be in [1, 52] bits including guard bits");
    }
    if (max_iterations < 1) {
        throw Error(ErrorCode::invalid_input, "max_iterations must be at least 1");
    }
    if (!(initial >= 0.0 && initial < 1.0)) {
        throw Error(ErrorCode::invalid_input, "Newton initial value must lie in [0, 1)");
    }
}

double newton_map(double y, double tau, double sigma_sq) {
    const double d = y - 1.0;
    return -(sigma_sq / (2.0 * tau * tau)) * d * d * d + 1.5 * y - 0.5;
}

FixedPointCode newton_step(const FixedPointCode &y, double tau, double sigma_sq) {
    if (!(tau > 0.0)) {
        throw Error(ErrorCode::invalid_input, "tau must be positive");
    }
    const auto q = quantize(newton_map(y.value(), tau, sigma_sq), y.m_bits());
    return FixedPointCode(y.m_bits(), static_cast<std::uint64_t>(q.raw));
}

std::string to_string(NewtonStatus status) {
    switch (status) {
        case NewtonStatus::converged:
            return "converged";
        case NewtonStatus::thresholded:
            return "thresholded";
        case NewtonStatus::clamp_escape:
            return "clamp-escape";
        case NewtonStatus::non_monotone:
            return "non-monotone";
        case NewtonStatus::iteration_limit:
            return "iteration-limit";
    }
    return "unknown";
}

NewtonResult newton_iterate(const NewtonConfig &cfg, double tau, double sigma_sq) {
    cfg.validate();
    if (!(tau > 0.0) || !(sigma_sq > 0.0)) {
        throw Error(ErrorCode::invalid_input, "Newton iteration needs tau > 0 and sigma^2 > 0");
    }
    const unsigned w = cfg.working_bits();
    NewtonResult result{FixedPointCode(cfg.m_bits, 0), 0, NewtonStatus::converged, {}};
    if (std::sqrt(sigma_sq) <= tau) {
        result.status = NewtonStatus::thresholded;
        return result;
    }
    auto y = FixedPointCode::from_value(cfg.initial, w);
    result.trace.push_back(y.value());
    int clamp_hits = 0;
    for (int i = 1; i <= cfg.max_iterations; ++i) {
        const auto q = quantize(newton_map(y.value(), tau, sigma_sq), w);
        const FixedPointCode next(w, static_cast<std::uint64_t>(q.raw));
        result.iterations = i;
        result.trace.push_back(next.value());
        if (q.clamped && ++clamp_hits > cfg.max_clamp_hits) {
            result.status = NewtonStatus::clamp_escape;
            result.y = next.narrowed(cfg.m_bits);
            return result;
        }
        if (i >= 2 && next.raw() > y.raw() + 1) {
            result.status = NewtonStatus::non_monotone;
            result.y = next.narrowed(cfg.m_bits);
            return result;
        }
        if (next.raw() == y.raw()) {
            result.status = NewtonStatus::converged;
            result.y = next.narrowed(cfg.m_bits);
            return result;
        }
        y = next;
    }
    result.status = NewtonStatus::iteration_limit;
    result.y = y.narrowed(cfg.m_bits);
    return result;
}

// ---------------------------------------------------------------------------

BasisPermutation SigmaTauOracle::permutation() const {
    const std::uint64_t T = std::uint64_t{1} << t_bits;
    const std::uint64_t L = std::uint64_t{1} << m_bits;
    std::vector<std::uint64_t> image(T * L);
    for (std::uint64_t l = 0; l < L; ++l) {
        for (std::uint64_t c = 0; c < T; ++c) {
            image[l * T + c] = ((l ^ y_raw[c]) * T) + c;
        }
    }
    return BasisPermutation::from_image(m_bits + t_bits, std::move(image));
}

double SigmaTauOracle::max_occupied_y() const {
    std::uint64_t best = 0;
    for (std::size_t c = 0; c < y_raw.size(); ++c) {
        if (occupied[c]) {
            best = std::max(best, y_raw[c]);
        }
    }
    return std::ldexp(static_cast<double>(best), -static_cast<int>(m_bits));
}

SigmaTauOracle build_sigma_tau_oracle(const EigenEncoding &encoding, const NewtonConfig &cfg, double tau) {
    cfg.validate();
    if (!(tau > 0.0)) {
        throw Error(ErrorCode::invalid_input, "tau must be positive");
    }
    SigmaTauOracle oracle;
    oracle.m_bits = cfg.m_bits;
    oracle.t_bits = static_cast<std::size_t>(std::countr_zero(encoding.T));
    oracle.tau = tau;
    oracle.y_raw.assign(encoding.T, 0);
    oracle.status.assign(encoding.T, NewtonStatus::thresholded);
    oracle.occupied.assign(encoding.T, false);
    for (auto c : encoding.labels) {
        oracle.occupied[c] = true;
    }
    std::vector<NewtonResult> results(encoding.T, NewtonResult{FixedPointCode(cfg.m_bits, 0)});
    const auto T = static_cast<std::int64_t>(encoding.T);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 1; c < T; ++c) {
        results[c] = newton_iterate(cfg, tau, encoding.decode(static_cast<std::uint64_t>(c)));
    }
    for (std::uint64_t c = 1; c < encoding.T; ++c) {
        const auto &r = results[c];
        oracle.status[c] = r.status;
        if (r.converged()) {
            oracle.y_raw[c] = r.y.raw();
            oracle.max_iterations_used = std::max(oracle.max_iterations_used, r.iterations);
        } else if (oracle.occupied[c]) {
            std::ostringstream msg;
            msg << "Newton oracle did not converge for C label " << c << " (sigma^2 = " << encoding.decode(c)
                << ", tau = " << tau << ", sigma/tau = " << std::sqrt(encoding.decode(c)) / tau
                << "): " << to_string(r.status) << " after " << r.iterations << " iterations";
            throw Error(ErrorCode::not_converged, msg.str());
        }
    }
    return oracle;
}

void apply_sigma_tau_oracle(QuantumState &state, const RegisterLayout &layout, const SigmaTauOracle &oracle) {
    if (layout.reg_L.count != oracle.m_bits || layout.reg_C.count != oracle.t_bits) {
        throw Error(ErrorCode::invalid_input, "oracle widths do not match registers L and C");
    }
    std::vector<std::size_t> qubits = layout.reg_L.qubits();
    const auto c = layout.reg_C.qubits();
    qubits.insert(qubits.end(), c.begin(), c.end());
    apply_basis_oracle(state, qubits, oracle.permutation());
}

// ---------------------------------------------------------------------------

void RotationConfig::validate(double y_max) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorCode::invalid_input, "alpha must be positive and finite");
    }
    if (d_bits == 0) {
        throw Error(ErrorCode::invalid_input, "rotation cascade needs at least one bit");
    }
    if (!(alpha * y_max < std::numbers::pi)) {
        std::ostringstream msg;
        msg << "alpha * y_max = " << alpha * y_max << " must stay below pi";
        throw Error(ErrorCode::invalid_input, msg.str());
    }
}

void ry_cascade(QuantumState &state, const RegisterLayout &layout, const RotationConfig &cfg) {
    if (layout.reg_L.count != cfg.d_bits) {
        throw Error(ErrorCode::invalid_input, "cascade width does not match register L");
    }
    if (probability_of(state, layout.ancilla, 1) > 1e-12) {
        throw Error(ErrorCode::invalid_input, "rotation cascade needs the ancilla in |0>");
    }
    const std::size_t target[] = {layout.ancilla};
    for (unsigned j = 0; j < cfg.d_bits; ++j) {
        const double angle = std::ldexp(cfg.alpha, -static_cast<int>(j));
        apply_controlled(state, UnitaryMatrix::ry(angle), layout.reg_L.first + j, 1, target);
    }
}

double uncompute(QuantumState &state, const RegisterLayout &layout, const SigmaTauOracle &oracle,
                 const PhaseEstimationConfig &cfg, const QubitRange &evolution_target, const Eigen::MatrixXd &a,
                 double tol) {
    apply_sigma_tau_oracle(state, layout, oracle);
    phase_estimate_inverse(state, cfg, layout.reg_C, evolution_target, a);
    std::vector<std::size_t> qubits = layout.reg_L.qubits();
    const auto c = layout.reg_C.qubits();
    qubits.insert(qubits.end(), c.begin(), c.end());
    const double residual = std::max(0.0, 1.0 - kernels::omp::masked_probability(state.amplitudes(),
                                                                                  state.mask_of(qubits), 0));
    if (residual > tol) {
        std::ostringstream msg;
        msg << "uncompute left " << residual << " probability mass in registers L and C (tolerance " << tol
            << "); forward and backward configurations differ";
        throw Error(ErrorCode::numerical_guard, msg.str());
    }
    return residual;
}

}  // namespace qsvt
