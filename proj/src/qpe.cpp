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

#include "qsvt/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qsvt/error.hpp"
#include "qsvt/spectral.hpp"

namespace qsvt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIntegralTol = 1e-9;

bool near_integer(double x) {
    return std::abs(x - std::round(x)) <= kIntegralTol * std::max(1.0, std::abs(x));
}

BasisPermutation bit_reversal(std::size_t width) {
    std::vector<std::uint64_t> image(std::size_t{1} << width);
    for (std::uint64_t x = 0; x < image.size(); ++x) {
        std::uint64_t r = 0;
        for (std::size_t b = 0; b < width; ++b) {
            r |= ((x >> b) & 1) << (width - 1 - b);
        }
        image[x] = r;
    }
    return BasisPermutation::from_image(width, std::move(image));
}

void apply_hadamards(QuantumState &state, const QubitRange &range) {
    const auto h = UnitaryMatrix::hadamard();
    for (std::size_t q = range.first; q < range.end(); ++q) {
        const std::size_t t[] = {q};
        apply_unitary(state, h, t);
    }
}

void controlled_phase(QuantumState &state, std::size_t control, std::size_t target, double phi) {
    const std::size_t t[] = {target};
    apply_controlled(state, UnitaryMatrix::phase(phi), control, 1, t);
}

}  // namespace

double EigenEncoding::decode(std::uint64_t label) const {
    return kTwoPi * static_cast<double>(label) / t0;
}

PhaseEstimationConfig choose_t0(const std::vector<double> &eigenvalues, std::size_t t_bits) {
    if (eigenvalues.empty()) {
        throw Error(ErrorCode::invalid_input, "no eigenvalues to encode");
    }
    if (t_bits == 0 || t_bits > 20) {
        throw Error(ErrorCode::invalid_input, "t_bits must be in [1, 20]");
    }
    for (double l : eigenvalues) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw Error(ErrorCode::invalid_input, "eigenvalues must be positive and finite");
        }
    }
    PhaseEstimationConfig cfg;
    cfg.t_bits = t_bits;
    const double lmax = *std::max_element(eigenvalues.begin(), eigenvalues.end());
    const bool integral = std::all_of(eigenvalues.begin(), eigenvalues.end(), near_integer);
    if (integral && std::round(lmax) < static_cast<double>(cfg.T())) {
        cfg.t0 = kTwoPi;
        cfg.exact = true;
    } else {
        cfg.t0 = kTwoPi * static_cast<double>(cfg.T() - 1) / lmax;
        cfg.exact = false;
    }
    encode(cfg, eigenvalues);
    return cfg;
}

EigenEncoding encode(const PhaseEstimationConfig &cfg, const std::vector<double> &eigenvalues) {
    EigenEncoding enc;
    enc.eigenvalues = eigenvalues;
    enc.t0 = cfg.t0;
    enc.T = cfg.T();
    std::set<std::uint64_t> seen;
    for (double l : eigenvalues) {
        const double x = l * cfg.t0 / kTwoPi;
        const double c = std::round(x);
        if (c < 0.0 || c >= static_cast<double>(enc.T)) {
            std::ostringstream msg;
            msg << "eigenvalue " << l << " does not fit in " << cfg.t_bits << " label bits";
            throw Error(ErrorCode::invalid_input, msg.str());
        }
        const auto label = static_cast<std::uint64_t>(c);
        if (!seen.insert(label).second) {
            std::ostringstream msg;
            msg << "eigenvalue collision: two eigenvalues share label " << label << " at " << cfg.t_bits
                << " bits";
            throw Error(ErrorCode::invalid_input, msg.str());
        }
        enc.labels.push_back(label);
    }
    return enc;
}

void qft(QuantumState &state, const QubitRange &range) {
    const std::size_t t = range.count;
    const auto h = UnitaryMatrix::hadamard();
    for (std::size_t j = 0; j < t; ++j) {
        const std::size_t target[] = {range.first + j};
        apply_unitary(state, h, target);
        for (std::size_t k = j + 1; k < t; ++k) {
            controlled_phase(state, range.first + k, range.first + j, kTwoPi / std::ldexp(1.0, int(k - j + 1)));
        }
    }
    const auto qs = range.qubits();
    apply_basis_oracle(state, qs, bit_reversal(t));
}

void iqft(QuantumState &state, const QubitRange &range) {
    const std::size_t t = range.count;
    const auto h = UnitaryMatrix::hadamard();
    const auto qs = range.qubits();
    apply_basis_oracle(state, qs, bit_reversal(t));
    for (std::size_t j = t; j-- > 0;) {
        for (std::size_t k = t; k-- > j + 1;) {
            controlled_phase(state, range.first + k, range.first + j, -kTwoPi / std::ldexp(1.0, int(k - j + 1)));
        }
        const std::size_t target[] = {range.first + j};
        apply_unitary(state, h, target);
    }
}

void conditional_evolution(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                           const QubitRange &target, const Eigen::MatrixXd &a, int sign) {
    if (reg_C.count != cfg.t_bits) {
        throw Error(ErrorCode::invalid_input, "register C width does not match t_bits");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << target.count);
    if (a.rows() != a.cols() || a.rows() > dim) {
        std::ostringstream msg;
        msg << "Hamiltonian of size " << a.rows() << "x" << a.cols() << " does not fit a " << target.count
            << "-qubit register";
        throw Error(ErrorCode::invalid_input, msg.str());
    }
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(dim, dim);
    padded.topLeftCorner(a.rows(), a.cols()) = a;
    const auto targets = target.qubits();
    const double T = static_cast<double>(cfg.T());
    for (std::size_t j = 0; j < cfg.t_bits; ++j) {
        const double power = std::ldexp(1.0, static_cast<int>(cfg.t_bits - 1 - j));
        const auto u = herm_exp(padded, sign * power * cfg.t0 / T);
        apply_controlled(state, u, reg_C.first + j, 1, targets);
    }
}

void phase_estimate(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                    const QubitRange &target, const Eigen::MatrixXd &a) {
    if (std::abs(state.probability_register_zero(reg_C) - 1.0) > 1e-10) {
        throw Error(ErrorCode::invalid_input, "phase estimation needs register C in |0...0>");
    }
    apply_hadamards(state, reg_C);
    conditional_evolution(state, cfg, reg_C, target, a, +1);
    iqft(state, reg_C);
}

void phase_estimate_inverse(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                            const QubitRange &target, const Eigen::MatrixXd &a) {
    qft(state, reg_C);
    conditional_evolution(state, cfg, reg_C, target, a, -1);
    apply_hadamards(state, reg_C);
}

double label_leakage(const QuantumState &state, const QubitRange &reg_C, const EigenEncoding &encoding) {
    const auto dist = register_distribution(state, reg_C);
    double on_labels = 0.0;
    for (auto c : encoding.labels) {
        on_labels += dist[c];
    }
    return std::max(0.0, 1.0 - on_labels);
}

}  // namespace qsvt
