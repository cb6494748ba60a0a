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

#pragma once

// Quantum Fourier transform and phase estimation over register C.
//
// Time convention: the controlled evolution for C-label c is exp(i A c t0 / T)
// with T = 2^t_bits, so an eigenvalue lambda lands on label
// c = lambda t0 / (2 pi) and decodes as lambda(c) = 2 pi c / t0.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qsvt/state.hpp"

namespace qsvt {

struct PhaseEstimationConfig {
    std::size_t t_bits = 0;
    double t0 = 0.0;
    /// Every in-scope eigenvalue maps to an integer label below T.
    bool exact = false;

    std::uint64_t T() const {
        return std::uint64_t{1} << t_bits;
    }
};

/// Eigenvalue <-> C-label correspondence for one configuration.
struct EigenEncoding {
    std::vector<double> eigenvalues;
    std::vector<std::uint64_t> labels;
    double t0 = 0.0;
    std::uint64_t T = 0;

    double decode(std::uint64_t label) const;
};

/// Picks t0 for the given (positive, distinct) eigenvalues. Integer
/// eigenvalues below 2^t_bits give t0 = 2 pi and an exact encoding;
/// otherwise t0 = 2 pi (T - 1) / lambda_max. Throws if two eigenvalues round
/// to the same label.
PhaseEstimationConfig choose_t0(const std::vector<double> &eigenvalues, std::size_t t_bits);

/// Nearest-integer labels for the eigenvalues under cfg; throws on collisions.
EigenEncoding encode(const PhaseEstimationConfig &cfg, const std::vector<double> &eigenvalues);

void qft(QuantumState &state, const QubitRange &range);
void iqft(QuantumState &state, const QubitRange &range);

/// For every qubit j of reg_C (weight 2^{t-1-j}) applies
/// exp(i A 2^{t-1-j} t0 / T) to `target`, controlled on that qubit.
/// `sign` = -1 applies the adjoint evolution. A is zero-padded to the target
/// register's dimension.
void conditional_evolution(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                           const QubitRange &target, const Eigen::MatrixXd &a, int sign = +1);

/// H on C, conditional evolution on `target`, inverse QFT on C. Throws if C
/// does not start in |0...0>.
void phase_estimate(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                    const QubitRange &target, const Eigen::MatrixXd &a);
void phase_estimate_inverse(QuantumState &state, const PhaseEstimationConfig &cfg, const QubitRange &reg_C,
                            const QubitRange &target, const Eigen::MatrixXd &a);

/// Probability mass on C labels outside `encoding.labels`.
double label_leakage(const QuantumState &state, const QubitRange &reg_C, const EigenEncoding &encoding);

}  // namespace qsvt
