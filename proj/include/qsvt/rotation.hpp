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

// Controlled rotation U_cR = (threshold oracle) then (R_y cascade).
//
// The threshold oracle evaluates y = (1 - tau / sigma)_+ per C-label with a
// fixed-point Newton iteration and XOR-writes the m-bit result into register
// L. The cascade then rotates the ancilla by R_y(2 alpha y) using one
// controlled rotation per L qubit.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qsvt/qpe.hpp"
#include "qsvt/state.hpp"

namespace qsvt {

/// Unsigned m-bit binary fraction raw / 2^m in [0, 1).
class FixedPointCode {
  public:
    FixedPointCode(unsigned m_bits, std::uint64_t raw);

    /// Round to nearest (ties up), clamped into [0, 1 - 2^-m].
    static FixedPointCode from_value(double value, unsigned m_bits);

    unsigned m_bits() const {
        return m_bits_;
    }
    std::uint64_t raw() const {
        return raw_;
    }
    double value() const;
    /// Re-rounds to fewer bits (round to nearest, ties up, clamped).
    FixedPointCode narrowed(unsigned m_bits) const;
    std::uint64_t max_raw() const {
        return (std::uint64_t{1} << m_bits_) - 1;
    }

    friend bool operator==(const FixedPointCode &, const FixedPointCode &) = default;

  private:
    unsigned m_bits_;
    std::uint64_t raw_;
};

struct NewtonConfig {
    unsigned m_bits = 8;
    /// Extra fraction bits carried while iterating; the result is rounded to m_bits.
    unsigned guard_bits = 4;
    int max_iterations = 40;
    double initial = 0.5;
    /// Clamp hits tolerated before the iteration is declared divergent.
    int max_clamp_hits = 1;

    unsigned working_bits() const {
        return m_bits + guard_bits;
    }
    void validate() const;
};

/// The cubic y -> -(sigma^2 / 2 tau^2)(y - 1)^3 + 3y/2 - 1/2 in full precision.
double newton_map(double y, double tau, double sigma_sq);

/// One fixed-point step at the width of `y`. A value above 1 is folded onto
/// 2 - v (the cubic is symmetric about y = 1, so this maps the mirror root
/// 1 + tau/sigma onto 1 - tau/sigma); the result is then clamped into
/// [0, 1 - 2^-m] and rounded.
FixedPointCode newton_step(const FixedPointCode &y, double tau, double sigma_sq);

enum class NewtonStatus {
    converged,
    thresholded,      // sigma <= tau, y = 0 without iterating
    clamp_escape,     // iterate left the representable range too often
    non_monotone,     // the post-overshoot iterates stopped decreasing
    iteration_limit,
};

struct NewtonResult {
    FixedPointCode y;  // m_bits wide
    int iterations = 0;
    NewtonStatus status = NewtonStatus::converged;
    /// Working-precision iterates, starting with the initial value.
    std::vector<double> trace;

    bool converged() const {
        return status == NewtonStatus::converged || status == NewtonStatus::thresholded;
    }
};

std::string to_string(NewtonStatus status);

/// Iterates newton_step from cfg.initial until two successive iterates agree
/// exactly. Divergence guard: fails once the clamp is hit more than
/// cfg.max_clamp_hits times, or when an iterate after the first rises by
/// more than one unit in the last place (a Newton iteration inside its basin
/// approaches this root monotonically from the first step on).
NewtonResult newton_iterate(const NewtonConfig &cfg, double tau, double sigma_sq);

/// Basis oracle |l>^L |c>^C -> |l XOR y(c)>^L |c>^C.
struct SigmaTauOracle {
    unsigned m_bits = 0;
    std::size_t t_bits = 0;
    double tau = 0.0;
    std::vector<std::uint64_t> y_raw;       // per C-label
    std::vector<NewtonStatus> status;       // per C-label
    std::vector<bool> occupied;             // label carries an encoded eigenvalue
    int max_iterations_used = 0;

    /// Permutation over the qubit list L ++ C.
    BasisPermutation permutation() const;
    /// Largest y written for an occupied label.
    double max_occupied_y() const;
};

/// Runs newton_iterate for every C-label. Labels carrying an encoded
/// eigenvalue must converge (ErrorCode::not_converged otherwise); any other
/// label that fails keeps L unchanged.
SigmaTauOracle build_sigma_tau_oracle(const EigenEncoding &encoding, const NewtonConfig &cfg, double tau);

void apply_sigma_tau_oracle(QuantumState &state, const RegisterLayout &layout, const SigmaTauOracle &oracle);

struct RotationConfig {
    double alpha = 0.0;
    unsigned d_bits = 0;

    /// Throws unless alpha > 0 and alpha * y_max < pi, where y_max is the
    /// largest value register L will hold.
    void validate(double y_max) const;
};

/// d controlled rotations: L qubit j (weight 2^-(j+1)) controls R_y(alpha 2^{-j}) on the ancilla.
/// Throws if the ancilla is not |0> on the whole state.
void ry_cascade(QuantumState &state, const RegisterLayout &layout, const RotationConfig &cfg);

/// Second half of the circuit: oracle again, then inverse phase estimation.
/// Throws ErrorCode::numerical_guard if L or C keep more than `tol` probability
/// mass away from |0>. Returns that residual mass.
double uncompute(QuantumState &state, const RegisterLayout &layout, const SigmaTauOracle &oracle,
                 const PhaseEstimationConfig &cfg, const QubitRange &evolution_target, const Eigen::MatrixXd &a,
                 double tol = 1e-9);

}  // namespace qsvt
