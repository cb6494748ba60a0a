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

// Dense state-vector simulation primitives.
//
// Qubit ordering: qubit 0 is the most significant bit of the amplitude
// index, so a basis label reads left to right as |q0 q1 ... q_{n-1}>. Inside
// every register the lowest-numbered qubit is the most significant bit of
// the register's value.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qsvt {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultMaxQubits = 26;
inline constexpr double kDefaultPostSelectFloor = 1e-12;

/// Contiguous run of qubits [first, first + count).
struct QubitRange {
    std::size_t first = 0;
    std::size_t count = 0;

    std::size_t end() const {
        return first + count;
    }
    bool contains(std::size_t q) const {
        return q >= first && q < end();
    }
    std::vector<std::size_t> qubits() const;
};

/// Ancilla a, threshold register L, eigenvalue register C and data register B,
/// laid out in that order starting at qubit 0.
struct RegisterLayout {
    std::size_t ancilla = 0;
    QubitRange reg_L;
    QubitRange reg_C;
    QubitRange reg_B;

    static RegisterLayout standard(std::size_t m_bits, std::size_t t_bits, std::size_t b_qubits);
    std::size_t num_qubits() const;
    /// Throws unless the four registers are disjoint and cover [0, num_qubits()).
    void validate() const;
};

/// Square unitary on a power-of-two dimension, row-major.
class UnitaryMatrix {
  public:
    /// Throws if the matrix is not square, not a power of two, or U^dagger U
    /// differs from I by more than `tol` in any entry.
    UnitaryMatrix(std::size_t dim, std::vector<cplx> entries, double tol = 1e-10);

    static UnitaryMatrix identity(std::size_t dim);
    static UnitaryMatrix pauli_x();
    static UnitaryMatrix pauli_y();
    static UnitaryMatrix hadamard();
    /// exp(-i angle Y / 2).
    static UnitaryMatrix ry(double angle);
    /// diag(1, e^{i phi}).
    static UnitaryMatrix phase(double phi);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t num_qubits() const;
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim_ + c];
    }
    std::span<const cplx> entries() const {
        return entries_;
    }
    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;

  private:
    struct Unchecked {};
    UnitaryMatrix(Unchecked, std::size_t dim, std::vector<cplx> entries);

    std::size_t dim_;
    std::vector<cplx> entries_;
};

class QuantumState {
  public:
    /// |0...0> on n qubits; throws past `max_qubits`.
    static QuantumState zero(std::size_t n_qubits, std::size_t max_qubits = kDefaultMaxQubits);
    /// Adopts an amplitude vector; length must be a power of two and the norm 1 within 1e-10.
    static QuantumState from_amplitudes(std::vector<cplx> amplitudes);

    std::size_t num_qubits() const {
        return n_qubits_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::span<cplx> mutable_amplitudes() {
        return amps_;
    }
    double norm() const;
    /// Bit position of a qubit inside the amplitude index.
    unsigned bit_of(std::size_t qubit) const {
        return static_cast<unsigned>(n_qubits_ - 1 - qubit);
    }
    /// Index mask selecting the given qubits.
    std::uint64_t mask_of(std::span<const std::size_t> qubits) const;
    /// Probability that every qubit in the range reads 0.
    double probability_register_zero(const QubitRange &range) const;

  private:
    QuantumState(std::size_t n, std::vector<cplx> amps) : n_qubits_(n), amps_(std::move(amps)) {
    }
    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

/// A permutation of the 2^width basis labels of some register set.
class BasisPermutation {
  public:
    /// Completes a partial injective map into a full permutation. Unspecified
    /// labels that are not already used as images stay fixed; the remaining
    /// unspecified labels are paired in ascending order with the remaining
    /// free images, also ascending. Throws if `partial` is not injective or a
    /// label is out of range.
    static BasisPermutation complete(std::size_t width, const std::map<std::uint64_t, std::uint64_t> &partial);
    static BasisPermutation from_image(std::size_t width, std::vector<std::uint64_t> image);
    static BasisPermutation identity(std::size_t width);

    std::size_t width() const {
        return width_;
    }
    std::uint64_t operator()(std::uint64_t label) const {
        return image_[label];
    }
    std::span<const std::uint64_t> image() const {
        return image_;
    }
    BasisPermutation inverse() const;

  private:
    BasisPermutation(std::size_t width, std::vector<std::uint64_t> image)
        : width_(width), image_(std::move(image)) {
    }
    std::size_t width_;
    std::vector<std::uint64_t> image_;
};

struct PostSelection {
    QuantumState state;
    double probability;
};

QuantumState new_state(const RegisterLayout &layout, std::size_t max_qubits = kDefaultMaxQubits);

/// Writes a unit vector into a register that currently reads |0...0>; the
/// rest of the state is tensored with it unchanged.
void load_register(QuantumState &state, const QubitRange &range, std::span<const cplx> amplitudes);

/// U on `targets` (targets[0] is the matrix's most significant qubit).
void apply_unitary(QuantumState &state, const UnitaryMatrix &u, std::span<const std::size_t> targets);

/// U on `targets` restricted to the subspace where `control` reads `control_value`.
void apply_controlled(QuantumState &state, const UnitaryMatrix &u, std::size_t control, int control_value,
                      std::span<const std::size_t> targets);

/// Moves the amplitude at register label x to label perm(x).
void apply_basis_oracle(QuantumState &state, std::span<const std::size_t> qubits, const BasisPermutation &perm);

/// Probability of reading `value` on `qubit`.
double probability_of(const QuantumState &state, std::size_t qubit, int value);

/// Conditions on `qubit` reading `value`. Throws ErrorCode::fully_thresholded
/// when the outcome probability is below `floor`.
PostSelection post_select(const QuantumState &state, std::size_t qubit, int value,
                          double floor = kDefaultPostSelectFloor);

/// Marginal distribution of the register's value (length 2^range.count).
std::vector<double> register_distribution(const QuantumState &state, const QubitRange &range);

/// <a|b>.
cplx overlap(const QuantumState &a, const QuantumState &b);
cplx overlap(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace qsvt
