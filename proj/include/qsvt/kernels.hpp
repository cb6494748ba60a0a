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

// Amplitude-array kernels. Every kernel exists twice: `serial` is the
// straightforward reference loop, `omp` partitions the same index space
// across OpenMP threads. Tests check the two against each other and
// bench/ times them.
//
// Indices are plain bit positions into the amplitude index (bit 0 is the
// least significant). Mapping from qubit numbers to bit positions is the
// caller's business (see state.hpp).

#include <complex>
#include <cstdint>
#include <span>

namespace qsvt::kernels {

using cplx = std::complex<double>;

/// Dense gate: amplitudes with (index & control_mask) == control_value have
/// the sub-vector over `target_bits` multiplied by the row-major matrix.
/// target_bits[0] is the most significant bit of the matrix's local index.
struct DenseGate {
    std::span<const unsigned> target_bits;
    std::span<const cplx> matrix;
    std::uint64_t control_mask = 0;
    std::uint64_t control_value = 0;
};

/// Relabels basis states: for every index, the label read from `bits`
/// (bits[0] most significant) is replaced by image[label]. `image` must be a
/// permutation of [0, 2^|bits|).
struct Relabel {
    std::span<const unsigned> bits;
    std::span<const std::uint64_t> image;
};

namespace serial {
void apply_gate(std::span<cplx> amps, const DenseGate &gate);
void relabel(std::span<const cplx> in, std::span<cplx> out, const Relabel &map);
double masked_probability(std::span<const cplx> amps, std::uint64_t mask, std::uint64_t value);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
void scale(std::span<cplx> amps, double factor);
}  // namespace serial

namespace omp {
void apply_gate(std::span<cplx> amps, const DenseGate &gate);
void relabel(std::span<const cplx> in, std::span<cplx> out, const Relabel &map);
double masked_probability(std::span<const cplx> amps, std::uint64_t mask, std::uint64_t value);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
void scale(std::span<cplx> amps, double factor);
}  // namespace omp

/// Number of fixed reduction blocks used by the parallel reductions. Partial
/// sums are formed per block and combined in block order, so results do not
/// depend on the thread count.
inline constexpr std::size_t kReductionBlocks = 64;

}  // namespace qsvt::kernels
