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

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "qsvt/kernels.hpp"

namespace qsvt::kernels::detail {

// Spreads the bits of `j` around zero bits at the (ascending) positions.
inline std::uint64_t insert_zero_bits(std::uint64_t j, const std::vector<unsigned> &sorted_bits) {
    for (unsigned p : sorted_bits) {
        const std::uint64_t low = j & ((std::uint64_t{1} << p) - 1);
        j = ((j >> p) << (p + 1)) | low;
    }
    return j;
}

struct GatePlan {
    std::vector<unsigned> sorted_bits;
    std::vector<std::uint64_t> offsets;  // local index -> index offset
    std::size_t dim = 0;
    std::uint64_t outer = 0;             // number of base indices
};

inline GatePlan plan_gate(std::size_t n_amps, std::span<const unsigned> target_bits) {
    GatePlan plan;
    const std::size_t k = target_bits.size();
    plan.dim = std::size_t{1} << k;
    plan.sorted_bits.assign(target_bits.begin(), target_bits.end());
    std::sort(plan.sorted_bits.begin(), plan.sorted_bits.end());
    plan.offsets.resize(plan.dim);
    for (std::size_t l = 0; l < plan.dim; ++l) {
        std::uint64_t off = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if ((l >> (k - 1 - i)) & 1) {
                off |= std::uint64_t{1} << target_bits[i];
            }
        }
        plan.offsets[l] = off;
    }
    plan.outer = n_amps >> k;
    return plan;
}

inline void gate_at(std::span<cplx> amps, const DenseGate &gate, const GatePlan &plan, std::uint64_t base, cplx *scratch) {
    if ((base & gate.control_mask) != gate.control_value) {
        return;
    }
    const std::size_t dim = plan.dim;
    for (std::size_t l = 0; l < dim; ++l) {
        scratch[l] = amps[base + plan.offsets[l]];
    }
    for (std::size_t r = 0; r < dim; ++r) {
        cplx acc = 0.0;
        const cplx *row = gate.matrix.data() + r * dim;
        for (std::size_t l = 0; l < dim; ++l) {
            acc += row[l] * scratch[l];
        }
        amps[base + plan.offsets[r]] = acc;
    }
}

// Indices of the amplitudes a controlled gate touches: the target and control
// bits are held fixed, so only the matching subspace is enumerated.
struct SubspacePlan {
    std::vector<unsigned> fixed_bits;  // ascending
    std::uint64_t outer = 0;
};

inline SubspacePlan plan_subspace(std::size_t n_amps, std::span<const unsigned> target_bits, std::uint64_t control_mask) {
    SubspacePlan plan;
    plan.fixed_bits.assign(target_bits.begin(), target_bits.end());
    for (unsigned b = 0; b < 64; ++b) {
        if ((control_mask >> b) & 1) {
            plan.fixed_bits.push_back(b);
        }
    }
    std::sort(plan.fixed_bits.begin(), plan.fixed_bits.end());
    plan.outer = n_amps >> plan.fixed_bits.size();
    return plan;
}

// (a.re + i a.im)(b.re + i b.im) without the C99 Annex G NaN/Inf recovery
// that std::complex multiplication pays for.
inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// gate_at without the control test; `base` already satisfies the controls.
inline void gate_at_unchecked(std::span<cplx> amps, const DenseGate &gate, const GatePlan &plan, std::uint64_t base,
                              cplx *scratch) {
    const std::size_t dim = plan.dim;
    if (dim == 2) {
        const cplx *m = gate.matrix.data();
        const std::uint64_t i0 = base + plan.offsets[0];
        const std::uint64_t i1 = base + plan.offsets[1];
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = mul(m[0], a0) + mul(m[1], a1);
        amps[i1] = mul(m[2], a0) + mul(m[3], a1);
        return;
    }
    for (std::size_t l = 0; l < dim; ++l) {
        scratch[l] = amps[base + plan.offsets[l]];
    }
    for (std::size_t r = 0; r < dim; ++r) {
        cplx acc = 0.0;
        const cplx *row = gate.matrix.data() + r * dim;
        for (std::size_t l = 0; l < dim; ++l) {
            acc += mul(row[l], scratch[l]);
        }
        amps[base + plan.offsets[r]] = acc;
    }
}

struct RelabelPlan {
    std::uint64_t mask = 0;
    std::vector<std::uint64_t> deposit;  // label -> index bits
};

inline RelabelPlan plan_relabel(const Relabel &map) {
    RelabelPlan plan;
    const std::size_t w = map.bits.size();
    for (unsigned b : map.bits) {
        plan.mask |= std::uint64_t{1} << b;
    }
    plan.deposit.resize(std::size_t{1} << w);
    for (std::size_t label = 0; label < plan.deposit.size(); ++label) {
        std::uint64_t v = 0;
        for (std::size_t s = 0; s < w; ++s) {
            if ((label >> (w - 1 - s)) & 1) {
                v |= std::uint64_t{1} << map.bits[s];
            }
        }
        plan.deposit[label] = v;
    }
    return plan;
}

inline std::uint64_t extract_label(std::uint64_t index, const Relabel &map) {
    const std::size_t w = map.bits.size();
    std::uint64_t label = 0;
    for (std::size_t s = 0; s < w; ++s) {
        label |= ((index >> map.bits[s]) & 1) << (w - 1 - s);
    }
    return label;
}

}  // namespace qsvt::kernels::detail
