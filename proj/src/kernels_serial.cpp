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

#include "kernel_common.hpp"

namespace qsvt::kernels::serial {

void apply_gate(std::span<cplx> amps, const DenseGate &gate) {
    const auto plan = detail::plan_gate(amps.size(), gate.target_bits);
    std::vector<cplx> scratch(plan.dim);
    for (std::uint64_t j = 0; j < plan.outer; ++j) {
        detail::gate_at(amps, gate, plan, detail::insert_zero_bits(j, plan.sorted_bits), scratch.data());
    }
}

void relabel(std::span<const cplx> in, std::span<cplx> out, const Relabel &map) {
    const auto plan = detail::plan_relabel(map);
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        const std::uint64_t label = detail::extract_label(i, map);
        out[(i & ~plan.mask) | plan.deposit[map.image[label]]] = in[i];
    }
}

double masked_probability(std::span<const cplx> amps, std::uint64_t mask, std::uint64_t value) {
    double total = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == value) {
            total += std::norm(amps[i]);
        }
    }
    return total;
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

void scale(std::span<cplx> amps, double factor) {
    for (auto &x : amps) {
        x *= factor;
    }
}

}  // namespace qsvt::kernels::serial
