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

#include <array>

#include "kernel_common.hpp"

namespace qsvt::kernels::omp {

namespace {

// Below this many amplitudes the thread fork costs more than the loop.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

template <class BlockFn>
auto blocked_sum(std::size_t n, BlockFn &&block_sum) {
    using T = decltype(block_sum(std::size_t{0}, std::size_t{0}));
    std::array<T, kReductionBlocks> partial{};
    const std::size_t chunk = (n + kReductionBlocks - 1) / kReductionBlocks;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(kReductionBlocks); ++b) {
        const std::size_t lo = std::min(n, static_cast<std::size_t>(b) * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        partial[b] = block_sum(lo, hi);
    }
    T total{};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

}  // namespace

void apply_gate(std::span<cplx> amps, const DenseGate &gate) {
    const auto plan = detail::plan_gate(amps.size(), gate.target_bits);
    const auto sub = detail::plan_subspace(amps.size(), gate.target_bits, gate.control_mask);
    const auto outer = static_cast<std::int64_t>(sub.outer);
    const std::uint64_t controls = gate.control_value & gate.control_mask;
    if (controls != gate.control_value) {
        return;  // control value outside the mask never matches
    }
#pragma omp parallel if (amps.size() >= kParallelThreshold)
    {
        std::vector<cplx> scratch(plan.dim);
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < outer; ++j) {
            const std::uint64_t base = detail::insert_zero_bits(static_cast<std::uint64_t>(j), sub.fixed_bits) | controls;
            detail::gate_at_unchecked(amps, gate, plan, base, scratch.data());
        }
    }
}

void relabel(std::span<const cplx> in, std::span<cplx> out, const Relabel &map) {
    const auto plan = detail::plan_relabel(map);
    const auto n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
    for (std::int64_t s = 0; s < n; ++s) {
        const auto i = static_cast<std::uint64_t>(s);
        const std::uint64_t label = detail::extract_label(i, map);
        out[(i & ~plan.mask) | plan.deposit[map.image[label]]] = in[i];
    }
}

double masked_probability(std::span<const cplx> amps, std::uint64_t mask, std::uint64_t value) {
    return blocked_sum(amps.size(), [&](std::size_t lo, std::size_t hi) {
        double total = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            if ((i & mask) == value) {
                total += std::norm(amps[i]);
            }
        }
        return total;
    });
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    return blocked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
        cplx total = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            total += std::conj(a[i]) * b[i];
        }
        return total;
    });
}

void scale(std::span<cplx> amps, double factor) {
    const auto n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        amps[i] *= factor;
    }
}

}  // namespace qsvt::kernels::omp
