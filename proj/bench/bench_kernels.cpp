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

// Serial reference kernels against their OpenMP counterparts. The state size
// is the benchmark argument in qubits.

#include <benchmark/benchmark.h>

#include <array>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "qsvt/kernels.hpp"

namespace {

using qsvt::kernels::cplx;
namespace k = qsvt::kernels;

std::vector<cplx> random_amps(unsigned n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

constexpr double kInvSqrt2 = 1 / std::numbers::sqrt2;
const std::array<cplx, 4> kHadamard = {cplx(kInvSqrt2), cplx(kInvSqrt2), cplx(kInvSqrt2), cplx(-kInvSqrt2)};

template <auto Apply>
void gate_1q(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    auto amps = random_amps(n);
    const std::array<unsigned, 1> target{n / 2};
    const k::DenseGate gate{target, kHadamard};
    for (auto _ : state) {
        Apply(std::span<cplx>(amps), gate);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(amps.size() * sizeof(cplx)));
}

// Two controls plus a dense 2-qubit target, as in the controlled evolutions.
template <auto Apply>
void gate_2q_controlled(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    auto amps = random_amps(n);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::array<cplx, 16> m;
    for (auto &x : m) {
        x = {g(rng), g(rng)};
    }
    const std::array<unsigned, 2> targets{1, 0};
    const std::uint64_t mask = (std::uint64_t{1} << (n - 1)) | (std::uint64_t{1} << (n - 2));
    const k::DenseGate gate{targets, m, mask, std::uint64_t{1} << (n - 1)};
    for (auto _ : state) {
        Apply(std::span<cplx>(amps), gate);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(amps.size() * sizeof(cplx)));
}

template <auto Relabel>
void relabel_4bits(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const auto in = random_amps(n);
    std::vector<cplx> out(in.size());
    const std::array<unsigned, 4> bits{n - 1, n - 2, 3, 2};
    std::vector<std::uint64_t> image(16);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), std::mt19937_64(5));
    const k::Relabel map{bits, image};
    for (auto _ : state) {
        Relabel(std::span<const cplx>(in), std::span<cplx>(out), map);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(2 * in.size() * sizeof(cplx)));
}

template <auto Probability>
void masked_probability(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const auto amps = random_amps(n);
    const std::uint64_t mask = std::uint64_t{1} << (n - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Probability(std::span<const cplx>(amps), mask, mask));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(amps.size() * sizeof(cplx)));
}

constexpr int kMin = 12, kMax = 22;

BENCHMARK(gate_1q<k::serial::apply_gate>)->Name("apply_gate_1q/serial")->DenseRange(kMin, kMax, 5);
BENCHMARK(gate_1q<k::omp::apply_gate>)->Name("apply_gate_1q/omp")->DenseRange(kMin, kMax, 5)->UseRealTime();
BENCHMARK(gate_2q_controlled<k::serial::apply_gate>)->Name("apply_gate_2q_ctrl/serial")->DenseRange(kMin, kMax, 5);
BENCHMARK(gate_2q_controlled<k::omp::apply_gate>)
    ->Name("apply_gate_2q_ctrl/omp")
    ->DenseRange(kMin, kMax, 5)
    ->UseRealTime();
BENCHMARK(relabel_4bits<k::serial::relabel>)->Name("relabel/serial")->DenseRange(kMin, kMax, 5);
BENCHMARK(relabel_4bits<k::omp::relabel>)->Name("relabel/omp")->DenseRange(kMin, kMax, 5)->UseRealTime();
BENCHMARK(masked_probability<k::serial::masked_probability>)->Name("masked_probability/serial")->DenseRange(kMin, kMax, 5);
BENCHMARK(masked_probability<k::omp::masked_probability>)
    ->Name("masked_probability/omp")
    ->DenseRange(kMin, kMax, 5)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
