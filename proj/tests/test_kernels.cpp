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

// The OpenMP kernels against the serial reference loops.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qsvt/kernels.hpp"

namespace {

using qsvt::kernels::cplx;
namespace serial = qsvt::kernels::serial;
namespace omp = qsvt::kernels::omp;

std::vector<cplx> random_amps(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

// A gate's matrix need not be unitary for the kernels; random entries make
// index mix-ups visible.
std::vector<cplx> random_matrix(std::size_t k, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> m(std::size_t{1} << (2 * k));
    for (auto &x : m) {
        x = {g(rng), g(rng)};
    }
    return m;
}

class KernelSizes : public ::testing::TestWithParam<unsigned> {};

TEST_P(KernelSizes, GateMatchesReference) {
    const unsigned n = GetParam();
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<unsigned> bits(n);
        std::iota(bits.begin(), bits.end(), 0u);
        std::shuffle(bits.begin(), bits.end(), rng);
        const std::size_t k = 1 + trial % 3;
        std::vector<unsigned> targets(bits.begin(), bits.begin() + k);
        std::uint64_t cmask = 0, cval = 0;
        for (std::size_t c = k; c < std::min<std::size_t>(n, k + trial % 3); ++c) {
            cmask |= std::uint64_t{1} << bits[c];
            if (rng() & 1) {
                cval |= std::uint64_t{1} << bits[c];
            }
        }
        const auto m = random_matrix(k, rng);
        auto a = random_amps(n, rng);
        auto b = a;
        const qsvt::kernels::DenseGate gate{targets, m, cmask, cval};
        serial::apply_gate(a, gate);
        omp::apply_gate(b, gate);
        EXPECT_LT(max_diff(a, b), 1e-12) << "n=" << n << " k=" << k << " mask=" << cmask;
    }
}

TEST_P(KernelSizes, RelabelMatchesReference) {
    const unsigned n = GetParam();
    std::mt19937_64 rng(100 + n);
    std::vector<unsigned> bits = {n - 1, 0, n / 2};
    std::vector<std::uint64_t> image(8);
    std::iota(image.begin(), image.end(), 0u);
    std::shuffle(image.begin(), image.end(), rng);
    const auto in = random_amps(n, rng);
    std::vector<cplx> a(in.size()), b(in.size());
    serial::relabel(in, a, {bits, image});
    omp::relabel(in, b, {bits, image});
    EXPECT_EQ(a, b);
}

TEST_P(KernelSizes, ReductionsMatchReference) {
    const unsigned n = GetParam();
    std::mt19937_64 rng(200 + n);
    const auto a = random_amps(n, rng);
    const auto b = random_amps(n, rng);
    const std::uint64_t mask = 0b1011, value = 0b0010;
    const double ps = serial::masked_probability(a, mask, value);
    const double po = omp::masked_probability(a, mask, value);
    EXPECT_NEAR(ps, po, 1e-12 * ps);
    const cplx is = serial::inner_product(a, b);
    const cplx io = omp::inner_product(a, b);
    EXPECT_LT(std::abs(is - io), 1e-12 * a.size());
    auto x = a, y = a;
    serial::scale(x, 0.37);
    omp::scale(y, 0.37);
    EXPECT_EQ(x, y);
}

INSTANTIATE_TEST_SUITE_P(Kernels, KernelSizes, ::testing::Values(4u, 9u, 13u, 15u));

TEST(Kernels, ParallelReductionIsDeterministic) {
    std::mt19937_64 rng(7);
    const auto a = random_amps(16, rng);
    const double first = omp::masked_probability(a, 0, 0);
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(first, omp::masked_probability(a, 0, 0));
    }
}

TEST(Kernels, ControlValueOutsideMaskNeverMatches) {
    std::mt19937_64 rng(8);
    const auto m = random_matrix(1, rng);
    std::vector<unsigned> t = {0};
    auto a = random_amps(13, rng);
    const auto before = a;
    const qsvt::kernels::DenseGate gate{t, m, 0b10, 0b100};
    omp::apply_gate(a, gate);
    EXPECT_EQ(a, before);
    serial::apply_gate(a, gate);
    EXPECT_EQ(a, before);
}

}  // namespace
