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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "qsvt/error.hpp"
#include "qsvt/state.hpp"
#include "test_util.hpp"

namespace {

using namespace qsvt;

using namespace qsvt::testing;
constexpr double kRoot2 = std::numbers::sqrt2;

QuantumState basis(std::size_t n, std::uint64_t index) {
    return basis_state(n, index);
}

TEST(Layout, StandardCoversQubitsInOrder) {
    const auto l = RegisterLayout::standard(3, 4, 5);
    EXPECT_EQ(l.ancilla, 0u);
    EXPECT_EQ(l.reg_L.first, 1u);
    EXPECT_EQ(l.reg_C.first, 4u);
    EXPECT_EQ(l.reg_B.first, 8u);
    EXPECT_EQ(l.num_qubits(), 13u);
    EXPECT_NO_THROW(l.validate());
    RegisterLayout bad = l;
    bad.reg_C.first = 3;
    EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::invalid_input);
}

TEST(NewState, ZeroStates) {
    // Ancilla plus one data qubit.
    const auto s2 = new_state(RegisterLayout::standard(0, 0, 1));
    ASSERT_EQ(s2.dim(), 4u);
    EXPECT_EQ(s2.amplitudes()[0], cplx(1.0));
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_EQ(s2.amplitudes()[i], cplx(0.0));
    }
    const auto s1 = QuantumState::zero(1);
    ASSERT_EQ(s1.dim(), 2u);
    EXPECT_EQ(s1.amplitudes()[0], cplx(1.0));
    EXPECT_EQ(s1.amplitudes()[1], cplx(0.0));
    const auto s7 = QuantumState::zero(7);
    EXPECT_EQ(s7.dim(), 128u);
    EXPECT_EQ(s7.amplitudes()[0], cplx(1.0));
    EXPECT_DOUBLE_EQ(s7.norm(), 1.0);
}

TEST(NewState, QubitBudget) {
    EXPECT_EQ(code_of([] { QuantumState::zero(27); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { QuantumState::zero(5, 4); }), ErrorCode::invalid_input);
}

TEST(LoadRegister, IdentityCaseAndUniform) {
    auto s = QuantumState::zero(3);
    const std::vector<cplx> e0 = {1.0, 0.0, 0.0, 0.0};
    load_register(s, {1, 2}, e0);
    EXPECT_EQ(max_diff(s, QuantumState::zero(3)), 0.0);

    auto u = QuantumState::zero(3);
    const std::vector<cplx> uniform = {0.5, 0.5, 0.5, 0.5};
    load_register(u, {1, 2}, uniform);
    const auto dist = register_distribution(u, {1, 2});
    for (double p : dist) {
        EXPECT_NEAR(p, 0.25, 1e-15);
    }
    EXPECT_NEAR(probability_of(u, 0, 0), 1.0, 1e-15);
}

TEST(LoadRegister, Rejections) {
    auto s = QuantumState::zero(3);
    const std::vector<cplx> not_unit = {1.0, 1.0, 0.0, 0.0};
    EXPECT_EQ(code_of([&] { load_register(s, {1, 2}, not_unit); }), ErrorCode::invalid_input);
    const std::vector<cplx> wrong_len = {1.0, 0.0};
    EXPECT_EQ(code_of([&] { load_register(s, {1, 2}, wrong_len); }), ErrorCode::invalid_input);
    apply_unitary(s, UnitaryMatrix::pauli_x(), std::vector<std::size_t>{2});
    const std::vector<cplx> e0 = {1.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(code_of([&] { load_register(s, {1, 2}, e0); }), ErrorCode::invalid_input);
}

TEST(Unitary, CheckedConstruction) {
    EXPECT_EQ(code_of([] { UnitaryMatrix(2, {1.0, 1.0, 0.0, 1.0}); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { UnitaryMatrix(3, std::vector<cplx>(9, 0.0)); }), ErrorCode::invalid_input);
    EXPECT_NO_THROW(UnitaryMatrix::ry(0.3) * UnitaryMatrix::hadamard());
    const auto u = UnitaryMatrix::ry(0.7) * UnitaryMatrix::phase(0.2);
    const auto id = u.adjoint() * u;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            EXPECT_NEAR(std::abs(id(r, c) - cplx(r == c ? 1.0 : 0.0)), 0.0, 1e-15);
        }
    }
}

TEST(ApplyUnitary, BasicGates) {
    auto s = QuantumState::zero(1);
    apply_unitary(s, UnitaryMatrix::identity(2), std::vector<std::size_t>{0});
    EXPECT_EQ(max_diff(s, QuantumState::zero(1)), 0.0);
    apply_unitary(s, UnitaryMatrix::pauli_x(), std::vector<std::size_t>{0});
    EXPECT_EQ(max_diff(s, basis(1, 1)), 0.0);

    auto h = QuantumState::zero(1);
    apply_unitary(h, UnitaryMatrix::hadamard(), std::vector<std::size_t>{0});
    EXPECT_NEAR(h.amplitudes()[0].real(), 1 / kRoot2, 1e-15);
    EXPECT_NEAR(h.amplitudes()[1].real(), 1 / kRoot2, 1e-15);
}

TEST(ApplyUnitary, QubitZeroIsMostSignificant) {
    auto s = QuantumState::zero(3);
    apply_unitary(s, UnitaryMatrix::pauli_x(), std::vector<std::size_t>{0});
    EXPECT_EQ(s.amplitudes()[4], cplx(1.0));
}

TEST(ApplyUnitary, BadTargets) {
    auto s = QuantumState::zero(3);
    EXPECT_EQ(code_of([&] { apply_unitary(s, UnitaryMatrix::identity(4), std::vector<std::size_t>{1, 1}); }),
              ErrorCode::invalid_input);
    EXPECT_EQ(code_of([&] { apply_unitary(s, UnitaryMatrix::identity(4), std::vector<std::size_t>{1}); }),
              ErrorCode::invalid_input);
    EXPECT_EQ(code_of([&] { apply_unitary(s, UnitaryMatrix::pauli_x(), std::vector<std::size_t>{3}); }),
              ErrorCode::invalid_input);
}

TEST(ApplyControlled, Examples) {
    // Control reads 0: nothing happens.
    auto s = QuantumState::zero(2);
    apply_controlled(s, UnitaryMatrix::pauli_x(), 0, 1, std::vector<std::size_t>{1});
    EXPECT_EQ(max_diff(s, QuantumState::zero(2)), 0.0);
    // CNOT |10> -> |11>.
    auto c = basis(2, 0b10);
    apply_controlled(c, UnitaryMatrix::pauli_x(), 0, 1, std::vector<std::size_t>{1});
    EXPECT_EQ(max_diff(c, basis(2, 0b11)), 0.0);
    // Controlled R_y(pi) on (|0>+|1>)|0>/sqrt2 -> (|00>+|11>)/sqrt2.
    auto bell = QuantumState::zero(2);
    apply_unitary(bell, UnitaryMatrix::hadamard(), std::vector<std::size_t>{0});
    apply_controlled(bell, UnitaryMatrix::ry(std::numbers::pi), 0, 1, std::vector<std::size_t>{1});
    const auto amps = bell.amplitudes();
    EXPECT_NEAR(std::abs(amps[0] - 1 / kRoot2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amps[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amps[2]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(amps[3] - 1 / kRoot2), 0.0, 1e-15);
    // Control value 0 selects the other branch.
    auto z = QuantumState::zero(2);
    apply_controlled(z, UnitaryMatrix::pauli_x(), 0, 0, std::vector<std::size_t>{1});
    EXPECT_EQ(max_diff(z, basis(2, 0b01)), 0.0);
}

TEST(ApplyControlled, OverlapRejected) {
    auto s = QuantumState::zero(2);
    EXPECT_EQ(code_of([&] { apply_controlled(s, UnitaryMatrix::pauli_x(), 1, 1, std::vector<std::size_t>{1}); }),
              ErrorCode::invalid_input);
}

TEST(BasisOracle, CompletionOfPartialMap) {
    const auto p = BasisPermutation::complete(3, {{0b100, 0b110}, {0b001, 0b100}});
    EXPECT_EQ(p(0b100), 0b110u);
    EXPECT_EQ(p(0b001), 0b100u);
    EXPECT_EQ(p(0b110), 0b001u);
    for (std::uint64_t x : {0b000, 0b010, 0b011, 0b101, 0b111}) {
        EXPECT_EQ(p(x), x);
    }
    EXPECT_EQ(code_of([] { BasisPermutation::complete(2, {{0, 1}, {2, 1}}); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { BasisPermutation::complete(2, {{4, 1}}); }), ErrorCode::invalid_input);
}

TEST(BasisOracle, WorkedExampleMap) {
    // (2|100> + |001>)/sqrt5 -> (2|110> + |100>)/sqrt5 on a 3-qubit register.
    std::vector<cplx> v(8);
    v[0b100] = 2 / std::sqrt(5.0);
    v[0b001] = 1 / std::sqrt(5.0);
    auto s = QuantumState::from_amplitudes(v);
    const auto p = BasisPermutation::complete(3, {{0b100, 0b110}, {0b001, 0b100}});
    const std::vector<std::size_t> q = {0, 1, 2};
    apply_basis_oracle(s, q, p);
    EXPECT_NEAR(s.amplitudes()[0b110].real(), 2 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(s.amplitudes()[0b100].real(), 1 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(BasisOracle, InverseRestoresState) {
    std::mt19937_64 rng(3);
    auto s = random_state(6, rng);
    const auto before = s;
    std::vector<std::uint64_t> image(16);
    std::iota(image.begin(), image.end(), 0u);
    std::shuffle(image.begin(), image.end(), rng);
    const auto p = BasisPermutation::from_image(4, image);
    const std::vector<std::size_t> q = {5, 1, 3, 2};
    apply_basis_oracle(s, q, p);
    EXPECT_GT(max_diff(s, before), 1e-3);
    apply_basis_oracle(s, q, p.inverse());
    EXPECT_LT(max_diff(s, before), 1e-12);
    const auto id = BasisPermutation::identity(4);
    apply_basis_oracle(s, q, id);
    EXPECT_EQ(max_diff(s, before), 0.0);
}

TEST(PostSelect, Examples) {
    // |1>|phi>
    std::vector<cplx> v(4);
    v[0b10] = 0.6;
    v[0b11] = 0.8;
    auto s = QuantumState::from_amplitudes(v);
    auto r = post_select(s, 0, 1);
    EXPECT_NEAR(r.probability, 1.0, 1e-15);
    EXPECT_LT(max_diff(r.state, s), 1e-15);

    auto h = QuantumState::zero(2);
    apply_unitary(h, UnitaryMatrix::hadamard(), std::vector<std::size_t>{0});
    r = post_select(h, 0, 1);
    EXPECT_NEAR(r.probability, 0.5, 1e-15);
    EXPECT_LT(max_diff(r.state, basis(2, 0b10)), 1e-15);

    EXPECT_EQ(code_of([] { post_select(QuantumState::zero(2), 0, 1); }), ErrorCode::fully_thresholded);
}

TEST(PostSelect, ProbabilityIsMarginal) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_state(5, rng);
        const std::size_t q = trial % 5;
        double p1 = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if ((i >> (4 - q)) & 1) {
                p1 += std::norm(s.amplitudes()[i]);
            }
        }
        const auto r = post_select(s, q, 1);
        EXPECT_NEAR(r.probability, p1, 1e-14);
        EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
    }
}

TEST(Overlap, Examples) {
    std::mt19937_64 rng(5);
    const auto s = random_state(4, rng);
    EXPECT_NEAR(std::abs(overlap(s, s) - cplx(1.0)), 0.0, 1e-14);
    EXPECT_EQ(overlap(basis(2, 1), basis(2, 2)), cplx(0.0));
    EXPECT_EQ(code_of([] { overlap(QuantumState::zero(2), QuantumState::zero(3)); }), ErrorCode::invalid_input);
}

// Norm preservation, linearity and the controlled identity on random states.
TEST(CoreProperties, NormPreservedOverRandomCircuits) {
    std::mt19937_64 rng(6);
    auto s = random_state(8, rng);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int step = 0; step < 200; ++step) {
        const std::size_t a = rng() % 8, b = (a + 1 + rng() % 7) % 8;
        switch (step % 4) {
            case 0:
                apply_unitary(s, UnitaryMatrix::ry(angle(rng)) * UnitaryMatrix::phase(angle(rng)),
                              std::vector<std::size_t>{a});
                break;
            case 1:
                apply_controlled(s, UnitaryMatrix::hadamard(), a, static_cast<int>(rng() & 1),
                                 std::vector<std::size_t>{b});
                break;
            case 2: {
                std::vector<std::uint64_t> image(4);
                std::iota(image.begin(), image.end(), 0u);
                std::shuffle(image.begin(), image.end(), rng);
                apply_basis_oracle(s, std::vector<std::size_t>{a, b}, BasisPermutation::from_image(2, image));
                break;
            }
            default:
                apply_unitary(s, UnitaryMatrix::pauli_y(), std::vector<std::size_t>{b});
        }
        ASSERT_LT(std::abs(s.norm() - 1.0), 1e-10) << "step " << step;
    }
}

TEST(CoreProperties, Linearity) {
    std::mt19937_64 rng(7);
    const auto u = UnitaryMatrix::ry(0.9) * UnitaryMatrix::phase(0.4);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = random_state(4, rng);
        auto whole = s;
        apply_controlled(whole, u, 1, 1, std::vector<std::size_t>{3});
        std::vector<cplx> sum(s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i) {
            auto e = basis(4, i);
            apply_controlled(e, u, 1, 1, std::vector<std::size_t>{3});
            for (std::size_t j = 0; j < s.dim(); ++j) {
                sum[j] += s.amplitudes()[i] * e.amplitudes()[j];
            }
        }
        for (std::size_t j = 0; j < s.dim(); ++j) {
            EXPECT_LT(std::abs(sum[j] - whole.amplitudes()[j]), 1e-14);
        }
    }
}

TEST(CoreProperties, ControlledIdentityIsNoOp) {
    std::mt19937_64 rng(8);
    const auto s = random_state(5, rng);
    auto t = s;
    apply_controlled(t, UnitaryMatrix::identity(4), 0, 1, std::vector<std::size_t>{2, 4});
    apply_controlled(t, UnitaryMatrix::identity(2), 3, 0, std::vector<std::size_t>{1});
    EXPECT_EQ(max_diff(s, t), 0.0);
}

TEST(FromAmplitudes, Validation) {
    EXPECT_EQ(code_of([] { QuantumState::from_amplitudes({1.0, 0.0, 0.0}); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { QuantumState::from_amplitudes({1.0, 1.0}); }), ErrorCode::invalid_input);
}

}  // namespace
