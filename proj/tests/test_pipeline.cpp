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

#include <cmath>
#include <numbers>
#include <random>

#include "qsvt/pipeline.hpp"
#include "test_util.hpp"

namespace {

using namespace qsvt;
using namespace qsvt::testing;

PipelineConfig config_for(const Eigen::MatrixXd &m, double tau, std::size_t t_bits, unsigned m_bits) {
    PipelineConfig cfg;
    cfg.matrix = m;
    cfg.tau = tau;
    cfg.t_bits = t_bits;
    cfg.newton.m_bits = m_bits;
    return cfg;
}

TEST(Pipeline, WorkedExample) {
    std::mt19937_64 rng(51);
    const auto m = with_singular_values(2, 3, {2.0, 1.0}, rng);
    const auto res = run_pipeline(config_for(m, 0.5, 3, 3));
    EXPECT_TRUE(res.exact());
    EXPECT_NEAR(res.alpha, std::numbers::pi / 1.5, 1e-15);
    EXPECT_NEAR(res.P_sim, 0.95, 1e-9);
    EXPECT_NEAR(res.N_alpha, 4.75, 1e-9);
    EXPECT_NEAR(res.F_sim, (3.0 + std::sqrt(3.0) / 4) / std::sqrt(12.5 * 0.95), 1e-9);
    ASSERT_EQ(res.triples.size(), 2u);
    EXPECT_NEAR(res.triples[0].simulated, 2.0, 1e-9);
    EXPECT_NEAR(res.triples[1].simulated, std::sqrt(3.0) / 2, 1e-9);
    EXPECT_DOUBLE_EQ(res.triples[0].y_encoded, 0.75);
    EXPECT_DOUBLE_EQ(res.triples[1].y_encoded, 0.5);
    EXPECT_LT(res.uncompute_residual, 1e-9);
    EXPECT_LT(res.label_leakage, 1e-9);
    EXPECT_EQ(res.num_qubits, 1u + 3 + 3 + 3);
}

TEST(Pipeline, RankOne) {
    std::mt19937_64 rng(52);
    const auto m = with_singular_values(3, 2, {2.0}, rng);
    auto cfg = config_for(m, 1.0, 3, 4);
    const auto res = run_pipeline(cfg);
    EXPECT_NEAR(res.F_sim, 1.0, 1e-9);
    EXPECT_NEAR(res.P_sim, std::pow(std::sin(0.5 * res.alpha), 2), 1e-9);
    EXPECT_NEAR(res.P_sim, 1.0, 1e-9);  // intuitive alpha hits the lobe peak
}

TEST(Pipeline, OnlyLeadingComponentSurvives) {
    std::mt19937_64 rng(53);
    const auto m = with_singular_values(3, 3, {4.0, 1.0}, rng);
    for (double tau : {1.0, 1.5, 3.0}) {
        const auto res = run_pipeline(config_for(m, tau, 5, 8));
        EXPECT_GT(res.F_sim, 0.999) << tau;
        EXPECT_NEAR(res.triples[1].simulated, 0.0, 1e-10) << tau;
    }
}

TEST(Pipeline, AgreesWithFixedPointModelInExactRegime) {
    std::mt19937_64 rng(54);
    // Integer eigenvalues with a maximum below 2^t are encoded exactly.
    const std::vector<std::vector<double>> spectra{{3.0, 2.0, 1.0}, {std::sqrt(7.0), std::sqrt(5.0), std::sqrt(2.0)},
                                                   {std::sqrt(15.0), 2.0, std::sqrt(3.0), 1.0}};
    for (const auto &sigma : spectra) {
        const auto m = with_singular_values(4, 4, sigma, rng);
        for (double frac : {0.3, 0.5, 0.8}) {
            for (auto method : {AlphaMethod::intuitive, AlphaMethod::taylor2}) {
                auto cfg = config_for(m, frac * sigma.front(), 4, 8);
                cfg.alpha_method = method;
                const auto res = run_pipeline(cfg);
                ASSERT_TRUE(res.exact());
                EXPECT_NEAR(res.P_sim, res.P_encoded, 1e-9);
                EXPECT_NEAR(res.F_sim, res.F_encoded, 1e-9);
                EXPECT_LT(res.uncompute_residual, 1e-9);
                // Fixed-point error in y bounds the distance to the exact closed form.
                EXPECT_LT(std::abs(res.P_sim - res.P_analytic), 4 * res.alpha * std::ldexp(1.0, -8));
                for (const auto &t : res.triples) {
                    EXPECT_NEAR(t.simulated, t.predicted, 1e-9);
                }
            }
        }
    }
}

TEST(Pipeline, MatchesClassicalThresholding) {
    std::mt19937_64 rng(55);
    const auto m = with_singular_values(3, 4, {std::sqrt(13.0), 3.0, 2.0, 1.0}, rng);
    for (double tau : {1.0, 1.5, 2.5}) {
        const auto res = run_pipeline(config_for(m, tau, 4, 8));
        const auto report = verify_against_classical(res, res.spectrum, tau);
        EXPECT_TRUE(report.matches());
        EXPECT_LE(report.F_difference, 1e-10);
        EXPECT_LT(report.thresholded_amplitude, 1e-10) << tau;
    }
}

TEST(Pipeline, IndependentOfRightFactor) {
    std::mt19937_64 rng(56);
    const auto u = orthonormal(4, 2, rng);
    Eigen::Vector2d s(std::sqrt(6.0), std::sqrt(2.0));
    const auto m1 = Eigen::MatrixXd(u * s.asDiagonal() * orthonormal(3, 2, rng).transpose());
    const auto m2 = Eigen::MatrixXd(u * s.asDiagonal() * orthonormal(3, 2, rng).transpose());
    const auto r1 = run_pipeline(config_for(m1, 1.0, 3, 6));
    const auto r2 = run_pipeline(config_for(m2, 1.0, 3, 6));
    EXPECT_NEAR(r1.P_sim, r2.P_sim, 1e-10);
    EXPECT_NEAR(r1.F_sim, r2.F_sim, 1e-10);
}

TEST(Pipeline, InexactRegimeReportsResidual) {
    std::mt19937_64 rng(57);
    const auto m = with_singular_values(2, 2, {1.7, 1.1}, rng);
    const auto res = run_pipeline(config_for(m, 0.6, 5, 6));
    EXPECT_FALSE(res.exact());
    EXPECT_GT(res.P_sim, 0.0);
    EXPECT_LE(res.P_sim, 1.0);
    EXPECT_GT(res.uncompute_residual, 0.0);
    EXPECT_GT(res.label_leakage, 0.0);
    EXPECT_GT(res.F_sim, 0.9);
}

TEST(Pipeline, SampledProbability) {
    std::mt19937_64 rng(58);
    const auto m = with_singular_values(2, 3, {2.0, 1.0}, rng);
    auto cfg = config_for(m, 0.5, 3, 3);
    cfg.shots = 20000;
    cfg.seed = 9;
    const auto a = run_pipeline(cfg);
    const auto b = run_pipeline(cfg);
    ASSERT_TRUE(a.P_sampled.has_value());
    EXPECT_EQ(*a.P_sampled, *b.P_sampled);
    EXPECT_NEAR(*a.P_sampled, a.P_sim, 4 * std::sqrt(0.95 * 0.05 / 20000));
}

TEST(Pipeline, ExplicitAlpha) {
    std::mt19937_64 rng(59);
    const auto m = with_singular_values(2, 3, {2.0, 1.0}, rng);
    auto cfg = config_for(m, 0.5, 3, 3);
    cfg.alpha = 1.9403;
    const auto res = run_pipeline(cfg);
    EXPECT_DOUBLE_EQ(res.alpha, 1.9403);
    EXPECT_NEAR(res.P_sim, res.P_analytic, 1e-9);
}

TEST(Pipeline, Rejections) {
    std::mt19937_64 rng(60);
    const auto m = with_singular_values(2, 2, {2.0, 1.0}, rng);
    EXPECT_EQ(code_of([&] { run_pipeline(config_for(m, 2.0, 3, 3)); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([&] { run_pipeline(config_for(m, 0.0, 3, 3)); }), ErrorCode::invalid_input);
    // sigma1 / tau = 8 leaves the Newton basin.
    EXPECT_EQ(code_of([&] { run_pipeline(config_for(m, 0.25, 3, 8)); }), ErrorCode::not_converged);
    auto big = config_for(m, 0.5, 3, 3);
    big.max_qubits = 6;
    EXPECT_EQ(code_of([&] { run_pipeline(big); }), ErrorCode::invalid_input);
    auto wide = config_for(m, 0.5, 3, 3);
    wide.alpha = 5.0;  // alpha * y1 beyond pi
    EXPECT_EQ(code_of([&] { run_pipeline(wide); }), ErrorCode::invalid_input);
}

}  // namespace
