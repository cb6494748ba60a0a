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

// Choosing the rotation scale alpha. With y_k = (1 - tau/sigma_k)_+:
//
//   P(alpha) = sum s_k^2 sin^2(y_k alpha) / N1
//   F(alpha) = sum s_k^2 y_k sin(y_k alpha) / sqrt(N2 * sum s_k^2 sin^2(y_k alpha))
//   G(alpha) = sqrt(P) F = sum s_k^2 y_k sin(y_k alpha) / sqrt(N1 N2)
//
// with N1 = sum s_k^2 and N2 = sum s_k^2 y_k^2.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsvt {

struct SpectrumProfile {
    std::vector<double> sigma;  // descending
    std::vector<double> y;
    double n1 = 0.0;
    double n2 = 0.0;

    /// y_k = (1 - tau/sigma_k)_+. Throws on an empty, unsorted or fully thresholded spectrum.
    static SpectrumProfile from_threshold(std::span<const double> sigma, double tau);
    /// Uses the given y directly (e.g. fixed-point values written by the oracle).
    static SpectrumProfile from_fractions(std::span<const double> sigma, std::span<const double> y);

    double y1() const {
        return y.front();
    }
};

enum class AlphaMethod { intuitive, taylor2, taylor4, numeric };

std::string to_string(AlphaMethod method);
/// Accepts "intuitive", "taylor2", "taylor4", "numeric".
AlphaMethod parse_alpha_method(const std::string &name);

struct AlphaSolution {
    AlphaMethod method = AlphaMethod::intuitive;
    double alpha = 0.0;
    double P = 0.0;
    double F = 0.0;
    double G = 0.0;
    /// Set when taylor4 had a negative discriminant and returned the taylor2 value.
    bool fell_back = false;
};

double probability(const SpectrumProfile &profile, double alpha);
double fidelity_analytic(const SpectrumProfile &profile, double alpha);
/// Fidelity when register L holds `y_encoded` instead of the exact fractions:
/// output weights sigma_k sin(y_encoded_k alpha), target weights sigma_k y_k.
double fidelity_encoded(const SpectrumProfile &exact, std::span<const double> y_encoded, double alpha);
double g_objective(const SpectrumProfile &profile, double alpha);
double g_derivative(const SpectrumProfile &profile, double alpha);

/// Evaluates P, F and G at alpha.
AlphaSolution evaluate(const SpectrumProfile &profile, AlphaMethod method, double alpha);

AlphaSolution alpha_intuitive(const SpectrumProfile &profile);
AlphaSolution alpha_taylor2(const SpectrumProfile &profile);
/// Root of the quartic truncation. Falls back to taylor2 (fell_back = true)
/// when b^2 < 4ac.
AlphaSolution alpha_taylor4(const SpectrumProfile &profile);
/// Quartic root only; nullopt on a negative discriminant.
std::optional<double> taylor4_root(const SpectrumProfile &profile);

struct NumericOptions {
    std::size_t grid_points = 4096;
    double tolerance = 1e-8;
};

/// Maximizes G over (0, pi / y1] by grid scan plus golden-section refinement.
AlphaSolution alpha_numeric(const SpectrumProfile &profile, const NumericOptions &opts = {});

AlphaSolution solve_alpha(const SpectrumProfile &profile, AlphaMethod method);

}  // namespace qsvt
