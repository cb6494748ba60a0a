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

// End-to-end thresholding circuit:
//   load |psi_A0> -> phase estimation -> threshold oracle -> R_y cascade
//   -> threshold oracle (again) -> inverse phase estimation -> post-select a = 1
// and the comparison of its output with the classical thresholded matrix.

#include <cstdint>
#include <optional>
#include <vector>

#include "qsvt/alpha.hpp"
#include "qsvt/qpe.hpp"
#include "qsvt/rotation.hpp"
#include "qsvt/spectral.hpp"
#include "qsvt/state.hpp"

namespace qsvt {

struct PipelineConfig {
    InputMatrix matrix;
    double tau = 0.0;
    /// Explicit alpha; when unset `alpha_method` picks it.
    std::optional<double> alpha;
    AlphaMethod alpha_method = AlphaMethod::intuitive;
    std::size_t t_bits = 3;
    NewtonConfig newton;
    std::size_t max_qubits = kDefaultMaxQubits;
    /// Nonzero: additionally estimate P from this many simulated ancilla readouts.
    std::size_t shots = 0;
    std::uint64_t seed = 0;
};

struct TripleAmplitude {
    double sigma = 0.0;
    double y_exact = 0.0;    // (1 - tau/sigma)_+
    double y_encoded = 0.0;  // value written to register L
    double predicted = 0.0;  // sigma sin(y_encoded alpha)
    double simulated = 0.0;  // <u_k v_k | output> sqrt(N_alpha)
    double target = 0.0;     // (sigma - tau)_+ / sqrt(N2)
};

struct SimulationResult {
    double alpha = 0.0;
    double P_sim = 0.0;
    double F_sim = 0.0;
    double N_alpha = 0.0;     // P_sim * N1
    double P_analytic = 0.0;  // closed forms with exact y
    double F_analytic = 0.0;
    double P_encoded = 0.0;   // closed forms with the fixed-point y
    double F_encoded = 0.0;
    std::optional<double> P_sampled;
    std::vector<TripleAmplitude> triples;
    double uncompute_residual = 0.0;
    double label_leakage = 0.0;
    PhaseEstimationConfig phase_estimation;
    std::size_t num_qubits = 0;
    int newton_iterations = 0;
    /// Normalized data-register state after post-selection (factored layout).
    std::vector<cplx> output;
    SpectralData spectrum;
    double tau = 0.0;

    bool exact() const {
        return phase_estimation.exact;
    }
};

SimulationResult run_pipeline(const PipelineConfig &cfg);

struct VerificationReport {
    /// |<vec(S)/|S| | output>| with S from classical_svt.
    double F_recomputed = 0.0;
    double F_difference = 0.0;
    /// Largest |amplitude| on triples with sigma_k <= tau.
    double thresholded_amplitude = 0.0;
    std::vector<TripleAmplitude> triples;
    std::vector<cplx> target;

    bool matches(double tol = 1e-10) const {
        return F_difference <= tol;
    }
};

VerificationReport verify_against_classical(const SimulationResult &result, const SpectralData &spec, double tau);

}  // namespace qsvt
