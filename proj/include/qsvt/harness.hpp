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

// Experiment harness: seeded matrix generation, the worked 2x3 example, the
// random-input sweep with CSV/SVG output, and the command implementations
// behind the `qsvt` CLI.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsvt/alpha.hpp"
#include "qsvt/pipeline.hpp"
#include "qsvt/spectral.hpp"

namespace qsvt {

/// mt19937_64 with hand-written uniform/normal draws. The engine output is
/// fixed by the standard; the std distributions are not, so they are avoided.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    std::size_t index(std::size_t lo, std::size_t hi);  // inclusive

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

/// Per-instance seed derived from a sweep seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t instance);

/// n x k matrix with orthonormal columns, Haar distributed.
Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t k, Rng &rng);

struct LowRankOptions {
    /// Use these singular values instead of drawing them (must have length r).
    std::optional<std::vector<double>> sigma;
    double sigma_min = 0.1;
    double sigma_max = 10.0;
    /// Drawn values closer than this (relative) are pushed apart.
    double min_relative_gap = 1e-3;
};

/// U diag(sigma) V^T with Haar factors; sigma log-uniform in [sigma_min, sigma_max].
InputMatrix random_lowrank(std::size_t p, std::size_t q, std::size_t r, std::uint64_t seed,
                           const LowRankOptions &opts = {});

/// A matrix instance with its threshold.
struct Instance {
    InputMatrix matrix;
    double tau = 0.0;
    std::vector<double> sigma;
};

/// sigma_k^2 are distinct integers below 2^t_bits (exact phase estimation),
/// tau uniform in [sigma1/4, 0.9 sigma1] (inside the Newton basin).
Instance exact_encoding_instance(std::uint64_t seed, std::size_t t_bits, std::size_t max_rank, std::size_t max_side);

/// Like exact_encoding_instance, but every y_k = (1 - tau/sigma_k)_+ is a
/// dyadic fraction with at most 4 bits, so register L holds it exactly.
Instance dyadic_instance(std::uint64_t seed, std::size_t max_side);

/// The 2x3 matrix with singular values (2, 1) used by `qsvt example`.
InputMatrix example_matrix();

// --- sweep ----------------------------------------------------------------

struct TauPolicy {
    enum class Kind { fixed, fraction };
    Kind kind = Kind::fraction;
    double value = 0.5;

    double tau_for(double sigma1) const;
    std::string describe() const;
    /// "0.3" (fraction of sigma1) or "fixed:0.5".
    static TauPolicy parse(const std::string &text);
};

struct SweepConfig {
    std::size_t n_instances = 120;
    std::size_t p_min = 8, p_max = 32;
    std::size_t q_min = 8, q_max = 32;
    std::size_t r_min = 4, r_max = 16;
    TauPolicy tau;
    std::vector<AlphaMethod> methods = {AlphaMethod::intuitive, AlphaMethod::taylor2};
    std::uint64_t seed = 1;
    /// Run the state-vector pipeline per instance (integer-eigenvalue spectra).
    bool simulate = false;
    std::size_t t_bits = 6;
    unsigned m_bits = 8;
    int jobs = 1;
    /// Fill the wall_time column. Off by default so output is reproducible.
    bool timing = false;
    std::optional<std::vector<double>> sigma_override;

    void validate() const;
    /// Shrinks the size ranges to what the state-vector path handles quickly
    /// (p, q in [2, 8], rank in [1, 4]).
    void use_simulation_sizes();
};

struct ExperimentRecord {
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::size_t p = 0, q = 0, r = 0;
    double tau = 0.0;
    AlphaMethod method = AlphaMethod::intuitive;
    double alpha = 0.0;
    double P_analytic = 0.0, F_analytic = 0.0;
    double P_sim = 0.0, F_sim = 0.0;
    int newton_iterations = 0;
    std::size_t t_bits = 0;
    unsigned m_bits = 0;
    bool exact = false;
    std::optional<double> wall_time;
    std::string error;  // empty on success

    bool ok() const {
        return error.empty();
    }
};

struct MethodSummary {
    AlphaMethod method;
    std::size_t rows = 0;
    std::size_t errors = 0;
    double median_P = 0.0;
    double median_F = 0.0;
};

struct SweepSummary {
    std::vector<MethodSummary> methods;
    bool has_comparison = false;
    double median_P_difference = 0.0;  // |median P(intuitive) - median P(taylor2)|
    double median_F_margin = 0.0;      // median F(intuitive) - median F(taylor2)
    double p_tolerance = 0.02;
    double f_tolerance = 0.005;
    bool probability_verdict = false;
    bool fidelity_verdict = false;
};

std::vector<ExperimentRecord> run_sweep(const SweepConfig &cfg);
SweepSummary summarize(const std::vector<ExperimentRecord> &records, double p_tolerance = 0.02,
                       double f_tolerance = 0.005);

inline constexpr const char *kCsvSchema = "1";
/// Column names in output order.
const std::vector<std::string> &csv_columns();
void write_csv(std::ostream &out, const SweepConfig &cfg, const std::vector<ExperimentRecord> &records,
               const SweepSummary &summary);
void write_summary(std::ostream &out, const SweepSummary &summary, const std::string &prefix = "");

/// Two-panel SVG (probability, fidelity) with one series per method.
void emit_plot(std::ostream &out, const std::vector<ExperimentRecord> &records);
void emit_plot_file(const std::string &path, const std::vector<ExperimentRecord> &records);

// --- commands ---------------------------------------------------------------

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericalGuard = 3;

struct ExampleOptions {
    std::optional<double> alpha;
    std::optional<double> tau;
    std::optional<AlphaMethod> alpha_method;
    std::size_t t_bits = 3;
    unsigned m_bits = 2;
    std::optional<std::uint64_t> seed;  // random orthogonal factors instead of the fixed ones
};

struct ExampleReport {
    SimulationResult result;
    bool asserted = false;  // reference values checked
    bool passed = true;
};

inline constexpr double kExampleP = 0.9499;
inline constexpr double kExampleF = 0.9962;
inline constexpr double kExampleNAlpha = 4.7495;
inline constexpr double kExampleTolerance = 1e-3;

ExampleReport run_example(const ExampleOptions &opts);
int cmd_example(const ExampleOptions &opts, std::ostream &out, std::ostream &err);

struct AlphaOptions {
    std::optional<std::string> matrix_path;
    std::vector<double> sigma;
    double tau = 0.0;
};
std::vector<AlphaSolution> alpha_table(const SpectrumProfile &profile);
int cmd_alpha(const AlphaOptions &opts, std::ostream &out, std::ostream &err);

struct PipelineOptions {
    std::string matrix_path;
    double tau = 0.0;
    std::optional<double> alpha;
    AlphaMethod alpha_method = AlphaMethod::intuitive;
    std::size_t t_bits = 6;
    unsigned m_bits = 8;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
};
int cmd_pipeline(const PipelineOptions &opts, std::ostream &out, std::ostream &err);

struct SweepOptions {
    SweepConfig config;
    std::string out_path = "sweep.csv";
    std::optional<std::string> plot_path;
};
int cmd_sweep(const SweepOptions &opts, std::ostream &out, std::ostream &err);

/// Reads a flat key=value file into CLI arguments ("--key=value"; "key=true"
/// becomes "--key", "key=false" is dropped). '#' starts a comment.
std::vector<std::string> config_file_arguments(const std::string &path);
std::vector<std::string> config_arguments(std::istream &in);

}  // namespace qsvt
