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

// Classical linear algebra around the input matrix: SVD, the Gram matrix
// A = A0 A0^T, the classical thresholding operator, vectorization into
// quantum amplitudes and exact Hermitian exponentials.

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsvt/state.hpp"

namespace qsvt {

using InputMatrix = Eigen::MatrixXd;

inline constexpr double kDefaultRankTolerance = 1e-9;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Singular triples of A0 with sigma strictly descending.
struct SpectralData {
    std::size_t rows = 0;  // p
    std::size_t cols = 0;  // q
    std::vector<double> sigma;
    Eigen::MatrixXd left;   // p x r, columns u_k
    Eigen::MatrixXd right;  // q x r, columns v_k
    double tolerance = kDefaultRankTolerance;

    std::size_t rank() const {
        return sigma.size();
    }
    /// Sum of sigma_k^2.
    double n1() const;
};

/// Threshold tau, validated against the leading singular value.
class ThresholdSpec {
  public:
    /// Throws ErrorCode::invalid_input unless 0 < tau < sigma1.
    ThresholdSpec(double tau, double sigma1);
    double tau() const {
        return tau_;
    }

  private:
    double tau_;
};

/// How singular-vector products are laid out in the amplitude vector.
enum class Padding {
    /// index i*q + j, total length the next power of two >= p*q.
    flat,
    /// index i*Q + j with P, Q the next powers of two >= p, q; u occupies the
    /// high qubits and v the low qubits.
    factored,
};

SpectralData decompose(const InputMatrix &a0, double tol = kDefaultRankTolerance);

/// A = sum sigma_k^2 u_k u_k^T as a dense p x p matrix.
Eigen::MatrixXd gram(const SpectralData &spec);

/// S = sum (sigma_k - tau)_+ u_k v_k^T.
Eigen::MatrixXd classical_svt(const SpectralData &spec, const ThresholdSpec &thr);

/// (sigma_k - tau)_+ for every k.
std::vector<double> thresholded_sigma(const SpectralData &spec, double tau);

/// Unit vector proportional to sum w_k u_k (x) v_k.
std::vector<cplx> to_state(const SpectralData &spec, std::span<const double> weights, Padding padding = Padding::flat);

/// Vectorizes an arbitrary p x q matrix with the same index convention and normalizes it.
std::vector<cplx> vectorize(const Eigen::MatrixXd &m, Padding padding = Padding::flat);

/// Dimension of the vectorized state for a p x q matrix.
std::size_t padded_dim(std::size_t p, std::size_t q, Padding padding);

/// Smallest k with 2^k >= n.
std::size_t ceil_log2(std::size_t n);

/// V diag(e^{i lambda t}) V^dagger from an exact eigendecomposition.
UnitaryMatrix herm_exp(const Eigen::MatrixXcd &a, double t);
UnitaryMatrix herm_exp(const Eigen::MatrixXd &a, double t);

/// Plain-text matrix format: first line "p q", then p rows of q numbers.
InputMatrix read_matrix(std::istream &in);
InputMatrix read_matrix_file(const std::string &path);
void write_matrix(std::ostream &out, const InputMatrix &m);

}  // namespace qsvt
