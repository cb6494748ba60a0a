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

#include "qsvt/spectral.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

#include "qsvt/error.hpp"

namespace qsvt {

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> u, Eigen::Ref<Eigen::VectorXd> v) {
    // Largest-magnitude entry of u is made positive, for reproducible bases.
    Eigen::Index idx = 0;
    u.cwiseAbs().maxCoeff(&idx);
    if (u(idx) < 0) {
        u = -u;
        v = -v;
    }
}

}  // namespace

double SpectralData::n1() const {
    double s = 0.0;
    for (double x : sigma) {
        s += x * x;
    }
    return s;
}

ThresholdSpec::ThresholdSpec(double tau, double sigma1) : tau_(tau) {
    if (!(tau > 0.0) || !(tau < sigma1) || !std::isfinite(tau)) {
        std::ostringstream msg;
        msg << "tau must lie in (0, sigma1) = (0, " << sigma1 << "); got " << tau;
        throw Error(ErrorCode::invalid_input, msg.str());
    }
}

std::size_t ceil_log2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

SpectralData decompose(const InputMatrix &a0, double tol) {
    if (a0.size() == 0) {
        throw Error(ErrorCode::invalid_input, "empty matrix");
    }
    if (!a0.allFinite()) {
        throw Error(ErrorCode::invalid_input, "matrix has non-finite entries");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 0.0) {
        throw Error(ErrorCode::invalid_input, "zero matrix has no singular values");
    }
    SpectralData out;
    out.rows = static_cast<std::size_t>(a0.rows());
    out.cols = static_cast<std::size_t>(a0.cols());
    out.tolerance = tol;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * s(0)) {
        ++r;
    }
    for (Eigen::Index k = 0; k + 1 < r; ++k) {
        if (s(k) - s(k + 1) <= kDegeneracyTolerance * s(k)) {
            std::ostringstream msg;
            msg << "degenerate singular values sigma_" << k + 1 << " = " << s(k) << " and sigma_" << k + 2 << " = "
                << s(k + 1);
            throw Error(ErrorCode::degenerate_spectrum, msg.str());
        }
    }
    out.sigma.assign(s.data(), s.data() + r);
    out.left = svd.matrixU().leftCols(r);
    out.right = svd.matrixV().leftCols(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        fix_sign(out.left.col(k), out.right.col(k));
    }
    return out;
}

Eigen::MatrixXd gram(const SpectralData &spec) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(spec.rows, spec.rows);
    for (std::size_t k = 0; k < spec.rank(); ++k) {
        a += spec.sigma[k] * spec.sigma[k] * spec.left.col(k) * spec.left.col(k).transpose();
    }
    return 0.5 * (a + a.transpose());
}

std::vector<double> thresholded_sigma(const SpectralData &spec, double tau) {
    std::vector<double> out(spec.rank());
    for (std::size_t k = 0; k < spec.rank(); ++k) {
        out[k] = std::max(spec.sigma[k] - tau, 0.0);
    }
    return out;
}

Eigen::MatrixXd classical_svt(const SpectralData &spec, const ThresholdSpec &thr) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(spec.rows, spec.cols);
    const auto shrunk = thresholded_sigma(spec, thr.tau());
    for (std::size_t k = 0; k < spec.rank(); ++k) {
        if (shrunk[k] > 0.0) {
            s += shrunk[k] * spec.left.col(k) * spec.right.col(k).transpose();
        }
    }
    return s;
}

std::size_t padded_dim(std::size_t p, std::size_t q, Padding padding) {
    if (padding == Padding::flat) {
        return std::size_t{1} << std::max<std::size_t>(1, ceil_log2(p * q));
    }
    const std::size_t bits = ceil_log2(p) + ceil_log2(q);
    return std::size_t{1} << std::max<std::size_t>(1, bits);
}

namespace {

std::size_t index_of(std::size_t i, std::size_t j, std::size_t q, Padding padding) {
    if (padding == Padding::flat) {
        return i * q + j;
    }
    return (i << ceil_log2(q)) | j;
}

}  // namespace

std::vector<cplx> vectorize(const Eigen::MatrixXd &m, Padding padding) {
    const auto p = static_cast<std::size_t>(m.rows());
    const auto q = static_cast<std::size_t>(m.cols());
    std::vector<cplx> out(padded_dim(p, q, padding), 0.0);
    const double norm = m.norm();
    if (!(norm > 0.0)) {
        throw Error(ErrorCode::invalid_input, "cannot vectorize a zero matrix into a state");
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            out[index_of(i, j, q, padding)] = m(i, j) / norm;
        }
    }
    return out;
}

std::vector<cplx> to_state(const SpectralData &spec, std::span<const double> weights, Padding padding) {
    if (weights.size() != spec.rank()) {
        throw Error(ErrorCode::invalid_input, "weight count does not match the rank");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(spec.rows, spec.cols);
    bool any = false;
    for (std::size_t k = 0; k < spec.rank(); ++k) {
        if (weights[k] < 0.0) {
            throw Error(ErrorCode::invalid_input, "state weights must be non-negative");
        }
        if (weights[k] > 0.0) {
            any = true;
            m += weights[k] * spec.left.col(k) * spec.right.col(k).transpose();
        }
    }
    if (!any) {
        throw Error(ErrorCode::invalid_input, "all state weights are zero");
    }
    return vectorize(m, padding);
}

UnitaryMatrix herm_exp(const Eigen::MatrixXcd &a, double t) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::invalid_input, "herm_exp needs a square matrix");
    }
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw Error(ErrorCode::invalid_input, "herm_exp input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    const Eigen::MatrixXcd &v = eig.eigenvectors();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        phases(k) = std::polar(1.0, lambda(k) * t);
    }
    const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
    const auto dim = static_cast<std::size_t>(a.rows());
    std::vector<cplx> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            entries[r * dim + c] = u(r, c);
        }
    }
    return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix herm_exp(const Eigen::MatrixXd &a, double t) {
    return herm_exp(Eigen::MatrixXcd(a.cast<cplx>()), t);
}

InputMatrix read_matrix(std::istream &in) {
    long p = 0;
    long q = 0;
    if (!(in >> p >> q) || p <= 0 || q <= 0) {
        throw Error(ErrorCode::invalid_input, "matrix header must be two positive integers \"p q\"");
    }
    InputMatrix m(p, q);
    for (long i = 0; i < p; ++i) {
        for (long j = 0; j < q; ++j) {
            if (!(in >> m(i, j))) {
                std::ostringstream msg;
                msg << "matrix body ended early at row " << i + 1 << ", column " << j + 1;
                throw Error(ErrorCode::invalid_input, msg.str());
            }
        }
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::invalid_input, "matrix has non-finite entries");
    }
    std::string extra;
    if (in >> extra) {
        throw Error(ErrorCode::invalid_input, "unexpected data after the last matrix row: '" + extra + "'");
    }
    return m;
}

InputMatrix read_matrix_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open matrix file " + path);
    }
    return read_matrix(in);
}

void write_matrix(std::ostream &out, const InputMatrix &m) {
    out << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << (j ? " " : "") << m(i, j);
        }
        out << '\n';
    }
}

}  // namespace qsvt
