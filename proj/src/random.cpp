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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qsvt/error.hpp"
#include "qsvt/harness.hpp"

namespace qsvt {

Rng::Rng(std::uint64_t seed) : engine_(seed) {
}

std::uint64_t Rng::next() {
    return engine_();
}

double Rng::uniform() {
    // Top 53 bits as a dyadic fraction in [0, 1).
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    // Box-Muller; 1 - u keeps the logarithm finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
    if (hi < lo) {
        throw Error(ErrorCode::invalid_input, "empty index range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
        return lo + static_cast<std::size_t>(next());
    }
    // Rejection sampling removes the modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<std::size_t>(x % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t instance) {
    // splitmix64 finalizer over a golden-ratio stride.
    std::uint64_t z = seed + (instance + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t k, Rng &rng) {
    if (k == 0 || k > n) {
        throw Error(ErrorCode::invalid_input, "need 1 <= k <= n for an orthonormal frame");
    }
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = rng.normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
    const Eigen::MatrixXd &r = qr.matrixQR();
    // Fixing sign(R_jj) > 0 makes the frame Haar distributed.
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

namespace {

std::vector<double> draw_sigma(std::size_t r, Rng &rng, const LowRankOptions &opts) {
    if (!(opts.sigma_min > 0.0 && opts.sigma_max >= opts.sigma_min)) {
        throw Error(ErrorCode::invalid_input, "singular value range must satisfy 0 < min <= max");
    }
    std::vector<double> sigma(r);
    const double lo = std::log(opts.sigma_min);
    const double hi = std::log(opts.sigma_max);
    for (auto &s : sigma) {
        s = std::exp(rng.uniform(lo, hi));
    }
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    for (std::size_t k = 1; k < r; ++k) {
        sigma[k] = std::min(sigma[k], sigma[k - 1] / (1.0 + opts.min_relative_gap));
    }
    return sigma;
}

std::vector<double> checked_override(const std::vector<double> &sigma, std::size_t r) {
    if (sigma.size() != r) {
        throw Error(ErrorCode::invalid_input, "singular value override has the wrong length");
    }
    std::vector<double> out = sigma;
    std::sort(out.begin(), out.end(), std::greater<>());
    for (std::size_t k = 0; k < r; ++k) {
        if (!(out[k] > 0.0) || !std::isfinite(out[k])) {
            throw Error(ErrorCode::invalid_input, "singular values must be positive and finite");
        }
        if (k > 0 && out[k - 1] - out[k] <= kDegeneracyTolerance * out[0]) {
            throw Error(ErrorCode::degenerate_spectrum, "singular value override has repeated values");
        }
    }
    return out;
}

}  // namespace

InputMatrix random_lowrank(std::size_t p, std::size_t q, std::size_t r, std::uint64_t seed, const LowRankOptions &opts) {
    if (r == 0 || r > std::min(p, q)) {
        throw Error(ErrorCode::invalid_input, "random_lowrank needs 1 <= r <= min(p, q)");
    }
    Rng rng(seed);
    const auto sigma = opts.sigma ? checked_override(*opts.sigma, r) : draw_sigma(r, rng, opts);
    const Eigen::MatrixXd u = random_orthonormal(p, r, rng);
    const Eigen::MatrixXd v = random_orthonormal(q, r, rng);
    Eigen::VectorXd s(static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) {
        s(static_cast<Eigen::Index>(k)) = sigma[k];
    }
    return u * s.asDiagonal() * v.transpose();
}

Instance exact_encoding_instance(std::uint64_t seed, std::size_t t_bits, std::size_t max_rank, std::size_t max_side) {
    if (t_bits < 1 || t_bits > 20 || max_rank == 0) {
        throw Error(ErrorCode::invalid_input, "exact instances need 1 <= t_bits <= 20 and max_rank >= 1");
    }
    Rng rng(seed);
    const std::size_t labels = (std::size_t{1} << t_bits) - 1;
    const std::size_t r = rng.index(1, std::min({max_rank, labels, max_side}));
    // Partial Fisher-Yates over the eigenvalues 1..T-1.
    std::vector<std::size_t> pool(labels);
    for (std::size_t i = 0; i < labels; ++i) {
        pool[i] = i + 1;
    }
    Instance inst;
    for (std::size_t k = 0; k < r; ++k) {
        std::swap(pool[k], pool[rng.index(k, labels - 1)]);
        inst.sigma.push_back(std::sqrt(static_cast<double>(pool[k])));
    }
    std::sort(inst.sigma.begin(), inst.sigma.end(), std::greater<>());
    const std::size_t p = rng.index(r, max_side);
    const std::size_t q = rng.index(r, max_side);
    inst.tau = inst.sigma.front() * rng.uniform(0.25, 0.9);
    inst.matrix = random_lowrank(p, q, r, rng.next(), LowRankOptions{inst.sigma});
    return inst;
}

Instance dyadic_instance(std::uint64_t seed, std::size_t max_side) {
    // Integer singular values with tau chosen so every (1 - tau/sigma)_+ has
    // at most four fraction bits. sigma^2 <= 36 fits a 6-bit C register.
    struct Template {
        std::vector<double> sigma;
        double tau;
    };
    static const std::vector<Template> templates = {
        {{2, 1}, 0.5},       {{2, 1}, 1.0},          {{4, 2, 1}, 1.0},   {{4, 2, 1}, 2.0},
        {{3, 2, 1}, 0.75},   {{3, 2, 1}, 1.5},       {{6, 3, 2, 1}, 1.5}, {{6, 3, 2, 1}, 3.0},
        {{5, 4, 2, 1}, 2.5}, {{5, 4, 2, 1}, 1.25},
    };
    Rng rng(seed);
    const auto &t = templates[rng.index(0, templates.size() - 1)];
    Instance inst;
    inst.tau = t.tau;
    // Random non-empty sub-spectrum whose leading value stays above tau.
    for (std::size_t attempt = 0; inst.sigma.empty(); ++attempt) {
        for (double s : t.sigma) {
            if (rng.uniform() < 0.75) {
                inst.sigma.push_back(s);
            }
        }
        if (inst.sigma.empty() || inst.sigma.front() <= inst.tau || inst.sigma.size() > max_side) {
            inst.sigma.clear();
        }
        if (attempt > 64) {
            inst.sigma = {t.sigma.front()};
        }
    }
    const std::size_t r = inst.sigma.size();
    const std::size_t p = rng.index(r, std::max(r, max_side));
    const std::size_t q = rng.index(r, std::max(r, max_side));
    inst.matrix = random_lowrank(p, q, r, rng.next(), LowRankOptions{inst.sigma});
    return inst;
}

InputMatrix example_matrix() {
    const double c = std::cos(std::numbers::pi / 6);
    const double s = std::sin(std::numbers::pi / 6);
    Eigen::Matrix2d u;
    u << c, -s, s, c;
    Eigen::Matrix<double, 3, 2> v;
    v << 1, 2, 2, 1, 2, -2;
    v /= 3.0;
    return u * Eigen::Vector2d(2.0, 1.0).asDiagonal() * v.transpose();
}

}  // namespace qsvt
