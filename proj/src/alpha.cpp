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

#include "qsvt/alpha.hpp"

#include <cmath>
#include <numbers>

#include "qsvt/error.hpp"

namespace qsvt {

namespace {

// Neumaier-compensated accumulator.
class Sum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <class Term>
double sum_over(const SpectrumProfile &p, Term &&term) {
    Sum s;
    for (std::size_t k = 0; k < p.sigma.size(); ++k) {
        s.add(term(p.sigma[k] * p.sigma[k], p.y[k]));
    }
    return s.value();
}

void finish(SpectrumProfile &p) {
    if (p.sigma.empty()) {
        throw Error(ErrorCode::invalid_input, "empty spectrum");
    }
    p.n1 = sum_over(p, [](double s2, double) { return s2; });
    p.n2 = sum_over(p, [](double s2, double y) { return s2 * y * y; });
    if (!(p.n1 > 0.0)) {
        throw Error(ErrorCode::invalid_input, "spectrum has zero norm");
    }
    if (!(p.n2 > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "every singular value is at or below tau");
    }
}

double sin_sq_sum(const SpectrumProfile &p, double alpha) {
    return sum_over(p, [alpha](double s2, double y) {
        const double s = std::sin(y * alpha);
        return s2 * s * s;
    });
}

double weighted_sin_sum(const SpectrumProfile &p, double alpha) {
    return sum_over(p, [alpha](double s2, double y) { return s2 * y * std::sin(y * alpha); });
}

double golden_max(const SpectrumProfile &p, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double gc = g_objective(p, c);
    double gd = g_objective(p, d);
    while (hi - lo > tol) {
        if (gc >= gd) {
            hi = d;
            d = c;
            gd = gc;
            c = hi - inv_phi * (hi - lo);
            gc = g_objective(p, c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + inv_phi * (hi - lo);
            gd = g_objective(p, d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SpectrumProfile SpectrumProfile::from_threshold(std::span<const double> sigma, double tau) {
    if (!(tau > 0.0)) {
        throw Error(ErrorCode::invalid_input, "tau must be positive");
    }
    SpectrumProfile p;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (!(sigma[k] > 0.0) || (k > 0 && sigma[k] > sigma[k - 1])) {
            throw Error(ErrorCode::invalid_input, "singular values must be positive and descending");
        }
        p.sigma.push_back(sigma[k]);
        p.y.push_back(std::max(0.0, 1.0 - tau / sigma[k]));
    }
    finish(p);
    return p;
}

SpectrumProfile SpectrumProfile::from_fractions(std::span<const double> sigma, std::span<const double> y) {
    if (sigma.size() != y.size()) {
        throw Error(ErrorCode::invalid_input, "sigma and y lengths differ");
    }
    SpectrumProfile p;
    p.sigma.assign(sigma.begin(), sigma.end());
    p.y.assign(y.begin(), y.end());
    for (double v : p.y) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw Error(ErrorCode::invalid_input, "threshold fractions must lie in [0, 1)");
        }
    }
    finish(p);
    return p;
}

std::string to_string(AlphaMethod method) {
    switch (method) {
        case AlphaMethod::intuitive:
            return "intuitive";
        case AlphaMethod::taylor2:
            return "taylor2";
        case AlphaMethod::taylor4:
            return "taylor4";
        case AlphaMethod::numeric:
            return "numeric";
    }
    return "unknown";
}

AlphaMethod parse_alpha_method(const std::string &name) {
    for (auto m : {AlphaMethod::intuitive, AlphaMethod::taylor2, AlphaMethod::taylor4, AlphaMethod::numeric}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw Error(ErrorCode::invalid_input, "unknown alpha method '" + name + "'");
}

double probability(const SpectrumProfile &profile, double alpha) {
    return sin_sq_sum(profile, alpha) / profile.n1;
}

double fidelity_analytic(const SpectrumProfile &profile, double alpha) {
    const double n_alpha = sin_sq_sum(profile, alpha);
    if (!(n_alpha > 0.0)) {
        throw Error(ErrorCode::invalid_input, "fidelity undefined where P(alpha) = 0");
    }
    return weighted_sin_sum(profile, alpha) / std::sqrt(profile.n2 * n_alpha);
}

double fidelity_encoded(const SpectrumProfile &exact, std::span<const double> y_encoded, double alpha) {
    if (y_encoded.size() != exact.sigma.size()) {
        throw Error(ErrorCode::invalid_input, "sigma and y lengths differ");
    }
    Sum cross;
    Sum out;
    for (std::size_t k = 0; k < exact.sigma.size(); ++k) {
        const double s2 = exact.sigma[k] * exact.sigma[k];
        const double w = std::sin(y_encoded[k] * alpha);
        cross.add(s2 * exact.y[k] * w);
        out.add(s2 * w * w);
    }
    if (!(out.value() > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "post-selection probability is zero");
    }
    return cross.value() / std::sqrt(exact.n2 * out.value());
}

double g_objective(const SpectrumProfile &profile, double alpha) {
    return weighted_sin_sum(profile, alpha) / std::sqrt(profile.n1 * profile.n2);
}

double g_derivative(const SpectrumProfile &profile, double alpha) {
    const double s = sum_over(profile, [alpha](double s2, double y) { return s2 * y * y * std::cos(y * alpha); });
    return s / std::sqrt(profile.n1 * profile.n2);
}

AlphaSolution evaluate(const SpectrumProfile &profile, AlphaMethod method, double alpha) {
    AlphaSolution sol;
    sol.method = method;
    sol.alpha = alpha;
    sol.P = probability(profile, alpha);
    sol.F = sol.P > 0.0 ? fidelity_analytic(profile, alpha) : 0.0;
    sol.G = g_objective(profile, alpha);
    return sol;
}

AlphaSolution alpha_intuitive(const SpectrumProfile &profile) {
    if (!(profile.y1() > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "y1 = 0: sigma1 is at or below tau");
    }
    return evaluate(profile, AlphaMethod::intuitive, std::numbers::pi / (2.0 * profile.y1()));
}

AlphaSolution alpha_taylor2(const SpectrumProfile &profile) {
    const double c = profile.n2;
    const double y4 = sum_over(profile, [](double s2, double y) { return s2 * y * y * y * y; });
    if (!(y4 > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "taylor2 denominator sum sigma^2 y^4 vanishes");
    }
    return evaluate(profile, AlphaMethod::taylor2, std::sqrt(2.0 * c / y4));
}

std::optional<double> taylor4_root(const SpectrumProfile &profile) {
    const double a = sum_over(profile, [](double s2, double y) { return s2 * std::pow(y, 6); }) / 24.0;
    const double b = sum_over(profile, [](double s2, double y) { return s2 * std::pow(y, 4); }) / 2.0;
    const double c = profile.n2;
    if (!(a > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "taylor4 coefficients vanish");
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return std::nullopt;
    }
    return std::sqrt((b - std::sqrt(disc)) / (2.0 * a));
}

AlphaSolution alpha_taylor4(const SpectrumProfile &profile) {
    if (auto root = taylor4_root(profile)) {
        return evaluate(profile, AlphaMethod::taylor4, *root);
    }
    auto sol = alpha_taylor2(profile);
    sol.method = AlphaMethod::taylor4;
    sol.fell_back = true;
    return sol;
}

AlphaSolution alpha_numeric(const SpectrumProfile &profile, const NumericOptions &opts) {
    if (!(profile.y1() > 0.0)) {
        throw Error(ErrorCode::fully_thresholded, "y1 = 0: sigma1 is at or below tau");
    }
    const double upper = std::numbers::pi / profile.y1();
    const std::size_t n = std::max<std::size_t>(opts.grid_points, 3);
    const double step = upper / static_cast<double>(n);
    std::size_t best = 1;
    double best_g = g_objective(profile, step);
    for (std::size_t i = 2; i <= n; ++i) {
        const double g = g_objective(profile, step * static_cast<double>(i));
        if (g > best_g) {
            best_g = g;
            best = i;
        }
    }
    const double lo = step * static_cast<double>(best - 1);
    const double hi = std::min(upper, step * static_cast<double>(best + 1));
    double alpha = golden_max(profile, lo, hi, opts.tolerance);
    if (g_objective(profile, alpha) < best_g) {
        alpha = step * static_cast<double>(best);
    }
    // Closed forms inside the bracket are candidates too.
    std::vector<double> candidates = {alpha_intuitive(profile).alpha, alpha_taylor2(profile).alpha};
    if (auto root = taylor4_root(profile)) {
        candidates.push_back(*root);
    }
    for (double c : candidates) {
        if (c > 0.0 && c <= upper && g_objective(profile, c) > g_objective(profile, alpha)) {
            alpha = c;
        }
    }
    return evaluate(profile, AlphaMethod::numeric, alpha);
}

AlphaSolution solve_alpha(const SpectrumProfile &profile, AlphaMethod method) {
    switch (method) {
        case AlphaMethod::intuitive:
            return alpha_intuitive(profile);
        case AlphaMethod::taylor2:
            return alpha_taylor2(profile);
        case AlphaMethod::taylor4:
            return alpha_taylor4(profile);
        case AlphaMethod::numeric:
            return alpha_numeric(profile);
    }
    throw Error(ErrorCode::invalid_input, "unknown alpha method");
}

}  // namespace qsvt
