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

#include "qsvt/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qsvt/error.hpp"
#include "qsvt/kernels.hpp"

namespace qsvt {

namespace {

bool is_power_of_two(std::size_t x) {
    return x != 0 && (x & (x - 1)) == 0;
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw Error(ErrorCode::invalid_input, what);
    }
}

std::vector<unsigned> bits_of(const QuantumState &state, std::span<const std::size_t> qubits) {
    std::vector<unsigned> bits;
    bits.reserve(qubits.size());
    for (auto q : qubits) {
        require(q < state.num_qubits(), "qubit index out of range");
        bits.push_back(state.bit_of(q));
    }
    return bits;
}

void require_distinct(std::span<const std::size_t> qubits) {
    std::set<std::size_t> seen(qubits.begin(), qubits.end());
    require(seen.size() == qubits.size(), "target qubits must be distinct");
}

}  // namespace

std::vector<std::size_t> QubitRange::qubits() const {
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = first + i;
    }
    return out;
}

RegisterLayout RegisterLayout::standard(std::size_t m_bits, std::size_t t_bits, std::size_t b_qubits) {
    RegisterLayout layout;
    layout.ancilla = 0;
    layout.reg_L = {1, m_bits};
    layout.reg_C = {layout.reg_L.end(), t_bits};
    layout.reg_B = {layout.reg_C.end(), b_qubits};
    layout.validate();
    return layout;
}

std::size_t RegisterLayout::num_qubits() const {
    return 1 + reg_L.count + reg_C.count + reg_B.count;
}

void RegisterLayout::validate() const {
    const std::size_t n = num_qubits();
    std::vector<int> hits(n, 0);
    auto mark = [&](std::size_t q) {
        require(q < n, "register layout does not fit in its qubit count");
        ++hits[q];
    };
    mark(ancilla);
    for (const auto *r : {&reg_L, &reg_C, &reg_B}) {
        for (std::size_t q = r->first; q < r->end(); ++q) {
            mark(q);
        }
    }
    require(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }),
            "register ranges must be disjoint and cover every qubit");
}

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(Unchecked, std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<cplx> entries, double tol)
    : dim_(dim), entries_(std::move(entries)) {
    require(is_power_of_two(dim_), "unitary dimension must be a power of two");
    require(entries_.size() == dim_ * dim_, "unitary entry count does not match its dimension");
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += std::conj(entries_[k * dim_ + r]) * entries_[k * dim_ + c];
            }
            const cplx expect = r == c ? 1.0 : 0.0;
            require(std::abs(acc - expect) <= tol, "matrix is not unitary");
        }
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    require(is_power_of_two(dim), "unitary dimension must be a power of two");
    std::vector<cplx> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = 1.0;
    }
    return UnitaryMatrix(Unchecked{}, dim, std::move(e));
}

UnitaryMatrix UnitaryMatrix::pauli_x() {
    return UnitaryMatrix(Unchecked{}, 2, {0.0, 1.0, 1.0, 0.0});
}

UnitaryMatrix UnitaryMatrix::pauli_y() {
    return UnitaryMatrix(Unchecked{}, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
}

UnitaryMatrix UnitaryMatrix::hadamard() {
    const double h = 1.0 / std::numbers::sqrt2;
    return UnitaryMatrix(Unchecked{}, 2, {h, h, h, -h});
}

UnitaryMatrix UnitaryMatrix::ry(double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    return UnitaryMatrix(Unchecked{}, 2, {c, -s, s, c});
}

UnitaryMatrix UnitaryMatrix::phase(double phi) {
    return UnitaryMatrix(Unchecked{}, 2, {1.0, 0.0, 0.0, std::polar(1.0, phi)});
}

std::size_t UnitaryMatrix::num_qubits() const {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < dim_) {
        ++k;
    }
    return k;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    std::vector<cplx> e(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            e[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
        }
    }
    return UnitaryMatrix(Unchecked{}, dim_, std::move(e));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    require(dim_ == rhs.dim_, "unitary dimension mismatch");
    std::vector<cplx> e(dim_ * dim_, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cplx a = entries_[r * dim_ + k];
            for (std::size_t c = 0; c < dim_; ++c) {
                e[r * dim_ + c] += a * rhs.entries_[k * dim_ + c];
            }
        }
    }
    return UnitaryMatrix(Unchecked{}, dim_, std::move(e));
}

// ---------------------------------------------------------------------------

QuantumState QuantumState::zero(std::size_t n_qubits, std::size_t max_qubits) {
    if (n_qubits > max_qubits) {
        std::ostringstream msg;
        msg << "qubit budget exceeded: " << n_qubits << " > " << max_qubits;
        throw Error(ErrorCode::invalid_input, msg.str());
    }
    require(n_qubits >= 1, "a state needs at least one qubit");
    std::vector<cplx> amps(std::size_t{1} << n_qubits, 0.0);
    amps[0] = 1.0;
    return QuantumState(n_qubits, std::move(amps));
}

QuantumState QuantumState::from_amplitudes(std::vector<cplx> amplitudes) {
    require(amplitudes.size() >= 2 && is_power_of_two(amplitudes.size()), "amplitude count must be a power of two");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) {
        ++n;
    }
    QuantumState s(n, std::move(amplitudes));
    require(std::abs(s.norm() - 1.0) <= 1e-10, "amplitudes are not normalized");
    return s;
}

double QuantumState::norm() const {
    return std::sqrt(kernels::omp::masked_probability(amps_, 0, 0));
}

std::uint64_t QuantumState::mask_of(std::span<const std::size_t> qubits) const {
    std::uint64_t mask = 0;
    for (auto q : qubits) {
        mask |= std::uint64_t{1} << bit_of(q);
    }
    return mask;
}

double QuantumState::probability_register_zero(const QubitRange &range) const {
    const auto qs = range.qubits();
    return kernels::omp::masked_probability(amps_, mask_of(qs), 0);
}

// ---------------------------------------------------------------------------

BasisPermutation BasisPermutation::complete(std::size_t width,
                                            const std::map<std::uint64_t, std::uint64_t> &partial) {
    require(width < 40, "permutation width too large");
    const std::uint64_t size = std::uint64_t{1} << width;
    std::vector<std::uint64_t> image(size, size);
    std::vector<bool> used(size, false);
    for (const auto &[from, to] : partial) {
        require(from < size && to < size, "oracle label out of range");
        if (used[to]) {
            throw Error(ErrorCode::invalid_input, "oracle map is not injective");
        }
        used[to] = true;
        image[from] = to;
    }
    std::vector<std::uint64_t> displaced;
    for (std::uint64_t x = 0; x < size; ++x) {
        if (image[x] != size) {
            continue;
        }
        if (!used[x]) {
            image[x] = x;
            used[x] = true;
        } else {
            displaced.push_back(x);
        }
    }
    std::uint64_t next_free = 0;
    for (auto x : displaced) {
        while (used[next_free]) {
            ++next_free;
        }
        image[x] = next_free;
        used[next_free] = true;
    }
    return BasisPermutation(width, std::move(image));
}

BasisPermutation BasisPermutation::from_image(std::size_t width, std::vector<std::uint64_t> image) {
    const std::uint64_t size = std::uint64_t{1} << width;
    require(image.size() == size, "permutation image has the wrong size");
    std::vector<bool> used(size, false);
    for (auto y : image) {
        require(y < size && !used[y], "image is not a permutation");
        used[y] = true;
    }
    return BasisPermutation(width, std::move(image));
}

BasisPermutation BasisPermutation::identity(std::size_t width) {
    std::vector<std::uint64_t> image(std::size_t{1} << width);
    for (std::size_t i = 0; i < image.size(); ++i) {
        image[i] = i;
    }
    return BasisPermutation(width, std::move(image));
}

BasisPermutation BasisPermutation::inverse() const {
    std::vector<std::uint64_t> inv(image_.size());
    for (std::size_t x = 0; x < image_.size(); ++x) {
        inv[image_[x]] = x;
    }
    return BasisPermutation(width_, std::move(inv));
}

// ---------------------------------------------------------------------------

QuantumState new_state(const RegisterLayout &layout, std::size_t max_qubits) {
    layout.validate();
    return QuantumState::zero(layout.num_qubits(), max_qubits);
}

void load_register(QuantumState &state, const QubitRange &range, std::span<const cplx> amplitudes) {
    require(range.end() <= state.num_qubits(), "register range outside the state");
    require(amplitudes.size() == (std::size_t{1} << range.count), "input length does not match the register");
    double norm2 = 0.0;
    for (const auto &a : amplitudes) {
        norm2 += std::norm(a);
    }
    require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-10, "register input is not a unit vector");
    require(std::abs(state.probability_register_zero(range) - 1.0) <= 1e-10, "register is not cleared");

    const auto qs = range.qubits();
    const std::uint64_t mask = state.mask_of(qs);
    auto amps = state.mutable_amplitudes();
    // Read from each |0>_range index, write every label of the register.
    const auto n = static_cast<std::int64_t>(amps.size());
    std::vector<std::uint64_t> deposit(amplitudes.size());
    for (std::size_t label = 0; label < amplitudes.size(); ++label) {
        std::uint64_t v = 0;
        for (std::size_t s = 0; s < qs.size(); ++s) {
            if ((label >> (qs.size() - 1 - s)) & 1) {
                v |= std::uint64_t{1} << state.bit_of(qs[s]);
            }
        }
        deposit[label] = v;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < n; ++s) {
        const auto i = static_cast<std::uint64_t>(s);
        if ((i & mask) != 0) {
            continue;
        }
        const cplx base = amps[i];
        for (std::size_t label = amplitudes.size(); label-- > 0;) {
            amps[i | deposit[label]] = base * amplitudes[label];
        }
    }
}

void apply_unitary(QuantumState &state, const UnitaryMatrix &u, std::span<const std::size_t> targets) {
    require(targets.size() == u.num_qubits(), "target count does not match the matrix");
    require_distinct(targets);
    const auto bits = bits_of(state, targets);
    kernels::omp::apply_gate(state.mutable_amplitudes(), {bits, u.entries(), 0, 0});
}

void apply_controlled(QuantumState &state, const UnitaryMatrix &u, std::size_t control, int control_value,
                      std::span<const std::size_t> targets) {
    require(targets.size() == u.num_qubits(), "target count does not match the matrix");
    require(control < state.num_qubits(), "control qubit out of range");
    require(control_value == 0 || control_value == 1, "control value must be 0 or 1");
    require(std::find(targets.begin(), targets.end(), control) == targets.end(),
            "control qubit overlaps the targets");
    require_distinct(targets);
    const auto bits = bits_of(state, targets);
    const std::uint64_t cmask = std::uint64_t{1} << state.bit_of(control);
    kernels::omp::apply_gate(state.mutable_amplitudes(),
                             {bits, u.entries(), cmask, control_value ? cmask : std::uint64_t{0}});
}

void apply_basis_oracle(QuantumState &state, std::span<const std::size_t> qubits, const BasisPermutation &perm) {
    require(qubits.size() == perm.width(), "oracle width does not match the qubit list");
    require_distinct(qubits);
    const auto bits = bits_of(state, qubits);
    std::vector<cplx> out(state.dim());
    kernels::omp::relabel(state.amplitudes(), out, {bits, perm.image()});
    std::copy(out.begin(), out.end(), state.mutable_amplitudes().begin());
}

double probability_of(const QuantumState &state, std::size_t qubit, int value) {
    require(qubit < state.num_qubits(), "qubit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << state.bit_of(qubit);
    return kernels::omp::masked_probability(state.amplitudes(), mask, value ? mask : 0);
}

PostSelection post_select(const QuantumState &state, std::size_t qubit, int value, double floor) {
    require(value == 0 || value == 1, "measurement value must be 0 or 1");
    const double p = probability_of(state, qubit, value);
    if (p < floor) {
        std::ostringstream msg;
        msg << "post-selection probability " << p << " is below the floor " << floor
            << " (every component thresholded)";
        throw Error(ErrorCode::fully_thresholded, msg.str());
    }
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::uint64_t mask = std::uint64_t{1} << state.bit_of(qubit);
    const std::uint64_t keep = value ? mask : 0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != keep) {
            amps[i] = 0.0;
        }
    }
    kernels::omp::scale(amps, 1.0 / std::sqrt(p));
    return {QuantumState::from_amplitudes(std::move(amps)), p};
}

std::vector<double> register_distribution(const QuantumState &state, const QubitRange &range) {
    require(range.end() <= state.num_qubits(), "register range outside the state");
    const auto qs = range.qubits();
    std::vector<unsigned> bits;
    for (auto q : qs) {
        bits.push_back(state.bit_of(q));
    }
    std::vector<double> dist(std::size_t{1} << range.count, 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        std::uint64_t label = 0;
        for (unsigned b : bits) {
            label = (label << 1) | ((i >> b) & 1);
        }
        dist[label] += std::norm(amps[i]);
    }
    return dist;
}

cplx overlap(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), "overlap of states with different dimensions");
    return kernels::omp::inner_product(a, b);
}

cplx overlap(const QuantumState &a, const QuantumState &b) {
    return overlap(a.amplitudes(), b.amplitudes());
}

}  // namespace qsvt
