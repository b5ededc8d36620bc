// Copyright 2026 The rotinv Authors
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

// Planar correlation tensors and the rotationally invariant correlation
// function E(a_1, ..., a_N) = sum_i T_i prod_j c_j^{i_j}.

#pragma once

#include <bit>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotinv/common.hpp"
#include "rotinv/state_kit.hpp"

namespace rotinv {

/// Largest party count a planar tensor may carry (2^24 doubles = 128 MiB).
inline constexpr int kMaxTensorParties = 24;

/// Correlation tensor restricted to the x-y plane of every party.
///
/// Entry keys pack the multi-index (i_1, ..., i_N), i_j in {1, 2},
/// little-endian: bit j-1 is clear for i_j = 1 and set for i_j = 2.
class CorrelationTensor {
  public:
    static constexpr double kEntryTolerance = 1e-9;

    CorrelationTensor(int n_parties, std::vector<double> entries) : n_parties_(n_parties), entries_(std::move(entries)) {
        detail::check_party_count(n_parties, kMaxTensorParties);
        if (entries_.size() != pow2(n_parties)) throw ShapeError("tensor must have 2^N entries");
        for (double e : entries_) {
            if (!(std::abs(e) <= 1.0 + kEntryTolerance))
                throw DomainError("tensor entries must lie in [-1, 1]");
        }
    }

    static CorrelationTensor zero(int n_parties) {
        detail::check_party_count(n_parties, kMaxTensorParties);
        return CorrelationTensor(n_parties, std::vector<double>(pow2(n_parties), 0.0));
    }

    int n_parties() const { return n_parties_; }
    std::size_t size() const { return entries_.size(); }
    std::span<const double> entries() const { return entries_; }
    double operator[](std::size_t key) const { return entries_[key]; }
    double at(std::string_view label) const { return entries_.at(key_from_label(label, n_parties_)); }

    /// "1122" -> key with bits 2 and 3 set.
    static std::size_t key_from_label(std::string_view label, int n_parties) {
        if (label.size() != static_cast<std::size_t>(n_parties))
            throw ShapeError("index label '" + std::string(label) + "' must have N digits");
        std::size_t key = 0;
        for (std::size_t j = 0; j < label.size(); ++j) {
            if (label[j] == '2')
                key |= std::size_t{1} << j;
            else if (label[j] != '1')
                throw DomainError("index label '" + std::string(label) + "' may only contain 1 and 2");
        }
        return key;
    }

    static std::string label_from_key(std::size_t key, int n_parties) {
        std::string label(static_cast<std::size_t>(n_parties), '1');
        for (int j = 0; j < n_parties; ++j) {
            if (key >> j & 1U) label[static_cast<std::size_t>(j)] = '2';
        }
        return label;
    }

    friend bool operator==(const CorrelationTensor&, const CorrelationTensor&) = default;

  private:
    int n_parties_;
    std::vector<double> entries_;
};

/// Contracts every slot of the tensor with the given 2-vectors (not
/// necessarily unit): sum_i T_i prod_j v_j[i_j].
inline double contract(const CorrelationTensor& tensor, std::span<const Vec2> vectors) {
    if (vectors.size() != static_cast<std::size_t>(tensor.n_parties()))
        throw ShapeError("vector count must equal the party count");
    std::vector<double> work(tensor.entries().begin(), tensor.entries().end());
    // Contract the highest party first so each pass halves a contiguous block.
    for (std::size_t half = work.size() / 2, j = vectors.size(); half >= 1; half /= 2) {
        const Vec2& v = vectors[--j];
        for (std::size_t k = 0; k < half; ++k) work[k] = v[0] * work[k] + v[1] * work[k + half];
    }
    return work.front();
}

/// Partial contraction leaving party `free_party` open; returns the 2-vector g
/// with E = g . d_free.
inline Vec2 contract_except(const CorrelationTensor& tensor, std::span<const Vec2> vectors, int free_party) {
    const auto n = static_cast<std::size_t>(tensor.n_parties());
    if (vectors.size() != n) throw ShapeError("vector count must equal the party count");
    const std::size_t free_bit = std::size_t{1} << free_party;
    Vec2 g{0.0, 0.0};
    std::vector<double> weight(tensor.size());
    weight[0] = 1.0;
    // Build prod_{j != free} v_j[i_j] for every key, doubling one party at a time.
    std::size_t filled = 1;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        if (bit == free_bit) {
            for (std::size_t k = 0; k < filled; ++k) weight[k + filled] = weight[k];
        } else {
            for (std::size_t k = 0; k < filled; ++k) {
                weight[k + filled] = weight[k] * vectors[j][1];
                weight[k] *= vectors[j][0];
            }
        }
        filled *= 2;
    }
    const auto entries = tensor.entries();
    for (std::size_t key = 0; key < entries.size(); ++key) g[(key & free_bit) ? 1 : 0] += entries[key] * weight[key];
    return g;
}

/// E(alpha) = T . n_1(alpha_1) x ... x n_N(alpha_N), n_j = (cos, sin).
inline double correlation_value(const CorrelationTensor& tensor, std::span<const double> angles) {
    if (angles.size() != static_cast<std::size_t>(tensor.n_parties()))
        throw ShapeError("angle count must equal the party count");
    std::vector<Vec2> dirs;
    dirs.reserve(angles.size());
    for (double a : angles) dirs.push_back(unit_vector(a));
    return contract(tensor, dirs);
}

/// Re-expresses the tensor in local frames rotated by `deltas` about z, so
/// that correlation_value(rotated, alpha - delta) == correlation_value(tensor, alpha).
/// Rotated entries are values of E, so they stay in [-1, 1] whenever |E| <= 1.
inline CorrelationTensor rotate_frames(const CorrelationTensor& tensor, std::span<const double> deltas) {
    if (deltas.size() != static_cast<std::size_t>(tensor.n_parties()))
        throw ShapeError("rotation count must equal the party count");
    std::vector<double> e(tensor.entries().begin(), tensor.entries().end());
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        const double c = std::cos(deltas[j]);
        const double s = std::sin(deltas[j]);
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t key = 0; key < e.size(); ++key) {
            if (key & bit) continue;
            const double t1 = e[key];
            const double t2 = e[key | bit];
            e[key] = c * t1 + s * t2;
            e[key | bit] = -s * t1 + c * t2;
        }
    }
    return CorrelationTensor(tensor.n_parties(), std::move(e));
}

namespace detail {

template <typename State>
CorrelationTensor planar_tensor_of(const State& state) {
    const int n = state.n_parties();
    std::vector<double> entries(pow2(n));
    std::vector<PauliAxis> axes(static_cast<std::size_t>(n));
    for (std::size_t key = 0; key < entries.size(); ++key) {
        for (int j = 0; j < n; ++j) axes[static_cast<std::size_t>(j)] = (key >> j & 1U) ? PauliAxis::y : PauliAxis::x;
        entries[key] = pauli_expectation(state, axes);
    }
    return CorrelationTensor(n, std::move(entries));
}

}  // namespace detail

/// Entry i = Tr[rho sigma_{i_1} x ... x sigma_{i_N}] with 1 -> x, 2 -> y.
inline CorrelationTensor tensor_from_state(const DensityMatrix& rho) { return detail::planar_tensor_of(rho); }
inline CorrelationTensor tensor_from_state(const StateVector& psi) { return detail::planar_tensor_of(psi); }
inline CorrelationTensor tensor_from_state(const NoisyState& state) { return detail::planar_tensor_of(state); }

/// Closed form for the noisy GHZ state: V (-1)^{k/2} when the number k of
/// y-indices is even, 0 otherwise.
inline CorrelationTensor ghz_planar_tensor(int n_parties, double visibility) {
    detail::check_party_count(n_parties, kMaxTensorParties);
    detail::check_visibility(visibility);
    std::vector<double> entries(pow2(n_parties), 0.0);
    for (std::size_t key = 0; key < entries.size(); ++key) {
        const int k = std::popcount(key);
        if (k % 2 == 0) entries[key] = (k / 2 % 2 == 0) ? visibility : -visibility;
    }
    return CorrelationTensor(n_parties, std::move(entries));
}

}  // namespace rotinv
