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

// Maximal tensor component over products of planar unit vectors, plus the
// quadratic functionals of a planar tensor.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "rotinv/common.hpp"
#include "rotinv/correlation.hpp"

namespace rotinv {

struct TMaxConfig {
    std::uint64_t seed = 0;
    int random_starts = 64;
    int max_sweeps = 1000;
    /// A sweep improving the objective by less than this ends the ascent.
    double tolerance = 1e-13;
    /// Points per angle of the exhaustive grid; 0 disables the grid.
    int grid_points = 48;
    int grid_max_parties = 4;
};

struct TMaxResult {
    double value = 0.0;
    std::vector<Vec2> maximizer;
    /// Sweeps summed over every ascent that was run.
    int iterations = 0;
    int starts_used = 0;
    /// The winning ascent converged before the sweep cap.
    bool certified = false;
    /// An exhaustive angle grid was also searched and refined.
    bool grid_checked = false;
};

namespace detail {

struct Ascent {
    std::vector<Vec2> dirs;
    double value = 0.0;
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic coordinate ascent: with every other party fixed, the objective is
/// g . d_j, maximized by d_j = g / |g|. Non-decreasing in every step.
inline Ascent alternating_ascent(const CorrelationTensor& tensor, std::vector<Vec2> dirs, const TMaxConfig& config) {
    Ascent out;
    out.value = contract(tensor, dirs);
    const int n = tensor.n_parties();
    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        for (int j = 0; j < n; ++j) {
            const Vec2 g = contract_except(tensor, dirs, j);
            const double norm = std::hypot(g[0], g[1]);
            // g = 0: every direction is optimal, keep the current one.
            if (norm > 0.0) dirs[static_cast<std::size_t>(j)] = {g[0] / norm, g[1] / norm};
        }
        const double next = contract(tensor, dirs);
        const double gain = next - out.value;
        out.value = next;
        out.sweeps = sweep;
        if (gain < config.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.dirs = std::move(dirs);
    return out;
}

/// Uniform angle in [0, 2pi) from the top 53 bits, independent of the
/// standard library's distribution implementation.
inline double draw_angle(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * kTwoPi;
}

inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Starting points: the dominant basis component, 2N axis-aligned corners,
/// then seeded random directions.
inline std::vector<std::vector<Vec2>> tmax_starts(const CorrelationTensor& tensor, const TMaxConfig& config) {
    const auto n = static_cast<std::size_t>(tensor.n_parties());
    constexpr Vec2 e1{1.0, 0.0};
    constexpr Vec2 e2{0.0, 1.0};
    std::vector<std::vector<Vec2>> starts;
    starts.reserve(1 + 2 * n + static_cast<std::size_t>(std::max(config.random_starts, 0)));

    std::size_t best_key = 0;
    const auto entries = tensor.entries();
    for (std::size_t key = 1; key < entries.size(); ++key) {
        if (std::abs(entries[key]) > std::abs(entries[best_key])) best_key = key;
    }
    std::vector<Vec2> corner(n);
    for (std::size_t j = 0; j < n; ++j) corner[j] = (best_key >> j & 1U) ? e2 : e1;
    if (entries[best_key] < 0.0) corner[0] = {-corner[0][0], -corner[0][1]};
    starts.push_back(std::move(corner));

    for (std::size_t j = 0; j < n; ++j) {
        for (const bool along_x : {true, false}) {
            std::vector<Vec2> s(n, along_x ? e2 : e1);
            s[j] = along_x ? e1 : e2;
            starts.push_back(std::move(s));
        }
    }

    for (int k = 0; k < config.random_starts; ++k) {
        auto rng = derived_rng(config.seed, static_cast<std::uint64_t>(k));
        std::vector<Vec2> s(n);
        for (auto& d : s) d = unit_vector(draw_angle(rng));
        starts.push_back(std::move(s));
    }
    return starts;
}

/// Exhaustive search over `points` angles per party. Party 1 only scans
/// [0, pi): shifting it by pi negates E, so |E| there covers the full circle.
inline std::vector<Vec2> grid_argmax(const CorrelationTensor& tensor, int points) {
    const int n = tensor.n_parties();
    std::vector<double> cs(static_cast<std::size_t>(points));
    std::vector<double> sn(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        const double a = kTwoPi * k / points;
        cs[static_cast<std::size_t>(k)] = std::cos(a);
        sn[static_cast<std::size_t>(k)] = std::sin(a);
    }

    // levels[l] holds the tensor with parties 0..l-1 already contracted.
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(n) + 1);
    levels[0].assign(tensor.entries().begin(), tensor.entries().end());
    for (int l = 1; l <= n; ++l) levels[static_cast<std::size_t>(l)].resize(pow2(n - l));

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<int> best_idx(static_cast<std::size_t>(n), 0);
    double best = -1.0;
    bool best_negative = false;

    auto descend = [&](auto&& self, int level) -> void {
        const auto& src = levels[static_cast<std::size_t>(level)];
        auto& dst = levels[static_cast<std::size_t>(level) + 1];
        const int limit = (level == 0 && points % 2 == 0) ? points / 2 : points;
        for (int k = 0; k < limit; ++k) {
            const double c = cs[static_cast<std::size_t>(k)];
            const double s = sn[static_cast<std::size_t>(k)];
            for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = c * src[2 * m] + s * src[2 * m + 1];
            idx[static_cast<std::size_t>(level)] = k;
            if (level + 1 == n) {
                const double v = dst[0];
                if (std::abs(v) > best) {
                    best = std::abs(v);
                    best_negative = v < 0.0;
                    best_idx = idx;
                }
            } else {
                self(self, level + 1);
            }
        }
    };
    descend(descend, 0);

    std::vector<Vec2> dirs(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < dirs.size(); ++j) dirs[j] = {cs[static_cast<std::size_t>(best_idx[j])], sn[static_cast<std::size_t>(best_idx[j])]};
    if (best_negative) dirs[0] = {-dirs[0][0], -dirs[0][1]};
    return dirs;
}

}  // namespace detail

/// Maximum of E over all planar settings, i.e. of T . (d_1 x ... x d_N) over
/// unit 2-vectors d_j.
///
/// Runs an alternating ascent from every start in detail::tmax_starts and
/// keeps the best (ties go to the earlier start). For small N the best point
/// of an exhaustive angle grid is refined the same way and wins if higher.
/// Deterministic for a fixed config.
inline TMaxResult t_max(const CorrelationTensor& tensor, const TMaxConfig& config = {}) {
    TMaxResult result;
    detail::Ascent best;
    best.value = -std::numeric_limits<double>::infinity();

    for (auto& start : detail::tmax_starts(tensor, config)) {
        detail::Ascent run = detail::alternating_ascent(tensor, std::move(start), config);
        result.iterations += run.sweeps;
        ++result.starts_used;
        if (run.value > best.value) best = std::move(run);
    }

    if (config.grid_points > 0 && tensor.n_parties() <= config.grid_max_parties) {
        detail::Ascent refined =
            detail::alternating_ascent(tensor, detail::grid_argmax(tensor, config.grid_points), config);
        result.iterations += refined.sweeps;
        result.grid_checked = true;
        if (refined.value > best.value) best = std::move(refined);
    }

    result.value = best.value;
    result.maximizer = std::move(best.dirs);
    result.certified = best.converged;
    return result;
}

namespace detail {

/// Neumaier-compensated sum of x_k y_k.
inline double compensated_dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double term = x[k] * y[k];
        const double next = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
        sum = next;
    }
    return sum + carry;
}

}  // namespace detail

/// sum_i T_i^2 over the 2^N planar entries.
inline double sum_of_squares(const CorrelationTensor& tensor) {
    return detail::compensated_dot(tensor.entries(), tensor.entries());
}

/// Exact integral of E_a E_b over [0, 2pi]^N, using
/// int c^i c^k dalpha = pi delta_ik per party.
inline double analytic_inner_product(const CorrelationTensor& a, const CorrelationTensor& b) {
    if (a.n_parties() != b.n_parties()) throw ShapeError("tensors differ in party count");
    return std::pow(kPi, a.n_parties()) * detail::compensated_dot(a.entries(), b.entries());
}

}  // namespace rotinv
