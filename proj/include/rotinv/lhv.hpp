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

// Local realistic models as finite mixtures of deterministic strategies, and
// the bound (E_LR, E) <= 4^N T_max they all obey.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "rotinv/common.hpp"
#include "rotinv/correlation.hpp"
#include "rotinv/functional_space.hpp"
#include "rotinv/tensor_analysis.hpp"

namespace rotinv {

/// One value of the hidden variable: a fixed response function per party.
struct DeterministicStrategy {
    std::vector<ResponseFunction> responses;

    int n_parties() const { return static_cast<int>(responses.size()); }

    /// prod_j I_j(alpha_j).
    double operator()(std::span<const double> angles) const {
        if (angles.size() != responses.size()) throw ShapeError("angle count must equal the party count");
        double v = 1.0;
        for (std::size_t j = 0; j < responses.size(); ++j) v *= responses[j](angles[j]);
        return v;
    }
};

/// Hidden variable with finitely many values and explicit weights.
class LhvEnsemble {
  public:
    LhvEnsemble(std::vector<DeterministicStrategy> strategies, std::vector<double> weights)
        : strategies_(std::move(strategies)), weights_(std::move(weights)) {
        if (strategies_.empty()) throw ShapeError("an ensemble needs at least one strategy");
        if (strategies_.size() != weights_.size()) throw ShapeError("one weight per strategy is required");
        double total = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0)) throw DomainError("ensemble weights must be nonnegative");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) throw DomainError("ensemble weights must sum to 1");
        const int n = strategies_.front().n_parties();
        for (const auto& s : strategies_) {
            if (s.n_parties() != n) throw ShapeError("strategies differ in party count");
        }
    }

    std::span<const DeterministicStrategy> strategies() const { return strategies_; }
    std::span<const double> weights() const { return weights_; }
    int n_parties() const { return strategies_.front().n_parties(); }

  private:
    std::vector<DeterministicStrategy> strategies_;
    std::vector<double> weights_;
};

/// (E_LR, E) for one deterministic strategy: the integral factorizes into
/// sum_i T_i prod_j f_j^{i_j} with f_j = (a_j, b_j), the cos/sin components
/// of party j's response.
inline double lr_inner_product(const DeterministicStrategy& strategy, const CorrelationTensor& tensor) {
    if (strategy.n_parties() != tensor.n_parties()) throw ShapeError("strategy and tensor differ in party count");
    std::vector<Vec2> coeffs;
    coeffs.reserve(strategy.responses.size());
    for (const auto& r : strategy.responses) coeffs.push_back(project(r).coefficients());
    return contract(tensor, coeffs);
}

inline double ensemble_inner_product(const LhvEnsemble& ensemble, const CorrelationTensor& tensor) {
    if (ensemble.n_parties() != tensor.n_parties()) throw ShapeError("ensemble and tensor differ in party count");
    double acc = 0.0;
    for (std::size_t k = 0; k < ensemble.strategies().size(); ++k)
        acc += ensemble.weights()[k] * lr_inner_product(ensemble.strategies()[k], tensor);
    return acc;
}

struct OptimalStrategy {
    DeterministicStrategy strategy;
    double value = 0.0;
    TMaxResult tmax;
};

/// Party j answers sgn(cos(alpha - psi_j)) with d_j = (cos psi_j, sin psi_j).
inline DeterministicStrategy saturating_strategy(std::span<const Vec2> directions) {
    DeterministicStrategy s;
    for (const Vec2& d : directions) s.responses.push_back(saturating_response(std::atan2(d[1], d[0])));
    return s;
}

/// Aligns every party's response with the T_max maximizer; the resulting
/// value is 4^N T_max, so the bound is attained.
inline OptimalStrategy optimal_strategy(const CorrelationTensor& tensor, const TMaxConfig& config = {}) {
    OptimalStrategy out;
    out.tmax = t_max(tensor, config);
    out.strategy = saturating_strategy(out.tmax.maximizer);
    out.value = lr_inner_product(out.strategy, tensor);
    return out;
}

/// Reproducible samplers used by verify_bound and the property tests.
///
/// A response has 0, 2, 4, 6 or 8 breakpoints (uniform), positions uniform
/// on [0, 2pi) and a uniform leading sign. An ensemble has 1 to 4 strategies
/// with Dirichlet(1) weights.
namespace sampling {

inline ResponseFunction random_response(std::mt19937_64& rng) {
    const int count = 2 * static_cast<int>(rng() % 5);
    std::vector<double> brk;
    while (static_cast<int>(brk.size()) < count) {
        const double b = detail::draw_angle(rng);
        if (std::find(brk.begin(), brk.end(), b) == brk.end()) brk.push_back(b);
    }
    std::sort(brk.begin(), brk.end());
    const int lead = (rng() & 1U) ? 1 : -1;
    return ResponseFunction(std::move(brk), lead);
}

inline DeterministicStrategy random_strategy(int n_parties, std::mt19937_64& rng) {
    DeterministicStrategy s;
    for (int j = 0; j < n_parties; ++j) s.responses.push_back(random_response(rng));
    return s;
}

inline LhvEnsemble random_ensemble(int n_parties, std::mt19937_64& rng) {
    const int size = 1 + static_cast<int>(rng() % 4);
    std::vector<DeterministicStrategy> strategies;
    std::vector<double> weights;
    double total = 0.0;
    for (int k = 0; k < size; ++k) {
        strategies.push_back(random_strategy(n_parties, rng));
        // Exponential draws normalized to a uniform point on the simplex.
        const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        weights.push_back(-std::log(u));
        total += weights.back();
    }
    for (double& w : weights) w /= total;
    return LhvEnsemble(std::move(strategies), std::move(weights));
}

}  // namespace sampling

struct BoundCheckConfig {
    TMaxConfig tmax;
    /// Also evaluate optimal_strategy as one extra trial.
    bool include_optimal = false;
    /// Worker threads; the report does not depend on this.
    int workers = 1;
    double slack = 1e-8;
};

struct BoundReport {
    int n_parties = 0;
    int trials = 0;
    double max_found = 0.0;
    double bound = 0.0;
    /// max_found / bound, or 0 when the bound is 0.
    double ratio = 0.0;
    int violations = 0;
    bool tmax_certified = false;
};

/// Samples `trial_count` random ensembles (trial k seeded from (seed, k))
/// and checks each against 4^N T_max + slack.
inline BoundReport verify_bound(const CorrelationTensor& tensor, int trial_count, std::uint64_t seed,
                                const BoundCheckConfig& config = {}) {
    if (trial_count < 1) throw DomainError("trial count must be at least 1");
    const int n = tensor.n_parties();
    BoundReport report;
    report.n_parties = n;
    report.trials = trial_count;

    const TMaxResult tm = t_max(tensor, config.tmax);
    report.tmax_certified = tm.certified;
    report.bound = std::pow(4.0, n) * tm.value;
    const double limit = report.bound + config.slack;

    const int workers = std::clamp(config.workers, 1, trial_count);
    std::vector<double> worker_max(static_cast<std::size_t>(workers), -std::numeric_limits<double>::infinity());
    std::vector<int> worker_violations(static_cast<std::size_t>(workers), 0);
    auto run = [&](int w) {
        for (int k = w; k < trial_count; k += workers) {
            auto rng = detail::derived_rng(seed, static_cast<std::uint64_t>(k));
            const double v = ensemble_inner_product(sampling::random_ensemble(n, rng), tensor);
            worker_max[static_cast<std::size_t>(w)] = std::max(worker_max[static_cast<std::size_t>(w)], v);
            if (v > limit) ++worker_violations[static_cast<std::size_t>(w)];
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    report.max_found = *std::max_element(worker_max.begin(), worker_max.end());
    for (int v : worker_violations) report.violations += v;

    if (config.include_optimal) {
        const double v = lr_inner_product(saturating_strategy(tm.maximizer), tensor);
        report.max_found = std::max(report.max_found, v);
        if (v > limit) ++report.violations;
        ++report.trials;
    }

    report.ratio = report.bound > 0.0 ? report.max_found / report.bound : 0.0;
    return report;
}

/// Sufficient condition sum T^2 <= 1 for an explicit local realistic model
/// of the 2^N two-setting correlation values. A relative slack of 1e-12
/// keeps the boundary point itself on the model side.
inline bool two_setting_model_exists(const CorrelationTensor& tensor) {
    return sum_of_squares(tensor) <= 1.0 + 1e-12;
}

}  // namespace rotinv
