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

// The rotational-invariance criterion (E, E) > 4^N T_max and the noisy-GHZ
// visibility scan built on it.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rotinv/common.hpp"
#include "rotinv/correlation.hpp"
#include "rotinv/lhv.hpp"
#include "rotinv/tensor_analysis.hpp"

namespace rotinv {

struct CriterionReport {
    int n_parties = 0;
    /// (E, E) = pi^N sum T^2.
    double lhs = 0.0;
    /// 4^N T_max: the largest (E_LR, E) any local realistic model reaches.
    double rhs = 0.0;
    bool violated = false;
    bool two_setting_model = false;
    double margin = 0.0;
    double sum_sq = 0.0;
    double t_max = 0.0;
    bool certified = false;
};

/// lhs and rhs closer than this (relative to max(1, rhs)) count as equal,
/// so a point exactly on the threshold is not reported as violating.
inline constexpr double kCriterionTieTolerance = 1e-12;

/// violated = true means no local realistic model can reproduce E: the best
/// achievable (E_LR, E) falls short of (E, E).
inline CriterionReport ri_criterion(const CorrelationTensor& tensor, const TMaxConfig& config = {}) {
    CriterionReport r;
    r.n_parties = tensor.n_parties();
    r.sum_sq = sum_of_squares(tensor);
    r.lhs = analytic_inner_product(tensor, tensor);
    const TMaxResult tm = t_max(tensor, config);
    r.t_max = tm.value;
    r.certified = tm.certified;
    r.rhs = std::pow(4.0, r.n_parties) * tm.value;
    r.margin = r.lhs - r.rhs;
    r.violated = r.margin > kCriterionTieTolerance * std::max(1.0, std::abs(r.rhs));
    r.two_setting_model = two_setting_model_exists(tensor);
    return r;
}

struct GhzThresholds {
    int n_parties = 0;
    /// Above 2 (2/pi)^N rotational invariance rules out local realism.
    double v_ri = 0.0;
    /// At or below 2^{-(N-1)/2} the two-setting data admit a local model.
    double v_two_setting = 0.0;
    bool gap_nonempty = false;
};

inline GhzThresholds ghz_thresholds(int n_parties) {
    if (n_parties < 1) throw DomainError("party count must be at least 1");
    GhzThresholds t;
    t.n_parties = n_parties;
    t.v_ri = 2.0 * std::pow(2.0 / kPi, n_parties);
    t.v_two_setting = std::pow(2.0, -0.5 * (n_parties - 1));
    t.gap_nonempty = t.v_ri < t.v_two_setting;
    return t;
}

enum class Region { local, paradox, nonlocal };

inline std::string_view region_name(Region r) {
    switch (r) {
        case Region::local: return "LOCAL";
        case Region::paradox: return "PARADOX";
        case Region::nonlocal: return "NONLOCAL";
    }
    return "?";
}

/// LOCAL: no violation. PARADOX: violated although the two-setting data
/// admit a local model. NONLOCAL: violated and sum T^2 > 1.
inline Region classify(const CriterionReport& r) {
    if (!r.violated) return Region::local;
    return r.two_setting_model ? Region::paradox : Region::nonlocal;
}

struct ScanRow {
    double visibility = 0.0;
    CriterionReport report;
    Region region = Region::local;
};

struct ScanConfig {
    TMaxConfig tmax;
    /// Worker threads; rows always come back in grid order.
    int workers = 1;
};

/// Evaluates the criterion on the noisy GHZ family at steps + 1 equally
/// spaced visibilities from v_min to v_max inclusive.
inline std::vector<ScanRow> ghz_scan(int n_parties, double v_min, double v_max, int steps,
                                     const ScanConfig& config = {}) {
    detail::check_party_count(n_parties, kMaxTensorParties);
    if (!(v_min >= 0.0 && v_min <= v_max && v_max <= 1.0)) throw DomainError("need 0 <= v_min <= v_max <= 1");
    if (steps < 1) throw DomainError("steps must be at least 1");

    std::vector<ScanRow> rows(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        rows[static_cast<std::size_t>(i)].visibility =
            (i == steps) ? v_max : v_min + (v_max - v_min) * (static_cast<double>(i) / steps);
    }
    auto evaluate = [&](std::size_t i) {
        ScanRow& row = rows[i];
        row.report = ri_criterion(ghz_planar_tensor(n_parties, row.visibility), config.tmax);
        row.region = classify(row.report);
    };

    const int workers = std::clamp(config.workers, 1, steps + 1);
    if (workers == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) evaluate(i);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < rows.size(); i += static_cast<std::size_t>(workers))
                    evaluate(i);
            });
        }
    }
    return rows;
}

}  // namespace rotinv
