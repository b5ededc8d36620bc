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

#include "rotinv/criterion.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace rotinv;

TEST(RiCriterion, paradox_point_n4) {
    const auto r = ri_criterion(ghz_planar_tensor(4, 0.34));
    EXPECT_NEAR(r.lhs, std::pow(kPi, 4) * 8.0 * 0.1156, 1e-9);
    EXPECT_NEAR(r.lhs, 90.0839, 1e-4);
    EXPECT_NEAR(r.rhs, 87.04, 1e-9);
    EXPECT_TRUE(r.violated);
    EXPECT_TRUE(r.two_setting_model);
    EXPECT_NEAR(r.sum_sq, 0.9248, 1e-12);
    EXPECT_NEAR(r.margin, r.lhs - r.rhs, 1e-12);
    EXPECT_EQ(classify(r), Region::paradox);
}

TEST(RiCriterion, local_point_n4) {
    const auto r = ri_criterion(ghz_planar_tensor(4, 0.30));
    EXPECT_FALSE(r.violated);
    EXPECT_NEAR(r.lhs, 70.1345, 1e-4);
    EXPECT_NEAR(r.rhs, 76.8, 1e-9);
    EXPECT_EQ(classify(r), Region::local);
}

TEST(RiCriterion, zero_tensor) {
    const auto r = ri_criterion(CorrelationTensor::zero(4));
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
    EXPECT_FALSE(r.violated);
    EXPECT_TRUE(r.two_setting_model);
}

TEST(RiCriterion, violation_iff_above_closed_form_threshold) {
    for (int n = 1; n <= 8; ++n) {
        const double v_ri = ghz_thresholds(n).v_ri;
        for (double v = 0.0; v <= 1.0; v += 0.01) {
            // Skip the optimizer-tolerance band around the threshold.
            if (std::abs(v - v_ri) < 1e-8) continue;
            EXPECT_EQ(ri_criterion(ghz_planar_tensor(n, v)).violated, v > v_ri) << "N=" << n << " V=" << v;
        }
    }
}

TEST(RiCriterion, exact_threshold_is_local) {
    for (int n = 3; n <= 8; ++n) {
        const auto t = ghz_thresholds(n);
        EXPECT_FALSE(ri_criterion(ghz_planar_tensor(n, t.v_ri)).violated) << n;
        if (t.v_two_setting <= 1.0) {
            EXPECT_TRUE(ri_criterion(ghz_planar_tensor(n, t.v_two_setting)).two_setting_model) << n;
        }
    }
}

TEST(GhzThresholds, reference_values) {
    const auto t3 = ghz_thresholds(3);
    EXPECT_NEAR(t3.v_ri, 0.516025, 1e-6);
    EXPECT_NEAR(t3.v_two_setting, 0.5, 1e-12);
    EXPECT_FALSE(t3.gap_nonempty);
    const auto t4 = ghz_thresholds(4);
    EXPECT_NEAR(t4.v_ri, 0.328511, 1e-6);
    EXPECT_NEAR(t4.v_two_setting, 0.353553, 1e-6);
    EXPECT_TRUE(t4.gap_nonempty);
    const auto t5 = ghz_thresholds(5);
    EXPECT_NEAR(t5.v_ri, 0.209137, 1e-6);
    EXPECT_NEAR(t5.v_two_setting, 0.25, 1e-12);
    EXPECT_TRUE(t5.gap_nonempty);
    EXPECT_THROW(ghz_thresholds(0), DomainError);
}

TEST(GhzThresholds, gap_opens_at_four_parties) {
    for (int n = 1; n <= 10; ++n) {
        const auto t = ghz_thresholds(n);
        EXPECT_EQ(t.gap_nonempty, n >= 4) << n;
        EXPECT_GT(t.v_ri, 0.0);
        EXPECT_LE(t.v_ri, 2.0);
        EXPECT_GT(t.v_two_setting, 0.0);
        EXPECT_LE(t.v_two_setting, 2.0);
    }
}

TEST(GhzScan, labels_and_grid) {
    const auto rows = ghz_scan(4, 0.30, 0.40, 10);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_DOUBLE_EQ(rows.front().visibility, 0.30);
    EXPECT_DOUBLE_EQ(rows.back().visibility, 0.40);
    const auto at_034 = std::find_if(rows.begin(), rows.end(), [](const ScanRow& r) { return std::abs(r.visibility - 0.34) < 1e-12; });
    ASSERT_NE(at_034, rows.end());
    EXPECT_EQ(at_034->region, Region::paradox);
    EXPECT_EQ(rows.front().region, Region::local);
    EXPECT_EQ(rows.back().region, Region::nonlocal);
}

TEST(GhzScan, no_paradox_for_two_parties) {
    for (const auto& row : ghz_scan(2, 0.0, 1.0, 200)) EXPECT_NE(row.region, Region::paradox) << row.visibility;
}

TEST(GhzScan, zero_visibility_is_local) {
    const auto rows = ghz_scan(5, 0.0, 0.0, 1);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& row : rows) EXPECT_EQ(row.region, Region::local);
}

TEST(GhzScan, rejects_bad_ranges) {
    EXPECT_THROW(ghz_scan(4, 0.5, 0.4, 10), DomainError);
    EXPECT_THROW(ghz_scan(4, -0.1, 0.4, 10), DomainError);
    EXPECT_THROW(ghz_scan(4, 0.1, 1.4, 10), DomainError);
    EXPECT_THROW(ghz_scan(4, 0.1, 0.4, 0), DomainError);
    EXPECT_THROW(ghz_scan(0, 0.1, 0.4, 3), InvalidSizeError);
}

TEST(GhzScan, onset_brackets_threshold) {
    for (int n = 3; n <= 8; ++n) {
        const double v_ri = ghz_thresholds(n).v_ri;
        const double lo = v_ri - 0.005;
        const double hi = v_ri + 0.005;
        const int steps = 100;  // step 1e-4
        const auto rows = ghz_scan(n, lo, hi, steps);
        const auto first = std::find_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.report.violated; });
        ASSERT_NE(first, rows.end());
        ASSERT_NE(first, rows.begin());
        EXPECT_LE(std::prev(first)->visibility, v_ri);
        EXPECT_GT(first->visibility, v_ri);
        EXPECT_LE(first->visibility - v_ri, (hi - lo) / steps + 1e-15);
    }
}

TEST(GhzScan, paradox_exists_iff_gap_nonempty) {
    for (int n = 1; n <= 10; ++n) {
        const auto t = ghz_thresholds(n);
        ScanConfig cfg;
        cfg.tmax.random_starts = 8;
        cfg.workers = 4;
        const auto rows = ghz_scan(n, 0.0, 1.0, 400, cfg);
        const bool paradox = std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.region == Region::paradox; });
        EXPECT_EQ(paradox, t.gap_nonempty) << n;
    }
}

TEST(GhzScan, worker_count_does_not_change_rows) {
    ScanConfig one;
    ScanConfig many;
    many.workers = 3;
    const auto a = ghz_scan(5, 0.1, 0.5, 40, one);
    const auto b = ghz_scan(5, 0.1, 0.5, 40, many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].visibility, b[i].visibility);
        EXPECT_EQ(a[i].report.rhs, b[i].report.rhs);
        EXPECT_EQ(a[i].region, b[i].region);
    }
}
