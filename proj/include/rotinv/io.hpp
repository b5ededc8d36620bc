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

// JSON and CSV forms of tensors and reports.
//
// Tensor JSON: {"n": N, "entries": {"1122": -0.8, ...}}. Keys are the
// multi-index with party 1 first; omitted keys are 0.

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotinv/correlation.hpp"
#include "rotinv/criterion.hpp"
#include "rotinv/lhv.hpp"
#include "rotinv/tensor_analysis.hpp"

namespace rotinv {

using Json = nlohmann::ordered_json;

/// Raised for structurally invalid input documents.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline Json tensor_to_json(const CorrelationTensor& tensor) {
    Json entries = Json::object();
    for (std::size_t key = 0; key < tensor.size(); ++key) {
        if (tensor[key] != 0.0) entries[CorrelationTensor::label_from_key(key, tensor.n_parties())] = tensor[key];
    }
    return Json{{"n", tensor.n_parties()}, {"entries", std::move(entries)}};
}

inline CorrelationTensor tensor_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.at("n").is_number_integer())
        throw FormatError("tensor JSON needs an integer field \"n\"");
    const int n = doc.at("n").get<int>();
    detail::check_party_count(n, kMaxTensorParties);
    std::vector<double> entries(pow2(n), 0.0);
    if (doc.contains("entries")) {
        const Json& e = doc.at("entries");
        if (!e.is_object()) throw FormatError("\"entries\" must be an object");
        for (const auto& [label, value] : e.items()) {
            if (!value.is_number()) throw FormatError("entry '" + label + "' is not a number");
            entries[CorrelationTensor::key_from_label(label, n)] = value.get<double>();
        }
    }
    return CorrelationTensor(n, std::move(entries));
}

inline Json to_json(const TMaxResult& r) {
    Json dirs = Json::array();
    for (const Vec2& d : r.maximizer) dirs.push_back({d[0], d[1]});
    return Json{{"value", r.value},
                {"maximizer", std::move(dirs)},
                {"certified", r.certified},
                {"grid_checked", r.grid_checked},
                {"iterations", r.iterations},
                {"starts_used", r.starts_used}};
}

inline Json to_json(const CriterionReport& r) {
    return Json{{"n_parties", r.n_parties},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"violated", r.violated},
                {"two_setting_model", r.two_setting_model},
                {"margin", r.margin},
                {"sum_sq", r.sum_sq},
                {"t_max", r.t_max},
                {"certified", r.certified},
                {"region", region_name(classify(r))}};
}

inline Json to_json(const BoundReport& r) {
    return Json{{"n_parties", r.n_parties},  {"trials", r.trials},         {"max_found", r.max_found},
                {"bound", r.bound},          {"ratio", r.ratio},           {"violations", r.violations},
                {"tmax_certified", r.tmax_certified}};
}

inline Json to_json(const GhzThresholds& t) {
    return Json{{"n_parties", t.n_parties},
                {"v_ri", t.v_ri},
                {"v_two_setting", t.v_two_setting},
                {"gap_nonempty", t.gap_nonempty}};
}

inline Json scan_to_json(const std::vector<ScanRow>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json j = to_json(row.report);
        j["V"] = row.visibility;
        out.push_back(std::move(j));
    }
    return out;
}

inline std::string format_g12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline constexpr const char* kScanCsvHeader = "N,V,lhs,rhs,violated,sum_sq,two_setting_model,region";

inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << kScanCsvHeader << '\n';
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << r.n_parties << ',' << format_g12(row.visibility) << ',' << format_g12(r.lhs) << ','
            << format_g12(r.rhs) << ',' << (r.violated ? "true" : "false") << ',' << format_g12(r.sum_sq) << ','
            << (r.two_setting_model ? "true" : "false") << ',' << region_name(row.region) << '\n';
    }
    return out.str();
}

}  // namespace rotinv
