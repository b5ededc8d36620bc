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

// Command-line front end: tensor export, T_max, criterion check, GHZ scans
// and bound verification.
//
// Exit codes: 0 success, 2 invalid arguments or input, 3 optimizer result not
// certified while --require-certified is set.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rotinv/io.hpp"
#include "rotinv/rotinv.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitUncertified = 3;

rotinv::CorrelationTensor read_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rotinv::FormatError("cannot open " + path);
    return rotinv::tensor_from_json(rotinv::Json::parse(in));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw rotinv::FormatError("cannot write " + out_path);
    out << text;
}

std::string dump(const rotinv::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotational-invariance constraint on local realistic models of N-qubit correlations"};
    app.require_subcommand(1);
    app.fallthrough();

    bool require_certified = false;
    app.add_flag("--require-certified", require_certified, "Exit with code 3 if T_max is not certified")
        ->configurable(false);

    std::uint64_t seed = 0;
    int starts = 64;
    int max_sweeps = 1000;
    auto add_optimizer_opts = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Master seed for the T_max multistart")->capture_default_str();
        cmd->add_option("--starts", starts, "Random starts for the T_max multistart")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--max-sweeps", max_sweeps, "Sweep cap per ascent")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    int ghz_n = 0;
    double visibility = 1.0;
    std::string out_path;
    auto* tensor_cmd = app.add_subcommand("tensor", "Write the planar correlation tensor of a noisy GHZ state");
    tensor_cmd->add_option("--ghz", ghz_n, "Number of parties")->required()->check(CLI::PositiveNumber);
    tensor_cmd->add_option("--visibility", visibility, "GHZ weight V in [0, 1]")->required();
    tensor_cmd->add_option("--out", out_path, "Output file (default stdout)");

    std::string in_path;
    auto* tmax_cmd = app.add_subcommand("tmax", "Maximal planar tensor component");
    tmax_cmd->add_option("--in", in_path, "Tensor JSON file")->required();
    add_optimizer_opts(tmax_cmd);

    auto* check_cmd = app.add_subcommand("check", "Evaluate (E,E) against 4^N T_max");
    check_cmd->add_option("--in", in_path, "Tensor JSON file")->required();
    add_optimizer_opts(check_cmd);

    double v_min = 0.0;
    double v_max = 1.0;
    int steps = 100;
    std::string format = "csv";
    int workers = 1;
    auto* scan_cmd = app.add_subcommand("scan", "Classify noisy GHZ states over a visibility grid");
    scan_cmd->add_option("--ghz", ghz_n, "Number of parties")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--v-min", v_min, "Lowest visibility")->required();
    scan_cmd->add_option("--v-max", v_max, "Highest visibility")->required();
    scan_cmd->add_option("--steps", steps, "Grid intervals (steps + 1 points)")->required();
    scan_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    scan_cmd->add_option("--out", out_path, "Output file (default stdout)");
    scan_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    add_optimizer_opts(scan_cmd);

    int trials = 0;
    bool include_optimal = false;
    auto* verify_cmd = app.add_subcommand("verify-bound", "Sample random local models against 4^N T_max");
    verify_cmd->add_option("--in", in_path, "Tensor JSON file")->required();
    verify_cmd->add_option("--trials", trials, "Number of random ensembles")->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Seed for sampling and T_max")->required();
    verify_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--include-optimal", include_optimal, "Also evaluate the saturating strategy");

    auto* thresholds_cmd = app.add_subcommand("thresholds", "Visibility thresholds of the noisy GHZ family");
    thresholds_cmd->add_option("--ghz", ghz_n, "Number of parties")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    rotinv::TMaxConfig tmax_config;
    tmax_config.seed = seed;
    tmax_config.random_starts = starts;
    tmax_config.max_sweeps = max_sweeps;

    bool certified = true;
    try {
        if (*tensor_cmd) {
            emit(dump(rotinv::tensor_to_json(rotinv::ghz_planar_tensor(ghz_n, visibility))), out_path);
        } else if (*tmax_cmd) {
            const auto result = rotinv::t_max(read_tensor(in_path), tmax_config);
            certified = result.certified;
            emit(dump(rotinv::to_json(result)), "");
        } else if (*check_cmd) {
            const auto report = rotinv::ri_criterion(read_tensor(in_path), tmax_config);
            certified = report.certified;
            emit(dump(rotinv::to_json(report)), "");
        } else if (*scan_cmd) {
            rotinv::ScanConfig config;
            config.tmax = tmax_config;
            config.workers = workers;
            const auto rows = rotinv::ghz_scan(ghz_n, v_min, v_max, steps, config);
            for (const auto& row : rows) certified = certified && row.report.certified;
            emit(format == "json" ? dump(rotinv::scan_to_json(rows)) : rotinv::scan_to_csv(rows), out_path);
        } else if (*verify_cmd) {
            rotinv::BoundCheckConfig config;
            config.tmax = tmax_config;
            config.include_optimal = include_optimal;
            config.workers = workers;
            const auto report = rotinv::verify_bound(read_tensor(in_path), trials, seed, config);
            certified = report.tmax_certified;
            emit(dump(rotinv::to_json(report)), "");
        } else if (*thresholds_cmd) {
            emit(dump(rotinv::to_json(rotinv::ghz_thresholds(ghz_n))), "");
        }
    } catch (const rotinv::Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (require_certified && !certified) {
        std::cerr << "error: T_max optimizer result is not certified\n";
        return kExitUncertified;
    }
    return 0;
}
