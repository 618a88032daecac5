// Copyright 2026 The qlocc Authors
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


#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qlocc/cli.hpp"

int main(int argc, char **argv) {
    using namespace qlocc::cli;
    CLI::App app{"qlocc: local versus global discrimination of two-qubit ensembles"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string json_path;
    app.add_option("--tol", cfg.tol.psd, "semidefinite, hermiticity and PPT tolerance")->capture_default_str();
    app.add_option("--product-tol", cfg.tol.product, "concurrence at or below which a state is a product")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    app.add_option("--restarts", cfg.restarts, "optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "Monte Carlo samples (0 disables)")->capture_default_str();
    app.add_option("--json", json_path, "write the JSON report to this path ('-' for stdout)");
    app.add_flag("--strict", cfg.strict, "reject unknown fields in ensemble files");

    std::vector<std::string> inputs;
    auto file_cmd = [&](const std::string &name, const std::string &desc) {
        auto *sub = app.add_subcommand(name, desc);
        sub->add_option("ensemble", inputs, "ensemble JSON file")->required()->expected(1);
        return sub;
    };
    file_cmd("classify-perfect", "perfect discrimination by LOCC and SEP for orthogonal states");
    file_cmd("min-error", "optimal minimum-error measurement with certificate");
    file_cmd("locc-optimal", "whether LOCC attains the minimum-error optimum");
    file_cmd("nwoe-scan", "product-state criterion against optimal LOCC discrimination");
    file_cmd("unambiguous", "optimal unambiguous discrimination and local feasibility");
    auto *trine = app.add_subcommand("trine", "N-copy trine: overlaps, lifting, PGM and elimination");
    trine->add_option("--copies", cfg.copies, "number of copies")->capture_default_str();
    app.add_subcommand("double-trine-report", "all figures of merit for the double trine");
    auto *survey = app.add_subcommand("survey", "random three-state ensembles against LOCC optimality");
    survey->add_option("--trials", cfg.trials, "number of ensembles")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }
    cfg.tol.separable = cfg.tol.psd;

    std::string command = app.get_subcommands().front()->get_name();
    try {
        Report r = run(command, inputs, cfg);
        std::string doc = render_json(r.to_json(cfg));
        if (json_path == "-") {
            std::cout << doc;
        } else {
            std::cout << render_summary(r);
            if (!json_path.empty()) {
                std::ofstream out(json_path, std::ios::binary);
                if (!out || !(out << doc)) {
                    std::cerr << "error: cannot write " << json_path << "\n";
                    return kExitInput;
                }
            }
        }
        return r.exit_code();
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
