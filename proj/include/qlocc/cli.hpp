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


#ifndef QLOCC_CLI_HPP
#define QLOCC_CLI_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qlocc/quantum.hpp"

namespace qlocc::cli {

/// Bad input: malformed file, schema violation, incompatible ensemble. Exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUncertified = 2;

inline constexpr double kNormalizationDrift = 1e-6;

struct LoadedEnsemble {
    Ensemble ensemble;
    std::string label;
    std::string sha256;  // of the raw file bytes
    std::vector<std::string> warnings;
};

/// Ensemble file schema (version 1):
///   {"version": 1, "party_dims": [2, 2], "label": "...", "priors": [p_0, ...],
///    "states": [{"label": "...", "ket": [[re, im], ...]} | {"density": [[[re, im], ...], ...]}, ...]}
/// Drift up to kNormalizationDrift in state norms, traces or the prior sum is corrected with a
/// warning; larger drift is rejected. Unknown fields are errors in strict mode, warnings otherwise.
LoadedEnsemble parse_ensemble_text(std::string_view text, bool strict, std::string_view source = "<input>");
LoadedEnsemble parse_ensemble(const std::string &path, bool strict);

std::string sha256_hex(std::string_view bytes);

struct Config {
    Tolerances tol;
    uint64_t seed = 7;
    size_t restarts = 32;
    uint64_t samples = 1000000;
    size_t trials = 1000;
    int copies = 2;
    bool strict = false;

    nlohmann::json to_json() const;
    std::string digest() const;
};

struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::array();
    nlohmann::json seeds = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> summary;  // human-readable lines
    bool uncertified = false;

    nlohmann::json to_json(const Config &cfg) const;
    int exit_code() const { return uncertified ? kExitUncertified : kExitOk; }
};

const std::vector<std::string> &commands();

/// Dispatches one command. Throws InputError for unknown commands, unreadable or invalid
/// inputs and ensembles the command cannot handle.
Report run(const std::string &command, const std::vector<std::string> &inputs, const Config &cfg);

/// Sorted keys, two-space indent, trailing newline.
std::string render_json(const nlohmann::json &j);
std::string render_summary(const Report &r);

}  // namespace qlocc::cli

#endif
