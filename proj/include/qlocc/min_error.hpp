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

#ifndef QLOCC_MIN_ERROR_HPP
#define QLOCC_MIN_ERROR_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlocc/perfect.hpp"
#include "qlocc/quantum.hpp"

namespace qlocc {

struct MinErrorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Holevo optimality residuals for a guessing POVM (one element per state).
struct Certificate {
    std::vector<double> min_eigs;         // min-eig(Herm(Lambda) - p_j rho_j)
    double hermiticity_gap = 0;           // ||Lambda - Lambda^dagger||_inf
    std::vector<double> complementarity;  // ||Pi_j (Lambda - p_j rho_j)||_inf

    double worst_min_eig() const;
    bool passes(double floor = 1e-7, double herm_tol = 1e-8) const;
};

struct OptimalSolution {
    Povm povm;  // elements[i] guesses state i; rest is the discard element I - Y_S
    double success = 0;
    Matrix lambda;
    Certificate certificate;
    bool certified = false;
    size_t restarts_used = 0;
    uint64_t seed = 0;
};

struct OptimizerOptions {
    size_t restarts = 32;
    uint64_t seed = 0x5EED;
    double improvement_tol = 1e-15;
    size_t max_sweeps = 2000;
};

struct DetectionDecomposition {
    std::vector<Matrix> subspace_projectors;
    std::vector<CVector> detection_states;  // pure ensembles only, phase-fixed
    Matrix span_projector;
    double max_invariant_residual = 0;
};

double success_probability(const Ensemble &e, const Povm &povm);
Matrix lambda_operator(const Ensemble &e, const Povm &povm);
Certificate holevo_certificate(const Ensemble &e, const Povm &povm);
/// Projector onto the support of sum_i rho_i.
Matrix span_projector(const Ensemble &e, double rank_tol = 1e-8);
/// Moves a discard element into outcome 0 so each element is a guess.
Povm merge_rest(const Povm &povm);

OptimalSolution helstrom_two_state(const Ensemble &e, const Tolerances &tol = {});
OptimalSolution optimal_povm(const Ensemble &e, const OptimizerOptions &opts = {}, const Tolerances &tol = {});
DetectionDecomposition detection_decomposition(const Ensemble &e, const OptimalSolution &sol,
                                               const Tolerances &tol = {});

struct LoccOptimality {
    bool locc_optimal = false;
    size_t product_count = 0;
    std::vector<double> concurrences;
    std::vector<CVector> detection_states;
    OptimalSolution solution;
};
/// Counts product detection states: n = 3 needs two, n = 4 needs all four.
LoccOptimality locc_optimality_test(const Ensemble &e, const OptimizerOptions &opts = {},
                                    const Tolerances &tol = {});

struct NwoeResult {
    bool triggers = false;
    CVector complement;
    double lambda_min = 0;
    std::array<double, 3> lhs{};  // p_i^2 lambda_min^2
    std::array<double, 3> rhs{};  // p_j^2 |<psi_i|psi_j>|^2 + p_k^2 |<psi_i|psi_k>|^2
    std::array<double, 3> margins{};
    std::array<double, 3> scaled_lhs{};  // lhs / p_i^2
    std::array<double, 3> scaled_rhs{};  // rhs / p_i^2
};
/// Sufficient condition for three product states to defeat optimal LOCC discrimination.
NwoeResult nwoe_product_criterion(const Ensemble &e, const Tolerances &tol = {});

struct PureVsRank2 {
    bool trivial = false;
    bool degenerate = false;
    bool sep_optimal = false;
    bool locc_optimal = false;
    double success = 0;  // Helstrom optimum
    CVector negative_state;
    Matrix positive_projector;
    std::optional<Ensemble> reduced_pair;
    std::optional<PerfectVerdict> verdict;
    bool rho_ppt = false;
    // Independent route: explicit separable measurement and PPT of projected elements.
    bool sep_cross = false;
    bool locc_cross = false;
    double sep_measurement_success = 0;
    bool cross_check_agrees = false;
};
PureVsRank2 pure_vs_rank2_case(const CVector &psi, const Matrix &rho, double p_psi, double p_rho,
                               const Tolerances &tol = {});

/// Product ensemble and product POVM; certificate recomputed on the product.
struct TensorSolution {
    Ensemble ensemble;
    OptimalSolution solution;
};
TensorSolution tensor_optimal(const std::vector<Ensemble> &factors, const std::vector<OptimalSolution> &solutions,
                              const Tolerances &tol = {});

struct SurveyTrial {
    bool certified = false;
    bool locc_optimal = false;
    size_t product_count = 0;
    double min_concurrence = 0;
    double success = 0;
};

struct SurveyResult {
    size_t trials = 0;
    size_t locc_optimal = 0;
    size_t uncertified = 0;
    double fraction_locc_optimal = 0;
    std::vector<size_t> histogram;  // min detection concurrence, 20 bins on [0, 1]
    size_t min_concurrence_above_1e4 = 0;
    std::vector<SurveyTrial> per_trial;
};
SurveyResult random_survey(size_t trials, uint64_t seed, std::optional<std::vector<double>> priors = std::nullopt,
                           const OptimizerOptions &opts = {}, const Tolerances &tol = {}, bool parallel = true);

}  // namespace qlocc

#endif
