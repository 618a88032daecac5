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

#ifndef QLOCC_PERFECT_HPP
#define QLOCC_PERFECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qlocc/quantum.hpp"

namespace qlocc {

// Perfect (zero-error, always conclusive) discrimination of orthogonal
// two-qubit ensembles by LOCC and by separable measurements.

struct PerfectError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StateWitness {
    size_t rank = 0;
    size_t sch_perp = 0;
    std::optional<double> concurrence;             // rank-1 states
    std::optional<double> support_pt_min;          // rank-2 states: min eig of the support projector's PT
    std::optional<double> complement_concurrence;  // rank-3 states: C of the null vector
    std::optional<AntiparallelTest> antiparallel;  // entangled pure state against the complement
};

struct PerfectVerdict {
    std::vector<size_t> profile;  // sorted ranks
    bool sep = false;
    bool locc = false;
    std::vector<StateWitness> states;  // input order
    size_t sch_perp_sum = 0;
    double max_overlap = 0;
    std::optional<CVector> complement;  // |Phi> for {1,1,1} and {1,2}
    std::optional<double> complement_concurrence;
    std::optional<double> concurrence_sum;  // {1,1,1}: sum of C(psi_i)
    std::vector<std::string> notes;
};

size_t schmidt_rank_perp(const DensityMatrix &rho, const Tolerances &tol = {});
/// Largest tr[rho_i rho_j] over i != j.
double max_pairwise_overlap(const Ensemble &e);
std::vector<size_t> rank_profile(const Ensemble &e, const Tolerances &tol = {});

bool locc_perfect(const Ensemble &e, const Tolerances &tol = {});
bool sep_perfect(const Ensemble &e, const Tolerances &tol = {});
PerfectVerdict classify(const Ensemble &e, const Tolerances &tol = {});

/// Two-outcome separable measurement {E, I - E} for an entangled |psi> against
/// a rank-2 state with complement |Phi>: E = |psi><psi| + (C(psi)/C(Phi)) |Phi><Phi|.
struct PairSepMeasurement {
    Povm povm;
    double lambda = 0;
    double pt_min_first = 0;   // min eig of E^Gamma
    double pt_min_second = 0;  // min eig of (I - E)^Gamma
    double psd_min_second = 0;
};
PairSepMeasurement pair_sep_measurement(const CVector &psi, const CVector &phi);

}  // namespace qlocc

#endif
