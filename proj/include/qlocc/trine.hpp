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


#ifndef QLOCC_TRINE_HPP
#define QLOCC_TRINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlocc/kernels.hpp"
#include "qlocc/quantum.hpp"

namespace qlocc {

struct TrineError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxTrineCopies = 12;

/// psi_i = (U^i|0>)^(x)N with the global phase of U chosen so (U^(x)N)^3 = I.
struct TrineFamily {
    int copies = 0;
    Matrix u;
    std::vector<CVector> states;
    double cube_residual = 0;   // ||(U^(x)N)^3 - I||, from U^3 = c I
    double shift_residual = 0;  // max_i ||U^(x)N psi_i - psi_{i+1}||
};

struct LiftedTrine {
    double alpha = 0;
    std::vector<CVector> states;  // sqrt(1-a) (trine in the 0/1 plane) + sqrt(a)|2>
};

struct IsoMap {
    double kappa = 0;
    double alpha = 0;
    CVector z;                   // (3 kappa)^(-1/2) sum_i psi_i
    std::vector<CVector> omegas;  // planar parts
    double gram_residual = 0;     // max |<psi_i|psi_j> - <L_i|L_j>|
};

TrineFamily trine_family(int copies, bool parallel = true);
/// Closed forms, valid for any N >= 1.
double trine_kappa(int copies);
double trine_overlap(int copies);
LiftedTrine lifted_trine(double alpha);
std::pair<IsoMap, LiftedTrine> lift_iso(int copies);

/// Square-root measurement p_i r^(-1/2) rho_i r^(-1/2) on the support of r, plus the complement.
Povm pgm(const Ensemble &e, double cutoff = 1e-10);
/// F_i = sqrt(2/3) omega_i + sqrt(1/3) z, phase-fixed so <F_i|psi_i> > 0.
std::vector<CVector> pgm_states(int copies);
double pgm_success_closed_form(int copies);
double pgm_success(int copies);

/// Concurrence of z after projecting all but the first two parties onto <0|.
double axis_residue_concurrence(int copies);

struct EliminationResult {
    int copies = 0;
    bool sampled = false;
    double inconclusive = 0;
    double conclusive = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    double standard_error = 0;
    double reported_elsewhere = 0;  // (1/3)^N, annotated against the Born-rule value
};

/// Per-party table (2/3)|<sbar_i|s_j>|^2 with sbar_i = U^i|1>.
kernels::OutcomeTable elimination_table();
EliminationResult elimination_exact(int copies);
EliminationResult elimination_monte_carlo(int copies, uint64_t samples, uint64_t seed, bool parallel = true);
/// Sums over all 3^N outcome strings; N <= 12.
double elimination_enumerated(int copies);
std::string elimination_annotation(int copies);

}  // namespace qlocc

#endif
