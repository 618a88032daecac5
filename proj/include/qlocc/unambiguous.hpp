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


#ifndef QLOCC_UNAMBIGUOUS_HPP
#define QLOCC_UNAMBIGUOUS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlocc/quantum.hpp"

namespace qlocc {

struct UnambiguousError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Normalized rows of R^-1: <dual_i|psi_j> = 0 for i != j, phases fixed so <dual_i|psi_i> > 0.
struct DualBasis {
    std::vector<CVector> duals;
    std::vector<cplx> overlaps;
    double biorthogonality_residual = 0;
};
DualBasis dual_states(const Ensemble &e, const Tolerances &tol = {});

struct LoccFeasibility {
    bool feasible = false;
    /// Product state orthogonal to every other state and not to state i.
    std::vector<std::optional<CVector>> witnesses;
    /// Four states: concurrence of the one-dimensional complement of the others.
    std::vector<double> complement_concurrence;
};
LoccFeasibility locc_unambiguous_feasible(const Ensemble &e, const Tolerances &tol = {});

struct UnambiguousSolution {
    double conclusive = 0;
    double inconclusive = 0;
    std::vector<double> coefficients;  // Pi_i = c_i |dual_i><dual_i|
    std::vector<double> weights;       // per-state conclusive rate c_i |o_i|^2
    Povm povm;                         // rest is the inconclusive element
    double rest_min_eig = 0;
    double zero_error_residual = 0;    // max_{i != j} <psi_i|Pi_j|psi_i>
    double dual_bound = 0;             // tightest tr Z over the barrier path
    double gap = 0;
    bool certified = false;
};
struct BarrierOptions {
    double t_start = 1;
    double t_factor = 8;
    double t_final = 1e12;
    double gap_tol = 1e-6;
};
UnambiguousSolution global_unambiguous_opt(const Ensemble &e, const BarrierOptions &opts = {},
                                           const Tolerances &tol = {});

/// Brute force over (c_1, ..., c_{n-1}) on a grid with the last coefficient maximized exactly.
struct UnambiguousGridResult {
    double best = 0;
    std::vector<double> coefficients;
    size_t points = 0;
};
UnambiguousGridResult unambiguous_grid_oracle(const Ensemble &e, double step = 1e-3, bool parallel = true);

/// hat Pi_i = (1/order) sum_k V^k Pi_{i-k} V^-k; rest twirled the same way.
Povm twirl_symmetrize(const Povm &povm, const Matrix &v, int order = 3);

struct SymmetricSepBound {
    bool applicable = false;
    std::optional<double> bound;
    std::vector<double> dual_concurrence;
    std::vector<double> overlap_sq;
};
SymmetricSepBound symmetric_sep_bound(const Ensemble &e, const Tolerances &tol = {});

/// The two product states in span{dual, Psi-}.
std::array<CVector, 2> sep_product_rays(const CVector &dual);

// ---- Double trine -----------------------------------------------------------

/// Pi = a|d><d| + b(|d><m| + |m><d|) + c|m><m| with d = |00> - |11>/3, m = |01> - |10>.
Matrix double_trine_element(double a, double b, double c);
/// sum_k V^k Pi V^-k, V = U (x) U.
Matrix double_trine_orbit_sum(const Matrix &pi);
std::array<double, 2> double_trine_pi_eigs(double a, double b, double c);
std::array<double, 4> double_trine_sum_eigs(double a, double b, double c);
/// Eigenvalues of Omega Y Omega Y, Omega = I - orbit sum, Y = sy (x) sy.
std::array<double, 4> double_trine_omega_t(double a, double b, double c);
/// Zero iff Pi is separable.
double double_trine_sep_constraint(double a, double b, double c);

struct BranchOptimum {
    std::string name;
    double a = 0, b = 0, c = 0;
    double pi_concurrence = 0;
    double omega_concurrence = 0;
    bool omega_separable = false;
};

struct SymmetricSepSolution {
    double a = 0, b = 0, c = 0;
    double conclusive = 0;
    std::string branch;
    std::array<double, 2> pi_eigs{};
    std::array<double, 4> sum_eigs{};
    std::array<double, 4> omega_t{};
    double pi_concurrence = 0;
    double omega_concurrence = 0;
    std::vector<BranchOptimum> branches;
};
SymmetricSepSolution double_trine_sep_opt(const Tolerances &tol = {});

struct DoubleTrineGrid {
    double a = 0, b = 0, c = 0;
    bool found = false;
    size_t points = 0;
};
/// resolution^3 grid over [0,1]^3 using the closed-form constraints.
DoubleTrineGrid double_trine_grid_oracle(size_t resolution = 200, bool parallel = true);

}  // namespace qlocc

#endif
