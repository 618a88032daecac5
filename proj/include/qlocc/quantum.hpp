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

#ifndef QLOCC_QUANTUM_HPP
#define QLOCC_QUANTUM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlocc/numerics.hpp"

namespace qlocc {

/// Numeric thresholds shared by every decision procedure. All are reported.
struct Tolerances {
    double psd = 1e-9;            // semidefinite / hermiticity checks
    double product = 1e-7;        // concurrence at or below => product state
    double separable = 1e-9;      // min eig of partial transpose >= -separable => PPT
    double orthogonality = 1e-9;  // tr[rho_i rho_j] for "orthogonal"
    double rank = 1e-8;           // singular-value threshold for ranks
    double independence = 1e-8;  // smallest singular value for linear independence
    double certificate = 1e-7;    // Holevo residual floor for "certified"
};

using PartyDims = std::vector<size_t>;

struct QuantumError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class PureState {
   public:
    PureState(CVector amplitudes, PartyDims dims = {2, 2});
    /// Normalizes first; rejects the zero vector.
    static PureState normalize(CVector amplitudes, PartyDims dims = {2, 2});

    const CVector &amplitudes() const { return amp_; }
    const PartyDims &dims() const { return dims_; }
    size_t dim() const { return amp_.size(); }

   private:
    CVector amp_;
    PartyDims dims_;
};

class DensityMatrix {
   public:
    DensityMatrix(Matrix m, PartyDims dims = {2, 2}, double tol = 1e-9);
    static DensityMatrix from_pure(const CVector &v, PartyDims dims = {2, 2});

    const Matrix &matrix() const { return m_; }
    const PartyDims &dims() const { return dims_; }
    size_t dim() const { return m_.rows(); }

   private:
    Matrix m_;
    PartyDims dims_;
};

struct Ensemble {
    std::vector<DensityMatrix> states;
    std::vector<double> priors;
    /// Populated when every state was given as a ket.
    std::vector<CVector> kets;
    std::vector<std::string> labels;

    static Ensemble from_kets(const std::vector<CVector> &kets, std::vector<double> priors,
                              PartyDims dims = {2, 2});
    static Ensemble from_states(std::vector<DensityMatrix> states, std::vector<double> priors);
    /// Equal priors.
    static Ensemble uniform(const std::vector<CVector> &kets, PartyDims dims = {2, 2});

    size_t size() const { return states.size(); }
    size_t dim() const { return states.front().dim(); }
    const PartyDims &dims() const { return states.front().dims(); }
    bool is_pure() const { return kets.size() == states.size(); }
    void validate() const;
};

struct Povm {
    std::vector<Matrix> elements;
    /// Inconclusive or discard element, if any.
    std::optional<Matrix> rest;

    size_t dim() const { return elements.front().rows(); }
    Matrix total() const;
    double completeness_gap() const;
    double min_element_eigenvalue() const;
    bool valid(double psd_tol = 1e-9, double sum_tol = 1e-8) const;
};

// ---- Basis helpers -------------------------------------------------------

/// '0', '1', '+', '-' single-qubit kets.
CVector qubit_ket(char c);
/// Product ket from a label such as "0+1".
CVector product_ket(std::string_view label);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix swap_operator();

// ---- Two-qubit entanglement toolbox ---------------------------------------

/// amplitude(|i>|j>) = m[j][i] / sqrt(2), i.e. |psi> = (I (x) m)|Phi+>.
Matrix matrix_rep(const CVector &psi);
CVector state_from_rep(const Matrix &m);

double concurrence_pure(const CVector &psi);
bool is_product(const CVector &psi, double tol);
/// Local factors of a product state, a (x) b == psi up to rounding.
std::pair<CVector, CVector> product_factors(const CVector &psi);

/// Eigenvalues of rho * rho~ (descending); works for any PSD 4x4.
std::vector<double> wootters_spectrum(const Matrix &rho);
/// Wootters formula on an unnormalized PSD operator.
double concurrence_operator(const Matrix &rho);
double concurrence_mixed(const DensityMatrix &rho);

Matrix partial_transpose(const Matrix &m, const PartyDims &dims);
double min_pt_eigenvalue(const Matrix &m, const PartyDims &dims = {2, 2});
bool ppt_separable(const Matrix &m, double tol, const PartyDims &dims = {2, 2});

double schmidt_lambda_min(const CVector &psi);

struct AntiparallelTest {
    bool antiparallel = false;
    cplx z1 = 0;
    cplx z2 = 0;
    cplx ratio = 0;  // z1 / z2, 0 when undefined
};
AntiparallelTest antiparallel_test(const Matrix &a);
bool antiparallel_eigenvalues(const Matrix &a);

struct ProductSpan {
    bool all = false;
    std::vector<CVector> states;
};
ProductSpan product_states_in_span(const CVector &v1, const CVector &v2);

CVector random_pure_state(size_t dim, uint64_t seed);
/// Each state is U|0> for an independent Haar U.
Ensemble random_ensemble(size_t n, std::vector<double> priors, uint64_t seed);
/// Uniform point on the probability simplex.
std::vector<double> random_priors(size_t n, uint64_t seed);

/// Eigenvectors of a PSD operator with eigenvalue > tol, largest first.
std::vector<CVector> support_basis(const Matrix &m, double tol);
size_t state_rank(const Matrix &m, double tol);

/// Phase-fix: first nonzero amplitude made real positive.
CVector fix_phase(const CVector &v);

}  // namespace qlocc

#endif
