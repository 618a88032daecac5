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

#include "qlocc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlocc/rng.hpp"

namespace qlocc {

namespace {

size_t product_of(const PartyDims &dims) {
    return std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
}

void require_two_qubit(const CVector &psi, const char *what) {
    if (psi.size() != 4) {
        throw QuantumError(std::string(what) + ": expected a two-qubit state (length 4)");
    }
}

}  // namespace

PureState::PureState(CVector amplitudes, PartyDims dims) : amp_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (product_of(dims_) != amp_.size()) {
        throw QuantumError("pure state length does not match party dims");
    }
    if (std::abs(norm(amp_) - 1.0) > 1e-10) {
        throw QuantumError("pure state is not normalized");
    }
}

PureState PureState::normalize(CVector amplitudes, PartyDims dims) {
    return PureState(normalized(amplitudes), std::move(dims));
}

DensityMatrix::DensityMatrix(Matrix m, PartyDims dims, double tol) : dims_(std::move(dims)) {
    if (!m.is_square()) {
        throw QuantumError("density matrix must be square");
    }
    if (product_of(dims_) != m.rows()) {
        throw QuantumError("density matrix size does not match party dims");
    }
    if (m.hermiticity_gap() > tol) {
        throw QuantumError("density matrix is not Hermitian");
    }
    m_ = m.hermitian_part();
    if (std::abs(m_.trace().real() - 1.0) > tol) {
        throw QuantumError("density matrix trace is not 1");
    }
    if (min_eigenvalue(m_) < -tol) {
        throw QuantumError("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_pure(const CVector &v, PartyDims dims) {
    PureState s(v, dims);
    return DensityMatrix(Matrix::projector(s.amplitudes()), std::move(dims));
}

Ensemble Ensemble::from_kets(const std::vector<CVector> &kets, std::vector<double> priors, PartyDims dims) {
    Ensemble e;
    for (const auto &k : kets) {
        e.states.push_back(DensityMatrix::from_pure(k, dims));
        e.kets.push_back(k);
    }
    e.priors = std::move(priors);
    e.validate();
    return e;
}

Ensemble Ensemble::from_states(std::vector<DensityMatrix> states, std::vector<double> priors) {
    Ensemble e;
    e.states = std::move(states);
    e.priors = std::move(priors);
    e.validate();
    return e;
}

Ensemble Ensemble::uniform(const std::vector<CVector> &kets, PartyDims dims) {
    return from_kets(kets, std::vector<double>(kets.size(), 1.0 / static_cast<double>(kets.size())), dims);
}

void Ensemble::validate() const {
    if (states.empty()) {
        throw QuantumError("ensemble has no states");
    }
    if (priors.size() != states.size()) {
        throw QuantumError("ensemble has " + std::to_string(states.size()) + " states but " +
                           std::to_string(priors.size()) + " priors");
    }
    double sum = 0;
    for (double p : priors) {
        if (!(p >= 0)) {
            throw QuantumError("priors must be nonnegative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw QuantumError("priors sum to " + std::to_string(sum) + ", not 1");
    }
    for (const auto &s : states) {
        if (s.dims() != states.front().dims()) {
            throw QuantumError("ensemble states have different party dims");
        }
    }
}

Matrix Povm::total() const {
    Matrix t(dim(), dim());
    for (const auto &e : elements) {
        t += e;
    }
    if (rest) {
        t += *rest;
    }
    return t;
}

double Povm::completeness_gap() const { return (total() - Matrix::identity(dim())).max_abs(); }

double Povm::min_element_eigenvalue() const {
    double m = INFINITY;
    for (const auto &e : elements) {
        m = std::min(m, min_eigenvalue(e.hermitian_part()));
    }
    if (rest) {
        m = std::min(m, min_eigenvalue(rest->hermitian_part()));
    }
    return m;
}

bool Povm::valid(double psd_tol, double sum_tol) const {
    for (const auto &e : elements) {
        if (e.hermiticity_gap() > psd_tol) {
            return false;
        }
    }
    return min_element_eigenvalue() >= -psd_tol && completeness_gap() <= sum_tol;
}

CVector qubit_ket(char c) {
    const double h = std::sqrt(0.5);
    switch (c) {
        case '0':
            return {1.0, 0.0};
        case '1':
            return {0.0, 1.0};
        case '+':
            return {h, h};
        case '-':
            return {h, -h};
        default:
            throw QuantumError(std::string("unknown qubit label '") + c + "'");
    }
}

CVector product_ket(std::string_view label) {
    CVector v{1.0};
    for (char c : label) {
        v = kron(v, qubit_ket(c));
    }
    return v;
}

Matrix pauli_x() { return Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
Matrix pauli_y() { return Matrix(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
Matrix pauli_z() { return Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

Matrix swap_operator() {
    Matrix s(4, 4);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            s(2 * j + i, 2 * i + j) = 1.0;
        }
    }
    return s;
}

Matrix matrix_rep(const CVector &psi) {
    require_two_qubit(psi, "matrix_rep");
    const double r2 = std::sqrt(2.0);
    Matrix m(2, 2);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            m(j, i) = r2 * psi[2 * i + j];
        }
    }
    return m;
}

CVector state_from_rep(const Matrix &m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw QuantumError("state_from_rep: expected 2x2");
    }
    const double r2 = std::sqrt(0.5);
    CVector psi(4);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            psi[2 * i + j] = r2 * m(j, i);
        }
    }
    return psi;
}

double concurrence_pure(const CVector &psi) { return std::abs(det_2x2(matrix_rep(psi))); }

bool is_product(const CVector &psi, double tol) { return concurrence_pure(normalized(psi)) <= tol; }

std::pair<CVector, CVector> product_factors(const CVector &psi) {
    require_two_qubit(psi, "product_factors");
    size_t best = 0;
    for (size_t k = 1; k < 4; k++) {
        if (std::abs(psi[k]) > std::abs(psi[best])) {
            best = k;
        }
    }
    size_t i0 = best / 2;
    size_t j0 = best % 2;
    CVector a = normalized(CVector{psi[j0], psi[2 + j0]});
    CVector b = normalized(CVector{psi[2 * i0], psi[2 * i0 + 1]});
    cplx ph = inner(kron(a, b), psi);
    if (std::abs(ph) > 0) {
        a = scaled(ph / std::abs(ph), a);
    }
    return {a, b};
}

std::vector<double> wootters_spectrum(const Matrix &rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw QuantumError("wootters_spectrum: expected 4x4");
    }
    // The square roots of the eigenvalues of rho rho~ are the singular values of
    // tau = B^T (Y (x) Y) B for any factorization rho = B B^dagger. Building B from
    // the spectral support keeps noise eigenvalues from entering through sqrt.
    Eigensystem es = eig_hermitian(rho.hermitian_part());
    double top = std::max(es.values.back(), 0.0);
    std::vector<CVector> cols;
    for (size_t k = 4; k-- > 0;) {
        if (es.values[k] > 1e-14 * top && es.values[k] > 0) {
            cols.push_back(scaled(std::sqrt(es.values[k]), es.vectors.column(k)));
        }
    }
    std::vector<double> t(4, 0.0);
    if (cols.empty()) {
        return t;
    }
    Matrix b = Matrix::from_columns(cols, 4);
    Matrix yy = kron(pauli_y(), pauli_y());
    auto s = singular_values(b.transpose() * yy * b);
    for (size_t k = 0; k < s.size(); k++) {
        t[k] = s[k] * s[k];
    }
    return t;
}

double concurrence_operator(const Matrix &rho) {
    auto t = wootters_spectrum(rho);
    double c = std::sqrt(t[0]) - std::sqrt(t[1]) - std::sqrt(t[2]) - std::sqrt(t[3]);
    return std::max(0.0, c);
}

double concurrence_mixed(const DensityMatrix &rho) {
    if (rho.dims() != PartyDims{2, 2}) {
        throw QuantumError("concurrence_mixed: expected a two-qubit state");
    }
    return concurrence_operator(rho.matrix());
}

Matrix partial_transpose(const Matrix &m, const PartyDims &dims) {
    if (dims.size() != 2) {
        throw QuantumError("partial_transpose: expected bipartite dims");
    }
    size_t da = dims[0];
    size_t db = dims[1];
    if (m.rows() != da * db || m.cols() != da * db) {
        throw QuantumError("partial_transpose: matrix size does not match dims");
    }
    Matrix out(m.rows(), m.cols());
    for (size_t i = 0; i < da; i++) {
        for (size_t j = 0; j < db; j++) {
            for (size_t k = 0; k < da; k++) {
                for (size_t l = 0; l < db; l++) {
                    out(i * db + l, k * db + j) = m(i * db + j, k * db + l);
                }
            }
        }
    }
    return out;
}

double min_pt_eigenvalue(const Matrix &m, const PartyDims &dims) {
    return min_eigenvalue(partial_transpose(m.hermitian_part(), dims));
}

bool ppt_separable(const Matrix &m, double tol, const PartyDims &dims) { return min_pt_eigenvalue(m, dims) >= -tol; }

double schmidt_lambda_min(const CVector &psi) {
    double c = concurrence_pure(psi);
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - c * c)));
}

AntiparallelTest antiparallel_test(const Matrix &a) {
    AntiparallelTest t;
    auto [z1, z2] = eig_2x2_general(a);
    t.z1 = z1;
    t.z2 = z2;
    if (std::abs(z1) <= 1e-10 || std::abs(z2) <= 1e-10) {
        return t;
    }
    t.ratio = z1 / z2;
    t.antiparallel = std::abs(t.ratio.imag()) <= 1e-8 * std::abs(t.ratio) && t.ratio.real() < 0;
    return t;
}

bool antiparallel_eigenvalues(const Matrix &a) { return antiparallel_test(a).antiparallel; }

ProductSpan product_states_in_span(const CVector &v1, const CVector &v2) {
    require_two_qubit(v1, "product_states_in_span");
    require_two_qubit(v2, "product_states_in_span");
    auto basis = orthonormal_basis({normalized(v1), normalized(v2)}, 0.0);
    cplx g12 = inner(normalized(v1), normalized(v2));
    if (basis.size() < 2 || 1.0 - std::norm(g12) < 1e-10) {
        throw QuantumError("product_states_in_span: inputs are linearly dependent");
    }
    Matrix a = matrix_rep(basis[0]);
    Matrix b = matrix_rep(basis[1]);
    // det(alpha A + beta B) = qa alpha^2 + qb alpha beta + qc beta^2
    cplx qa = det_2x2(a);
    cplx qc = det_2x2(b);
    cplx qb = a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0) - a(0, 1) * b(1, 0) - a(1, 0) * b(0, 1);
    double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
    ProductSpan out;
    if (scale < 1e-10) {
        out.all = true;
        return out;
    }
    // Work in the chart whose leading coefficient is larger.
    bool swapped = std::abs(qa) < std::abs(qc);
    const CVector &e0 = swapped ? basis[1] : basis[0];
    const CVector &e1 = swapped ? basis[0] : basis[1];
    if (swapped) {
        std::swap(qa, qc);
    }
    // qa x^2 + qb x + qc = 0 for the state x e0 + e1
    std::vector<CVector> cands;
    if (std::abs(qa) <= 1e-12 * scale) {
        cands.push_back(e0);
        cands.push_back(axpy(-qc / qb, e0, e1));
    } else {
        auto [x1, x2] = eig_2x2_general(Matrix(2, 2, {0.0, -qc / qa, 1.0, -qb / qa}));
        cands.push_back(axpy(x1, e0, e1));
        cands.push_back(axpy(x2, e0, e1));
    }
    for (auto &c : cands) {
        CVector u = fix_phase(normalized(c));
        bool dup = std::any_of(out.states.begin(), out.states.end(),
                               [&](const CVector &w) { return std::abs(inner(w, u)) > 1.0 - 1e-9; });
        if (!dup) {
            out.states.push_back(u);
        }
    }
    return out;
}

CVector random_pure_state(size_t dim, uint64_t seed) { return haar_unitary(dim, seed).column(0); }

Ensemble random_ensemble(size_t n, std::vector<double> priors, uint64_t seed) {
    if (n == 0) {
        throw QuantumError("random_ensemble: n must be >= 1");
    }
    if (priors.empty()) {
        priors.assign(n, 1.0 / static_cast<double>(n));
    }
    std::vector<CVector> kets;
    for (size_t k = 0; k < n; k++) {
        kets.push_back(random_pure_state(4, derive_seed(seed, k)));
    }
    return Ensemble::from_kets(kets, std::move(priors));
}

std::vector<double> random_priors(size_t n, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> p(n);
    double s = 0;
    for (auto &x : p) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
    }
    for (auto &x : p) {
        x /= s;
    }
    // Exact unit sum for validation.
    double rest = 1.0;
    for (size_t k = 0; k + 1 < n; k++) {
        rest -= p[k];
    }
    p[n - 1] = rest;
    return p;
}

std::vector<CVector> support_basis(const Matrix &m, double tol) {
    Eigensystem es = eig_hermitian(m.hermitian_part());
    std::vector<CVector> out;
    for (size_t k = m.rows(); k-- > 0;) {
        if (es.values[k] > tol) {
            out.push_back(es.vectors.column(k));
        }
    }
    return out;
}

size_t state_rank(const Matrix &m, double tol) { return numerical_rank(m, tol); }

CVector fix_phase(const CVector &v) {
    for (const auto &x : v) {
        if (std::abs(x) > 1e-12) {
            return scaled(std::abs(x) / x, v);
        }
    }
    return v;
}

}  // namespace qlocc
