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

#ifndef QLOCC_NUMERICS_HPP
#define QLOCC_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qlocc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

struct NumericError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix, row-major.
class Matrix {
   public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols);
    Matrix(size_t rows, size_t cols, std::vector<cplx> entries);

    static Matrix identity(size_t n);
    static Matrix diagonal(const std::vector<double> &d);
    /// |a><b|
    static Matrix outer(const CVector &a, const CVector &b);
    static Matrix projector(const CVector &v);
    static Matrix from_columns(const std::vector<CVector> &cols, size_t rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    cplx &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<cplx> &data() const { return data_; }

    CVector column(size_t c) const;
    void set_column(size_t c, const CVector &v);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;
    cplx trace() const;
    /// Largest entry modulus.
    double max_abs() const;
    double hermiticity_gap() const;
    bool all_finite() const;
    Matrix hermitian_part() const;

    Matrix &operator+=(const Matrix &o);
    Matrix &operator-=(const Matrix &o);
    Matrix &operator*=(cplx s);

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator*(cplx s, Matrix a);
CVector operator*(const Matrix &a, const CVector &v);

Matrix kron(const Matrix &a, const Matrix &b);
CVector kron(const CVector &a, const CVector &b);

/// <a|b>
cplx inner(const CVector &a, const CVector &b);
double norm(const CVector &v);
CVector normalized(const CVector &v);
CVector axpy(cplx alpha, const CVector &x, const CVector &y);
CVector scaled(cplx alpha, const CVector &x);
double distance(const CVector &a, const CVector &b);

struct Eigensystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns
};

/// Cyclic complex Jacobi. Input must be Hermitian within 1e-9 (relative to scale).
Eigensystem eig_hermitian(const Matrix &m);
std::vector<double> eigvals_hermitian(const Matrix &m);
double min_eigenvalue(const Matrix &m);
double max_eigenvalue(const Matrix &m);

/// Roots of x^2 - tr(A) x + det(A).
std::pair<cplx, cplx> eig_2x2_general(const Matrix &a);
cplx det_2x2(const Matrix &a);

struct QR {
    Matrix q;
    Matrix r;
};
/// Householder QR of an m x n matrix with m >= n. Q is m x m.
QR qr_decompose(const Matrix &a);

Matrix inverse(const Matrix &a);

/// Descending.
std::vector<double> singular_values(const Matrix &a);
size_t numerical_rank(const Matrix &a, double tol);

/// Haar unitary from a Ginibre sample with phase-corrected QR.
Matrix haar_unitary(size_t dim, uint64_t seed);

/// Orthonormal basis of span(vectors), vectors with residual below tol dropped.
std::vector<CVector> orthonormal_basis(const std::vector<CVector> &vectors, double tol = 1e-10);
/// Orthonormal basis of the orthogonal complement of span(basis) in C^dim.
std::vector<CVector> complement_basis(const std::vector<CVector> &basis, size_t dim);

/// Spectral power on the support; eigenvalues <= cutoff are dropped.
Matrix psd_power(const Matrix &m, double power, double cutoff = 1e-10);
/// Projector onto eigenvectors with eigenvalue > cutoff.
Matrix support_projector(const Matrix &m, double cutoff = 1e-10);

}  // namespace qlocc

#endif
