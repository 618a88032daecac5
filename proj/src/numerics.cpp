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

#include "qlocc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qlocc/rng.hpp"

namespace qlocc {

Matrix::Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(size_t rows, size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw NumericError("matrix entries length " + std::to_string(data_.size()) + " != " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!all_finite()) {
        throw NumericError("matrix has non-finite entries");
    }
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(const std::vector<double> &d) {
    Matrix m(d.size(), d.size());
    for (size_t k = 0; k < d.size(); k++) {
        m(k, k) = d[k];
    }
    return m;
}

Matrix Matrix::outer(const CVector &a, const CVector &b) {
    Matrix m(a.size(), b.size());
    for (size_t r = 0; r < a.size(); r++) {
        for (size_t c = 0; c < b.size(); c++) {
            m(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return m;
}

Matrix Matrix::projector(const CVector &v) { return outer(v, v); }

Matrix Matrix::from_columns(const std::vector<CVector> &cols, size_t rows) {
    Matrix m(rows, cols.size());
    for (size_t c = 0; c < cols.size(); c++) {
        m.set_column(c, cols[c]);
    }
    return m;
}

CVector Matrix::column(size_t c) const {
    CVector v(rows_);
    for (size_t r = 0; r < rows_; r++) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void Matrix::set_column(size_t c, const CVector &v) {
    if (v.size() != rows_) {
        throw NumericError("column length mismatch");
    }
    for (size_t r = 0; r < rows_; r++) {
        (*this)(r, c) = v[r];
    }
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

Matrix Matrix::conj() const {
    Matrix m = *this;
    for (auto &x : m.data_) {
        x = std::conj(x);
    }
    return m;
}

cplx Matrix::trace() const {
    cplx t = 0;
    for (size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

double Matrix::max_abs() const {
    double m = 0;
    for (const auto &x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double Matrix::hermiticity_gap() const {
    if (!is_square()) {
        throw NumericError("hermiticity of a non-square matrix");
    }
    double g = 0;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            g = std::max(g, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return g;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx &x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

Matrix Matrix::hermitian_part() const {
    Matrix m = *this;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            cplx v = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
            m(r, c) = v;
            m(c, r) = std::conj(v);
        }
    }
    return m;
}

Matrix &Matrix::operator+=(const Matrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw NumericError("matrix sum shape mismatch");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += o.data_[k];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw NumericError("matrix difference shape mismatch");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] -= o.data_[k];
    }
    return *this;
}

Matrix &Matrix::operator*=(cplx s) {
    for (auto &x : data_) {
        x *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw NumericError("matrix product shape mismatch");
    }
    Matrix m(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            cplx x = a(r, k);
            if (x == cplx(0)) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); c++) {
                m(r, c) += x * b(k, c);
            }
        }
    }
    return m;
}

CVector operator*(const Matrix &a, const CVector &v) {
    if (a.cols() != v.size()) {
        throw NumericError("matrix-vector shape mismatch");
    }
    CVector out(a.rows());
    for (size_t r = 0; r < a.rows(); r++) {
        cplx s = 0;
        for (size_t c = 0; c < a.cols(); c++) {
            s += a(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            cplx x = a(i, j);
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
                }
            }
        }
    }
    return m;
}

CVector kron(const CVector &a, const CVector &b) {
    CVector v(a.size() * b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t k = 0; k < b.size(); k++) {
            v[i * b.size() + k] = a[i] * b[k];
        }
    }
    return v;
}

cplx inner(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw NumericError("inner product length mismatch");
    }
    cplx s = 0;
    for (size_t k = 0; k < a.size(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double norm(const CVector &v) {
    double s = 0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

CVector normalized(const CVector &v) {
    double n = norm(v);
    if (n == 0) {
        throw NumericError("cannot normalize the zero vector");
    }
    return scaled(1.0 / n, v);
}

CVector axpy(cplx alpha, const CVector &x, const CVector &y) {
    CVector out = y;
    for (size_t k = 0; k < x.size(); k++) {
        out[k] += alpha * x[k];
    }
    return out;
}

CVector scaled(cplx alpha, const CVector &x) {
    CVector out = x;
    for (auto &v : out) {
        v *= alpha;
    }
    return out;
}

double distance(const CVector &a, const CVector &b) { return norm(axpy(-1.0, b, a)); }

namespace {

// Unitary W acting on columns (p, q) that zeroes the Hermitian pair block
// [[app, b], [conj(b), aqq]].
struct Rotation {
    cplx w00, w01, w10, w11;
    double shift;  // app -= shift, aqq += shift
};

Rotation jacobi_rotation(double app, double aqq, cplx b) {
    double ab = std::abs(b);
    cplx ph = std::conj(b) / ab;  // e^{-i phi}
    double theta = (aqq - app) / (2.0 * ab);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    double c = 1.0 / std::sqrt(t * t + 1.0);
    double s = t * c;
    return {c, s, -s * ph, c * ph, t * ab};
}

void rotate_columns(Matrix &a, size_t p, size_t q, const Rotation &w) {
    for (size_t k = 0; k < a.rows(); k++) {
        cplx x = a(k, p);
        cplx y = a(k, q);
        a(k, p) = x * w.w00 + y * w.w10;
        a(k, q) = x * w.w01 + y * w.w11;
    }
}

void rotate_rows(Matrix &a, size_t p, size_t q, const Rotation &w) {
    for (size_t k = 0; k < a.cols(); k++) {
        cplx x = a(p, k);
        cplx y = a(q, k);
        a(p, k) = std::conj(w.w00) * x + std::conj(w.w10) * y;
        a(q, k) = std::conj(w.w01) * x + std::conj(w.w11) * y;
    }
}

double off_diagonal_norm2(const Matrix &a) {
    double s = 0;
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return s;
}

}  // namespace

Eigensystem eig_hermitian(const Matrix &m) {
    if (!m.is_square()) {
        throw NumericError("eig_hermitian: non-square input");
    }
    if (!m.all_finite()) {
        throw NumericError("eig_hermitian: non-finite entries");
    }
    double scale = std::max(1.0, m.max_abs());
    if (m.hermiticity_gap() > 1e-9 * scale) {
        throw NumericError("eig_hermitian: input is not Hermitian");
    }
    size_t n = m.rows();
    Matrix a = m.hermitian_part();
    Matrix v = Matrix::identity(n);
    double total = 0;
    for (const auto &x : a.data()) {
        total += std::norm(x);
    }
    for (int sweep = 0; sweep < 100; sweep++) {
        if (off_diagonal_norm2(a) <= 1e-32 * total) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                cplx b = a(p, q);
                if (std::abs(b) < 1e-300) {
                    continue;
                }
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                Rotation w = jacobi_rotation(app, aqq, b);
                rotate_columns(a, p, q, w);
                rotate_rows(a, p, q, w);
                a(p, p) = app - w.shift;
                a(q, q) = aqq + w.shift;
                a(p, q) = 0;
                a(q, p) = 0;
                rotate_columns(v, p, q, w);
            }
        }
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return a(i, i).real() < a(j, j).real(); });
    Eigensystem out{std::vector<double>(n), Matrix(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]).real();
        out.vectors.set_column(k, v.column(order[k]));
    }
    return out;
}

std::vector<double> eigvals_hermitian(const Matrix &m) { return eig_hermitian(m).values; }

double min_eigenvalue(const Matrix &m) { return eig_hermitian(m).values.front(); }

double max_eigenvalue(const Matrix &m) { return eig_hermitian(m).values.back(); }

cplx det_2x2(const Matrix &a) {
    if (a.rows() != 2 || a.cols() != 2) {
        throw NumericError("expected a 2x2 matrix");
    }
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

std::pair<cplx, cplx> eig_2x2_general(const Matrix &a) {
    cplx c = det_2x2(a);
    cplx b = -(a(0, 0) + a(1, 1));
    // Triangular input: the diagonal is exact.
    if (a(1, 0) == cplx(0) || a(0, 1) == cplx(0)) {
        return {a(0, 0), a(1, 1)};
    }
    cplx s = std::sqrt(b * b - 4.0 * c);
    if ((std::conj(b) * s).real() < 0) {
        s = -s;
    }
    cplx q = -0.5 * (b + s);
    if (q == cplx(0)) {
        return {0.0, 0.0};
    }
    return {q, c / q};
}

QR qr_decompose(const Matrix &a) {
    size_t m = a.rows();
    size_t n = a.cols();
    if (m < n) {
        throw NumericError("qr_decompose: more columns than rows");
    }
    Matrix r = a;
    Matrix q = Matrix::identity(m);
    for (size_t k = 0; k < n && k + 1 <= m; k++) {
        double xn = 0;
        for (size_t i = k; i < m; i++) {
            xn += std::norm(r(i, k));
        }
        xn = std::sqrt(xn);
        if (xn == 0) {
            continue;
        }
        cplx x0 = r(k, k);
        cplx ph = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1);
        cplx alpha = -ph * xn;
        CVector v(m - k);
        for (size_t i = k; i < m; i++) {
            v[i - k] = r(i, k);
        }
        v[0] -= alpha;
        double vn = norm(v);
        if (vn == 0) {
            continue;
        }
        for (auto &x : v) {
            x /= vn;
        }
        // r <- (I - 2vv*) r
        for (size_t c = k; c < n; c++) {
            cplx s = 0;
            for (size_t i = k; i < m; i++) {
                s += std::conj(v[i - k]) * r(i, c);
            }
            for (size_t i = k; i < m; i++) {
                r(i, c) -= 2.0 * v[i - k] * s;
            }
        }
        // q <- q (I - 2vv*)
        for (size_t row = 0; row < m; row++) {
            cplx s = 0;
            for (size_t i = k; i < m; i++) {
                s += q(row, i) * v[i - k];
            }
            for (size_t i = k; i < m; i++) {
                q(row, i) -= 2.0 * s * std::conj(v[i - k]);
            }
        }
        for (size_t i = k + 1; i < m; i++) {
            r(i, k) = 0;
        }
    }
    return {q, r};
}

Matrix inverse(const Matrix &a) {
    if (!a.is_square()) {
        throw NumericError("inverse: non-square input");
    }
    size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    double scale = std::max(a.max_abs(), 1e-300);
    for (size_t col = 0; col < n; col++) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) {
                piv = r;
            }
        }
        if (std::abs(w(piv, col)) <= 1e-14 * scale) {
            throw NumericError("inverse: matrix is singular");
        }
        if (piv != col) {
            for (size_t c = 0; c < n; c++) {
                std::swap(w(piv, c), w(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        }
        cplx d = 1.0 / w(col, col);
        for (size_t c = 0; c < n; c++) {
            w(col, c) *= d;
            inv(col, c) *= d;
        }
        for (size_t r = 0; r < n; r++) {
            if (r == col) {
                continue;
            }
            cplx f = w(r, col);
            if (f == cplx(0)) {
                continue;
            }
            for (size_t c = 0; c < n; c++) {
                w(r, c) -= f * w(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

std::vector<double> singular_values(const Matrix &a) {
    // One-sided Jacobi: rotate columns until pairwise orthogonal.
    Matrix w = a.rows() >= a.cols() ? a : a.adjoint();
    size_t n = w.cols();
    for (int sweep = 0; sweep < 100; sweep++) {
        bool rotated = false;
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double alpha = 0;
                double beta = 0;
                cplx gamma = 0;
                for (size_t k = 0; k < w.rows(); k++) {
                    alpha += std::norm(w(k, p));
                    beta += std::norm(w(k, q));
                    gamma += std::conj(w(k, p)) * w(k, q);
                }
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) < 1e-300) {
                    continue;
                }
                rotated = true;
                rotate_columns(w, p, q, jacobi_rotation(alpha, beta, gamma));
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<double> s(n);
    for (size_t c = 0; c < n; c++) {
        s[c] = norm(w.column(c));
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

size_t numerical_rank(const Matrix &a, double tol) {
    auto s = singular_values(a);
    return static_cast<size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > tol; }));
}

Matrix haar_unitary(size_t dim, uint64_t seed) {
    if (dim == 0) {
        throw NumericError("haar_unitary: dim must be >= 1");
    }
    SplitMix64 rng(seed);
    Matrix g(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = cplx(re, im) * std::sqrt(0.5);
        }
    }
    QR f = qr_decompose(g);
    for (size_t c = 0; c < dim; c++) {
        cplx d = f.r(c, c);
        cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx(1);
        for (size_t r = 0; r < dim; r++) {
            f.q(r, c) *= ph;
        }
    }
    return f.q;
}

std::vector<CVector> orthonormal_basis(const std::vector<CVector> &vectors, double tol) {
    std::vector<CVector> basis;
    for (const auto &v : vectors) {
        CVector w = v;
        // Two Gram-Schmidt passes keep the basis orthogonal to rounding.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                w = axpy(-inner(b, w), b, w);
            }
        }
        double n = norm(w);
        if (n > tol) {
            basis.push_back(scaled(1.0 / n, w));
        }
    }
    return basis;
}

std::vector<CVector> complement_basis(const std::vector<CVector> &basis, size_t dim) {
    std::vector<CVector> all = orthonormal_basis(basis);
    std::vector<CVector> out;
    while (all.size() < dim) {
        // Greedy: the standard vector with the largest residual.
        CVector best;
        double best_norm = -1;
        for (size_t e = 0; e < dim; e++) {
            CVector w(dim);
            w[e] = 1.0;
            for (int pass = 0; pass < 2; pass++) {
                for (const auto &b : all) {
                    w = axpy(-inner(b, w), b, w);
                }
            }
            double n = norm(w);
            if (n > best_norm) {
                best_norm = n;
                best = w;
            }
        }
        CVector u = scaled(1.0 / best_norm, best);
        all.push_back(u);
        out.push_back(u);
    }
    return out;
}

Matrix psd_power(const Matrix &m, double power, double cutoff) {
    Eigensystem es = eig_hermitian(m);
    size_t n = m.rows();
    Matrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        double l = es.values[k];
        if (l <= cutoff) {
            continue;
        }
        out += std::pow(l, power) * Matrix::projector(es.vectors.column(k));
    }
    return out;
}

Matrix support_projector(const Matrix &m, double cutoff) {
    Eigensystem es = eig_hermitian(m);
    size_t n = m.rows();
    Matrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        if (es.values[k] > cutoff) {
            out += Matrix::projector(es.vectors.column(k));
        }
    }
    return out;
}

}  // namespace qlocc
