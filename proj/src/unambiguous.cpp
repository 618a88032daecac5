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


#include "qlocc/unambiguous.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlocc/kernels.hpp"
#include "qlocc/trine.hpp"

namespace qlocc {

namespace {

void require_independent(const Ensemble &e, const Tolerances &tol) {
    e.validate();
    if (!e.is_pure()) {
        throw UnambiguousError("unambiguous discrimination needs pure states");
    }
    if (e.size() > e.dim()) {
        throw UnambiguousError("more states than the space dimension: states are linearly dependent");
    }
    double smin = singular_values(Matrix::from_columns(e.kets, e.dim())).back();
    if (smin <= tol.independence) {
        std::ostringstream os;
        os << "states are linearly dependent (smallest singular value " << smin << ")";
        throw UnambiguousError(os.str());
    }
}

// Span coordinates: B has orthonormal columns spanning the states.
struct Compressed {
    Matrix basis;
    std::vector<CVector> duals;  // B^dagger dual_i
    std::vector<double> weights;
};

Compressed compress(const Ensemble &e, const DualBasis &db) {
    Compressed c;
    auto basis = orthonormal_basis(e.kets, 0.0);
    c.basis = Matrix::from_columns(basis, e.dim());
    Matrix bh = c.basis.adjoint();
    for (size_t i = 0; i < e.size(); i++) {
        c.duals.push_back(bh * db.duals[i]);
        c.weights.push_back(e.priors[i] * std::norm(db.overlaps[i]));
    }
    return c;
}

Matrix slack(const Compressed &c, const std::vector<double> &a) {
    size_t n = c.duals.size();
    Matrix x = Matrix::identity(n);
    for (size_t i = 0; i < a.size(); i++) {
        x -= a[i] * Matrix::projector(c.duals[i]);
    }
    return x;
}

double barrier_value(const Compressed &c, const std::vector<double> &a, double t) {
    for (double v : a) {
        if (!(v > 0)) {
            return -std::numeric_limits<double>::infinity();
        }
    }
    auto ev = eigvals_hermitian(slack(c, a));
    if (ev.front() <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    double f = 0;
    for (size_t i = 0; i < a.size(); i++) {
        f += t * c.weights[i] * a[i] + std::log(a[i]);
    }
    for (double v : ev) {
        f += std::log(v);
    }
    return f;
}

void center(const Compressed &c, std::vector<double> &a, double t) {
    size_t n = a.size();
    for (int iter = 0; iter < 200; iter++) {
        Matrix y = inverse(slack(c, a));
        std::vector<CVector> yd;
        for (size_t i = 0; i < n; i++) {
            yd.push_back(y * c.duals[i]);
        }
        Matrix neg_h(n, n);
        CVector g(n);
        for (size_t i = 0; i < n; i++) {
            g[i] = t * c.weights[i] - inner(c.duals[i], yd[i]).real() + 1 / a[i];
            for (size_t j = 0; j < n; j++) {
                neg_h(i, j) = std::norm(inner(c.duals[i], yd[j])) + (i == j ? 1 / (a[i] * a[i]) : 0.0);
            }
        }
        CVector step = inverse(neg_h) * g;
        double decrement = 0;
        for (size_t i = 0; i < n; i++) {
            decrement += (g[i] * std::conj(step[i])).real();
        }
        if (decrement < 1e-14) {
            return;
        }
        double f0 = barrier_value(c, a, t);
        double s = 1;
        std::vector<double> trial(n);
        for (int k = 0; k < 60; k++, s *= 0.5) {
            for (size_t i = 0; i < n; i++) {
                trial[i] = a[i] + s * step[i].real();
            }
            double f1 = barrier_value(c, trial, t);
            if (std::isfinite(f1) && f1 >= f0 + 0.25 * s * decrement) {
                break;
            }
        }
        if (trial == a) {
            return;
        }
        a = trial;
    }
}

double psd_margin(const Matrix &m) { return min_eigenvalue(m.hermitian_part()); }

// Grid inner loop: d^dagger X^-1 d for X = I - sum a_k |d_k><d_k| (n <= 3) by a semidefinite
// Cholesky. nullopt if X is not PSD; +inf if X is singular (the last coefficient is then held at 0).
std::optional<double> quad_inverse(const Compressed &c, const std::vector<double> &a) {
    constexpr double pivot_tol = 1e-12;
    size_t n = c.duals.size();
    std::array<std::array<cplx, 3>, 3> l{};
    bool singular = false;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j <= i; j++) {
            cplx x = i == j ? 1.0 : 0.0;
            for (size_t k = 0; k < a.size(); k++) {
                x -= a[k] * c.duals[k][i] * std::conj(c.duals[k][j]);
            }
            for (size_t k = 0; k < j; k++) {
                x -= l[i][k] * std::conj(l[j][k]);
            }
            if (i == j) {
                if (x.real() < -pivot_tol) {
                    return std::nullopt;
                }
                if (x.real() <= pivot_tol) {
                    singular = true;
                    l[i][i] = 0;
                } else {
                    l[i][i] = std::sqrt(x.real());
                }
            } else if (l[j][j].real() == 0) {
                if (std::abs(x) > std::sqrt(pivot_tol)) {
                    return std::nullopt;
                }
                l[i][j] = 0;
            } else {
                l[i][j] = x / l[j][j].real();
            }
        }
    }
    if (singular) {
        return std::numeric_limits<double>::infinity();
    }
    const CVector &d = c.duals[n - 1];
    double q = 0;
    std::array<cplx, 3> y{};
    for (size_t i = 0; i < n; i++) {
        cplx x = d[i];
        for (size_t k = 0; k < i; k++) {
            x -= l[i][k] * y[k];
        }
        y[i] = x / l[i][i].real();
        q += std::norm(y[i]);
    }
    return q;
}

Matrix twirl_unitary() {
    Matrix u = trine_family(2).u;
    return kron(u, u);
}

double concurrence_from_t(std::array<double, 4> t) {
    std::sort(t.begin(), t.end(), std::greater<>());
    double r = std::sqrt(std::max(t[0], 0.0));
    for (int k = 1; k < 4; k++) {
        r -= std::sqrt(std::max(t[k], 0.0));
    }
    return std::max(r, 0.0);
}

template <class Fn>
double golden_max(Fn &&f, double lo, double hi, double tol = 1e-12) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    double best = f(lo) >= f(hi) ? lo : hi;
    return f((lo + hi) / 2) >= f(best) ? (lo + hi) / 2 : best;
}

BranchOptimum finish_branch(std::string name, double a, double b, double c) {
    BranchOptimum o{std::move(name), a, b, c};
    Matrix pi = double_trine_element(a, b, c);
    Matrix omega = Matrix::identity(4) - double_trine_orbit_sum(pi);
    o.pi_concurrence = concurrence_operator(pi);
    o.omega_concurrence = concurrence_operator(omega);
    o.omega_separable = o.omega_concurrence <= 1e-8 && psd_margin(omega) >= -1e-9;
    return o;
}

}  // namespace

DualBasis dual_states(const Ensemble &e, const Tolerances &tol) {
    require_independent(e, tol);
    auto basis = orthonormal_basis(e.kets, 0.0);
    Matrix b = Matrix::from_columns(basis, e.dim());
    Matrix r = b.adjoint() * Matrix::from_columns(e.kets, e.dim());
    Matrix rinv = inverse(r);
    DualBasis db;
    size_t n = e.size();
    for (size_t i = 0; i < n; i++) {
        CVector row(n);
        for (size_t k = 0; k < n; k++) {
            row[k] = std::conj(rinv(i, k));
        }
        CVector d = normalized(b * row);
        cplx o = inner(d, e.kets[i]);
        d = scaled(o / std::abs(o), d);
        db.duals.push_back(d);
        db.overlaps.push_back(inner(d, e.kets[i]));
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i != j) {
                db.biorthogonality_residual =
                    std::max(db.biorthogonality_residual, std::abs(inner(db.duals[i], e.kets[j])));
            }
        }
    }
    return db;
}

LoccFeasibility locc_unambiguous_feasible(const Ensemble &e, const Tolerances &tol) {
    if (e.size() != 3 && e.size() != 4) {
        throw UnambiguousError("LOCC feasibility test needs 3 or 4 states, got " + std::to_string(e.size()));
    }
    if (e.dims() != PartyDims{2, 2}) {
        throw UnambiguousError("LOCC feasibility test is defined for two-qubit ensembles");
    }
    DualBasis db = dual_states(e, tol);
    LoccFeasibility out;
    out.feasible = true;
    for (size_t i = 0; i < e.size(); i++) {
        std::optional<CVector> witness;
        if (e.size() == 4) {
            double c = concurrence_pure(db.duals[i]);
            out.complement_concurrence.push_back(c);
            if (c <= tol.product) {
                witness = db.duals[i];
            }
        } else {
            std::vector<CVector> others;
            for (size_t j = 0; j < 3; j++) {
                if (j != i) {
                    others.push_back(e.kets[j]);
                }
            }
            auto perp = complement_basis(others, 4);
            auto ps = product_states_in_span(perp[0], perp[1]);
            if (ps.all) {
                witness = db.duals[i];
            }
            for (const auto &p : ps.states) {
                if (!witness && std::abs(inner(p, e.kets[i])) > 1e-9) {
                    witness = p;
                }
            }
        }
        out.feasible = out.feasible && witness.has_value();
        out.witnesses.push_back(witness);
    }
    return out;
}

UnambiguousSolution global_unambiguous_opt(const Ensemble &e, const BarrierOptions &opts, const Tolerances &tol) {
    if (e.size() < 2 || e.size() > 4) {
        throw UnambiguousError("global optimizer handles 2 to 4 states, got " + std::to_string(e.size()));
    }
    DualBasis db = dual_states(e, tol);
    Compressed c = compress(e, db);
    size_t n = e.size();
    std::vector<double> a(n, 0.5 / static_cast<double>(n));
    // Each centered point gives a dual Z = (1/t)(I - M)^-1, rescaled so tr(Z G_i) >= w_i
    // holds exactly; keep the tightest. Large t loses precision in the inverse.
    double bound = std::numeric_limits<double>::infinity();
    double t = opts.t_start;
    while (true) {
        center(c, a, t);
        Matrix z = (1 / t) * inverse(slack(c, a));
        double scale = 1;
        for (size_t i = 0; i < n; i++) {
            double zi = inner(c.duals[i], z * c.duals[i]).real();
            if (c.weights[i] > 0) {
                scale = std::max(scale, c.weights[i] / zi);
            }
        }
        if (min_eigenvalue(z.hermitian_part()) >= 0) {
            bound = std::min(bound, scale * z.trace().real());
        }
        if (t >= opts.t_final) {
            break;
        }
        t = std::min(t * opts.t_factor, opts.t_final);
    }

    UnambiguousSolution s;
    s.coefficients = a;
    Matrix rest = Matrix::identity(e.dim());
    for (size_t i = 0; i < n; i++) {
        Matrix pi = a[i] * Matrix::projector(db.duals[i]);
        s.povm.elements.push_back(pi);
        rest -= pi;
        s.weights.push_back(a[i] * std::norm(db.overlaps[i]));
    }
    s.povm.rest = rest;
    for (size_t i = 0; i < n; i++) {
        Matrix proj = Matrix::projector(e.kets[i]);
        s.conclusive += e.priors[i] * (proj * s.povm.elements[i]).trace().real();
        for (size_t j = 0; j < n; j++) {
            if (i != j) {
                s.zero_error_residual =
                    std::max(s.zero_error_residual, std::abs((proj * s.povm.elements[j]).trace()));
            }
        }
    }
    s.inconclusive = 1 - s.conclusive;
    s.rest_min_eig = psd_margin(rest);

    s.dual_bound = bound;
    double primal = 0;
    for (size_t i = 0; i < n; i++) {
        primal += c.weights[i] * a[i];
    }
    s.gap = s.dual_bound - primal;
    s.certified = s.rest_min_eig >= -tol.certificate && s.zero_error_residual <= 1e-9 && s.gap <= opts.gap_tol;
    return s;
}

UnambiguousGridResult unambiguous_grid_oracle(const Ensemble &e, double step, bool parallel) {
    if (e.size() != 2 && e.size() != 3) {
        throw UnambiguousError("grid oracle handles 2 or 3 states");
    }
    if (!(step > 0 && step <= 0.5)) {
        throw UnambiguousError("grid step must lie in (0, 0.5]");
    }
    DualBasis db = dual_states(e);
    Compressed c = compress(e, db);
    size_t n = e.size();
    size_t m = static_cast<size_t>(std::floor(1 / step + 1e-9)) + 1;
    size_t points = n == 2 ? m : m * m;
    auto coeffs = [&](size_t idx) {
        std::vector<double> a;
        for (size_t k = 0; k + 1 < n; k++) {
            a.push_back(std::min(1.0, static_cast<double>(idx % m) * step));
            idx /= m;
        }
        return a;
    };
    auto eval = [&](size_t idx) -> std::optional<double> {
        auto a = coeffs(idx);
        auto q = quad_inverse(c, a);
        if (!q) {
            return std::nullopt;
        }
        double v = c.weights[n - 1] / *q;
        for (size_t k = 0; k + 1 < n; k++) {
            v += c.weights[k] * a[k];
        }
        return v;
    };
    auto best = parallel ? kernels::omp::grid_argmax(points, eval) : kernels::serial::grid_argmax(points, eval);
    UnambiguousGridResult out;
    out.points = points;
    if (best.found) {
        out.best = best.value;
        out.coefficients = coeffs(best.index);
        out.coefficients.push_back(1 / *quad_inverse(c, out.coefficients));
    }
    return out;
}

Povm twirl_symmetrize(const Povm &povm, const Matrix &v, int order) {
    if (order < 1 || povm.elements.size() != static_cast<size_t>(order)) {
        throw UnambiguousError("twirl needs one element per group element");
    }
    if (v.rows() != povm.dim() || v.cols() != povm.dim()) {
        throw UnambiguousError("twirl unitary has the wrong dimension");
    }
    if ((v.adjoint() * v - Matrix::identity(v.rows())).max_abs() > 1e-9) {
        throw UnambiguousError("twirl operator is not unitary");
    }
    Matrix w = Matrix::identity(v.rows());
    for (int k = 0; k < order; k++) {
        w = v * w;
    }
    if ((w - w(0, 0) * Matrix::identity(v.rows())).max_abs() > 1e-9) {
        throw UnambiguousError("V^order is not a multiple of the identity: ensemble symmetry violated");
    }
    size_t n = povm.elements.size();
    Povm out;
    out.elements.assign(n, Matrix(v.rows(), v.cols()));
    Matrix rest(v.rows(), v.cols());
    Matrix vk = Matrix::identity(v.rows());
    double inv = 1.0 / order;
    for (size_t k = 0; k < n; k++) {
        for (size_t i = 0; i < n; i++) {
            out.elements[(i + k) % n] += inv * (vk * povm.elements[i] * vk.adjoint());
        }
        if (povm.rest) {
            rest += inv * (vk * *povm.rest * vk.adjoint());
        }
        vk = v * vk;
    }
    if (povm.rest) {
        out.rest = rest;
    }
    return out;
}

SymmetricSepBound symmetric_sep_bound(const Ensemble &e, const Tolerances &tol) {
    if (e.size() != 3 || e.dims() != PartyDims{2, 2}) {
        throw UnambiguousError("symmetric bound needs three two-qubit states");
    }
    Matrix f = swap_operator();
    for (size_t i = 0; i < 3; i++) {
        if (!e.is_pure() || distance(f * e.kets[i], e.kets[i]) > 1e-9) {
            throw UnambiguousError("state " + std::to_string(i) + " is not swap-symmetric");
        }
    }
    DualBasis db = dual_states(e, tol);
    SymmetricSepBound out;
    out.applicable = true;
    for (size_t i = 0; i < 3; i++) {
        out.dual_concurrence.push_back(concurrence_pure(db.duals[i]));
        out.overlap_sq.push_back(std::norm(db.overlaps[i]));
        out.applicable = out.applicable && out.dual_concurrence[i] >= out.overlap_sq[i] - 1e-9;
    }
    if (out.applicable) {
        out.bound = *std::max_element(e.priors.begin(), e.priors.end());
    }
    return out;
}

std::array<CVector, 2> sep_product_rays(const CVector &dual) {
    if (dual.size() != 4 || distance(swap_operator() * dual, dual) > 1e-9) {
        throw UnambiguousError("product rays need a swap-symmetric two-qubit state");
    }
    // Amplitude matrix A + t J / sqrt2 with J antisymmetric: det = det A + t^2 / 2.
    cplx det_a = dual[0] * dual[3] - dual[1] * dual[2];
    cplx t = std::sqrt(-2.0 * det_a);
    const double h = std::sqrt(0.5);
    CVector m{0.0, h, -h, 0.0};
    return {fix_phase(normalized(axpy(t, m, dual))), fix_phase(normalized(axpy(-t, m, dual)))};
}

Matrix double_trine_element(double a, double b, double c) {
    CVector d{1.0, 0.0, 0.0, -1.0 / 3};
    CVector m{0.0, 1.0, -1.0, 0.0};
    return a * Matrix::outer(d, d) + b * (Matrix::outer(d, m) + Matrix::outer(m, d)) + c * Matrix::outer(m, m);
}

Matrix double_trine_orbit_sum(const Matrix &pi) {
    Matrix v = twirl_unitary();
    Matrix sum(4, 4);
    Matrix vk = Matrix::identity(4);
    for (int k = 0; k < 3; k++) {
        sum += vk * pi * vk.adjoint();
        vk = v * vk;
    }
    return sum.hermitian_part();
}

std::array<double, 2> double_trine_pi_eigs(double a, double b, double c) {
    double r = std::sqrt((5 * a - 9 * c) * (5 * a - 9 * c) + 180 * b * b);
    return {(5 * a + 9 * c - r) / 9, (5 * a + 9 * c + r) / 9};
}

std::array<double, 4> double_trine_sum_eigs(double a, double b, double c) {
    double r = std::sqrt((a - 9 * c) * (a - 9 * c) + 36 * b * b);
    std::array<double, 4> v{4 * a / 3, 4 * a / 3, (a + 9 * c - r) / 3, (a + 9 * c + r) / 3};
    std::sort(v.begin(), v.end());
    return v;
}

std::array<double, 4> double_trine_omega_t(double a, double b, double c) {
    double base = 1 - 2 * a / 3 + 2 * a * a / 9 + 4 * b * b - 6 * c + 18 * c * c;
    double r = 2.0 / 9 * (3 - a - 9 * c) * std::sqrt((a - 9 * c) * (a - 9 * c) + 36 * b * b);
    double t3 = (3 - 4 * a) * (3 - 4 * a) / 9;
    return {base + r, base - r, t3, t3};
}

double double_trine_sep_constraint(double a, double b, double c) {
    return (a - 3 * c) * (a - 3 * c) * ((a + 3 * c) * (a + 3 * c) - 12 * b * b);
}

SymmetricSepSolution double_trine_sep_opt(const Tolerances &tol) {
    (void)tol;
    // Largest scale of a PSD direction (1, beta, gamma) with orbit sum <= I; zero if not PSD.
    auto scale_of = [](double beta, double gamma) {
        Matrix dir = double_trine_element(1, beta, gamma);
        if (psd_margin(dir) < -1e-12) {
            return 0.0;
        }
        return 1 / max_eigenvalue(double_trine_orbit_sum(dir));
    };
    std::vector<BranchOptimum> branches;

    // (i) a = 3c: search b / a.
    double beta = golden_max([&](double x) { return scale_of(x, 1.0 / 3); }, 0.0, 1.0);
    double ai = scale_of(beta, 1.0 / 3);
    branches.push_back(finish_branch("a=3c", ai, beta * ai, ai / 3));

    // (ii) 12 b^2 = (a + 3c)^2: locate the PSD point on the curve, then scale to the sum bound.
    auto b_of = [](double r) { return (1 + 3 * r) / std::sqrt(12.0); };
    double r = golden_max([&](double x) { return psd_margin(double_trine_element(1, b_of(x), x)); }, 0.0, 1.0);
    double aii = psd_margin(double_trine_element(1, b_of(r), r)) >= -1e-9
                     ? 1 / max_eigenvalue(double_trine_orbit_sum(double_trine_element(1, b_of(r), r)))
                     : 0.0;
    branches.push_back(finish_branch("12b^2=(a+3c)^2", aii, b_of(r) * aii, r * aii));

    SymmetricSepSolution s;
    const BranchOptimum *win = nullptr;
    for (const auto &br : branches) {
        if (br.omega_separable && br.pi_concurrence <= 1e-8 && (!win || br.a > win->a)) {
            win = &br;
        }
    }
    if (!win) {
        throw UnambiguousError("no separable branch optimum found");
    }
    s.a = win->a;
    s.b = win->b;
    s.c = win->c;
    s.branch = win->name;
    s.conclusive = s.a;
    s.pi_eigs = double_trine_pi_eigs(s.a, s.b, s.c);
    s.sum_eigs = double_trine_sum_eigs(s.a, s.b, s.c);
    s.omega_t = double_trine_omega_t(s.a, s.b, s.c);
    s.pi_concurrence = win->pi_concurrence;
    s.omega_concurrence = win->omega_concurrence;
    s.branches = branches;
    return s;
}

DoubleTrineGrid double_trine_grid_oracle(size_t resolution, bool parallel) {
    if (resolution < 2) {
        throw UnambiguousError("grid resolution must be at least 2");
    }
    const double h = 1.0 / static_cast<double>(resolution - 1);
    const size_t n = resolution;
    auto abc = [&](size_t idx) {
        return std::array<double, 3>{static_cast<double>(idx / (n * n)) * h,
                                     static_cast<double>((idx / n) % n) * h, static_cast<double>(idx % n) * h};
    };
    auto eval = [&](size_t idx) -> std::optional<double> {
        auto [a, b, c] = abc(idx);
        if (double_trine_pi_eigs(a, b, c)[0] < -1e-12) {
            return std::nullopt;
        }
        if (double_trine_sum_eigs(a, b, c)[3] > 1 + 1e-12) {
            return std::nullopt;
        }
        if (std::abs(double_trine_sep_constraint(a, b, c)) > 1e-12) {
            return std::nullopt;
        }
        if (concurrence_from_t(double_trine_omega_t(a, b, c)) > 1e-9) {
            return std::nullopt;
        }
        return a;
    };
    size_t total = n * n * n;
    auto best = parallel ? kernels::omp::grid_argmax(total, eval) : kernels::serial::grid_argmax(total, eval);
    DoubleTrineGrid g;
    g.points = total;
    g.found = best.found;
    if (best.found) {
        auto [a, b, c] = abc(best.index);
        g.a = a;
        g.b = b;
        g.c = c;
    }
    return g;
}

}  // namespace qlocc
