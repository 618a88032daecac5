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


#include "qlocc/trine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qlocc {

namespace {

const double kRoot3Half = std::sqrt(3.0) / 2;

void check_copies(int copies, int lo, int hi) {
    if (copies < lo || copies > hi) {
        throw TrineError("copies must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                         std::to_string(copies));
    }
}

CVector tensor_power(const CVector &v, int copies) {
    CVector out{1.0};
    for (int k = 0; k < copies; k++) {
        out = kron(out, v);
    }
    return out;
}

// -R(60), the phase-free part of U.
Matrix planar_step() { return Matrix(2, 2, {-0.5, kRoot3Half, -kRoot3Half, -0.5}); }

Matrix power(const Matrix &m, int k) {
    Matrix out = Matrix::identity(m.rows());
    for (int i = 0; i < k; i++) {
        out = m * out;
    }
    return out;
}

}  // namespace

double trine_kappa(int copies) { return 1 - std::pow(-0.5, copies - 1); }

double trine_overlap(int copies) { return std::pow(-0.5, copies); }

TrineFamily trine_family(int copies, bool parallel) {
    check_copies(copies, 1, kMaxTrineCopies);
    TrineFamily f;
    f.copies = copies;
    cplx phase = -std::polar(1.0, 2 * std::numbers::pi / copies);
    f.u = phase * Matrix(2, 2, {0.5, -kRoot3Half, kRoot3Half, 0.5});
    CVector v{1.0, 0.0};
    for (int i = 0; i < 3; i++) {
        f.states.push_back(tensor_power(v, copies));
        v = f.u * v;
    }
    Matrix cube = power(f.u, 3);
    cplx c = cube(0, 0);
    f.cube_residual = std::max((cube - c * Matrix::identity(2)).max_abs(), std::abs(std::pow(c, copies) - 1.0));
    for (int i = 0; i < 3; i++) {
        CVector moved = parallel ? kernels::omp::apply_local_unitary(f.states[i], f.u, copies)
                                 : kernels::serial::apply_local_unitary(f.states[i], f.u, copies);
        f.shift_residual = std::max(f.shift_residual, distance(moved, f.states[(i + 1) % 3]));
    }
    return f;
}

LiftedTrine lifted_trine(double alpha) {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw TrineError("lifting angle must lie in [0, 1]");
    }
    double r = std::sqrt(1 - alpha);
    double h = std::sqrt(alpha);
    return {alpha,
            {{r, 0.0, h}, {-0.5 * r, -kRoot3Half * r, h}, {-0.5 * r, kRoot3Half * r, h}}};
}

std::pair<IsoMap, LiftedTrine> lift_iso(int copies) {
    TrineFamily f = trine_family(copies);
    IsoMap iso;
    iso.kappa = trine_kappa(copies);
    iso.alpha = iso.kappa / 3;
    size_t dim = f.states[0].size();
    iso.z.assign(dim, 0.0);
    if (iso.kappa > 1e-12) {
        // N = 1 has no axis: the single-qubit trine sums to zero.
        for (const auto &s : f.states) {
            iso.z = axpy(1.0 / std::sqrt(3 * iso.kappa), s, iso.z);
        }
    }
    double w = std::sqrt(1 - iso.kappa / 3);
    for (const auto &s : f.states) {
        iso.omegas.push_back(scaled(1.0 / w, axpy(-inner(iso.z, s), iso.z, s)));
    }
    LiftedTrine lt = lifted_trine(iso.alpha);
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            double d = std::abs(inner(f.states[i], f.states[j]) - inner(lt.states[i], lt.states[j]));
            iso.gram_residual = std::max(iso.gram_residual, d);
        }
    }
    return {iso, lt};
}

Povm pgm(const Ensemble &e, double cutoff) {
    e.validate();
    Matrix r(e.dim(), e.dim());
    for (size_t i = 0; i < e.size(); i++) {
        r += e.priors[i] * e.states[i].matrix();
    }
    Matrix root = psd_power(r, -0.5, cutoff);
    Povm out;
    for (size_t i = 0; i < e.size(); i++) {
        out.elements.push_back((e.priors[i] * (root * e.states[i].matrix() * root)).hermitian_part());
    }
    out.rest = Matrix::identity(e.dim()) - support_projector(r, cutoff);
    return out;
}

std::vector<CVector> pgm_states(int copies) {
    check_copies(copies, 2, kMaxTrineCopies);
    auto [iso, lt] = lift_iso(copies);
    TrineFamily f = trine_family(copies);
    std::vector<CVector> out;
    for (int i = 0; i < 3; i++) {
        CVector fi = axpy(std::sqrt(2.0 / 3), iso.omegas[i], scaled(std::sqrt(1.0 / 3), iso.z));
        cplx ov = inner(fi, f.states[i]);
        out.push_back(scaled(ov / std::abs(ov), fi));
    }
    return out;
}

double pgm_success_closed_form(int copies) {
    double k = trine_kappa(copies);
    double a = std::sqrt(2.0 / 3) * std::sqrt(1 - k / 3) + std::sqrt(1.0 / 3) * std::sqrt(k / 3);
    return a * a;
}

double pgm_success(int copies) {
    auto fs = pgm_states(copies);
    TrineFamily f = trine_family(copies);
    double s = 0;
    for (int i = 0; i < 3; i++) {
        s += std::norm(inner(fs[i], f.states[i])) / 3;
    }
    return s;
}

double axis_residue_concurrence(int copies) {
    check_copies(copies, 2, kMaxTrineCopies);
    auto [iso, lt] = lift_iso(copies);
    CVector residue(4);
    for (size_t a = 0; a < 2; a++) {
        for (size_t b = 0; b < 2; b++) {
            residue[2 * a + b] = iso.z[(a << (copies - 1)) | (b << (copies - 2))];
        }
    }
    return concurrence_pure(normalized(residue));
}

kernels::OutcomeTable elimination_table() {
    Matrix v = planar_step();
    kernels::OutcomeTable t{};
    for (int j = 0; j < 3; j++) {
        CVector s = power(v, j) * CVector{1.0, 0.0};
        for (int i = 0; i < 3; i++) {
            CVector bar = power(v, i) * CVector{0.0, 1.0};
            t[j][i] = 2.0 / 3.0 * std::norm(inner(bar, s));
        }
    }
    return t;
}

EliminationResult elimination_exact(int copies) {
    if (copies < 2) {
        throw TrineError("elimination protocol needs at least 2 copies");
    }
    auto t = elimination_table();
    EliminationResult r;
    r.copies = copies;
    for (int j = 0; j < 3; j++) {
        for (int i = 0; i < 3; i++) {
            r.inconclusive += std::pow(t[j][i], copies) / 3;
        }
    }
    r.conclusive = 1 - r.inconclusive;
    r.reported_elsewhere = std::pow(1.0 / 3, copies);
    return r;
}

EliminationResult elimination_monte_carlo(int copies, uint64_t samples, uint64_t seed, bool parallel) {
    if (copies < 2) {
        throw TrineError("elimination protocol needs at least 2 copies");
    }
    if (samples == 0) {
        throw TrineError("monte carlo needs at least one sample");
    }
    auto t = elimination_table();
    std::array<double, 3> priors{1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto c = parallel ? kernels::omp::elimination_mc(copies, samples, seed, t, priors)
                      : kernels::serial::elimination_mc(copies, samples, seed, t, priors);
    EliminationResult r;
    r.copies = copies;
    r.sampled = true;
    r.samples = samples;
    r.seed = seed;
    r.inconclusive = static_cast<double>(c.inconclusive) / static_cast<double>(samples);
    r.conclusive = 1 - r.inconclusive;
    r.standard_error = std::sqrt(r.inconclusive * (1 - r.inconclusive) / static_cast<double>(samples));
    r.reported_elsewhere = std::pow(1.0 / 3, copies);
    return r;
}

double elimination_enumerated(int copies) {
    check_copies(copies, 2, kMaxTrineCopies);
    auto t = elimination_table();
    size_t strings = 1;
    for (int k = 0; k < copies; k++) {
        strings *= 3;
    }
    double conclusive = 0;
    for (size_t s = 0; s < strings; s++) {
        std::vector<int> digits;
        size_t x = s;
        for (int k = 0; k < copies; k++) {
            digits.push_back(static_cast<int>(x % 3));
            x /= 3;
        }
        bool same = std::all_of(digits.begin(), digits.end(), [&](int d) { return d == digits[0]; });
        if (same) {
            continue;
        }
        for (int j = 0; j < 3; j++) {
            double p = 1.0 / 3;
            for (int d : digits) {
                p *= t[j][d];
            }
            conclusive += p;
        }
    }
    return 1 - conclusive;
}

std::string elimination_annotation(int copies) {
    auto r = elimination_exact(copies);
    std::ostringstream os;
    os.precision(12);
    os << "all parties eliminate the same state with probability " << r.inconclusive
       << " = (1/2)^(N-1) by the Born rule; the figure (1/3)^N = " << r.reported_elsewhere
       << " would require each party's outcome to be uniform over all three results";
    return os.str();
}

}  // namespace qlocc
