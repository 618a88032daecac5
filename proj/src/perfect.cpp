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

#include "qlocc/perfect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlocc {

namespace {

const std::vector<std::vector<size_t>> kClasses = {{1, 1}, {1, 1, 1}, {1, 1, 1, 1}, {1, 2},
                                                   {1, 3}, {1, 1, 2}, {2, 2}};

std::string profile_string(const std::vector<size_t> &p) {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < p.size(); k++) {
        os << (k ? "," : "") << p[k];
    }
    os << "}";
    return os.str();
}

StateWitness witness_for(const DensityMatrix &rho, const Tolerances &tol) {
    if (rho.dims() != PartyDims{2, 2}) {
        throw PerfectError("perfect discrimination is implemented for two-qubit states only");
    }
    StateWitness w;
    const Matrix &m = rho.matrix();
    w.rank = state_rank(m, tol.rank);
    auto support = support_basis(m, tol.rank);
    switch (w.rank) {
        case 1: {
            double c = concurrence_pure(support[0]);
            w.concurrence = c;
            w.sch_perp = c <= tol.product ? 1 : 2;
            break;
        }
        case 2: {
            Matrix p = Matrix::projector(support[0]) + Matrix::projector(support[1]);
            double pt = min_pt_eigenvalue(p);
            w.support_pt_min = pt;
            w.sch_perp = pt >= -tol.separable ? 2 : 3;
            break;
        }
        case 3: {
            CVector phi = complement_basis(support, 4).front();
            double c = concurrence_pure(phi);
            w.complement_concurrence = c;
            w.sch_perp = c <= tol.product ? 3 : 4;
            break;
        }
        default:
            w.sch_perp = 4;
    }
    return w;
}

std::vector<CVector> all_support(const Ensemble &e, const Tolerances &tol) {
    std::vector<CVector> vs;
    for (const auto &s : e.states) {
        auto b = support_basis(s.matrix(), tol.rank);
        vs.insert(vs.end(), b.begin(), b.end());
    }
    return vs;
}

AntiparallelTest against_complement(const CVector &psi, const CVector &phi) {
    return antiparallel_test(matrix_rep(psi) * inverse(matrix_rep(phi)));
}

}  // namespace

size_t schmidt_rank_perp(const DensityMatrix &rho, const Tolerances &tol) { return witness_for(rho, tol).sch_perp; }

double max_pairwise_overlap(const Ensemble &e) {
    double m = 0;
    for (size_t i = 0; i < e.size(); i++) {
        for (size_t j = i + 1; j < e.size(); j++) {
            m = std::max(m, std::abs((e.states[i].matrix() * e.states[j].matrix()).trace()));
        }
    }
    return m;
}

std::vector<size_t> rank_profile(const Ensemble &e, const Tolerances &tol) {
    std::vector<size_t> p;
    for (const auto &s : e.states) {
        p.push_back(state_rank(s.matrix(), tol.rank));
    }
    std::sort(p.begin(), p.end());
    return p;
}

PerfectVerdict classify(const Ensemble &e, const Tolerances &tol) {
    e.validate();
    if (e.size() < 2) {
        throw PerfectError("perfect discrimination needs at least two states");
    }
    if (e.dims() != PartyDims{2, 2}) {
        throw PerfectError("perfect discrimination is implemented for two-qubit states only");
    }
    PerfectVerdict v;
    v.max_overlap = max_pairwise_overlap(e);
    if (v.max_overlap > tol.orthogonality) {
        std::ostringstream os;
        os << "states are not pairwise orthogonal: max tr[rho_i rho_j] = " << v.max_overlap;
        throw PerfectError(os.str());
    }
    for (const auto &s : e.states) {
        v.states.push_back(witness_for(s, tol));
        v.sch_perp_sum += v.states.back().sch_perp;
    }
    v.profile = rank_profile(e, tol);
    if (std::find(kClasses.begin(), kClasses.end(), v.profile) == kClasses.end()) {
        throw PerfectError("rank profile " + profile_string(v.profile) +
                           " is not one of the orthogonal two-qubit classes "
                           "{1,1} {1,1,1} {1,1,1,1} {1,2} {1,3} {1,1,2} {2,2}");
    }
    v.locc = v.sch_perp_sum <= 4;

    auto pure_product = [&](const StateWitness &w) { return w.rank != 1 || *w.concurrence <= tol.product; };
    const auto &p = v.profile;
    if (p == std::vector<size_t>{1, 1}) {
        v.sep = true;
    } else if (p == std::vector<size_t>{1, 1, 1, 1} || p == std::vector<size_t>{1, 3} ||
               p == std::vector<size_t>{1, 1, 2}) {
        v.sep = std::all_of(v.states.begin(), v.states.end(), pure_product);
    } else if (p == std::vector<size_t>{2, 2}) {
        v.sep = std::all_of(v.states.begin(), v.states.end(),
                            [&](const StateWitness &w) { return *w.support_pt_min >= -tol.separable; });
    } else {
        // {1,1,1} and {1,2}: compare against the complement |Phi>.
        CVector phi = fix_phase(complement_basis(all_support(e, tol), 4).front());
        double c_phi = concurrence_pure(phi);
        v.complement = phi;
        v.complement_concurrence = c_phi;
        bool antiparallel_all = true;
        double c_sum = 0;
        double c_psi = 0;
        for (size_t k = 0; k < e.size(); k++) {
            auto &w = v.states[k];
            if (w.rank != 1) {
                continue;
            }
            c_sum += *w.concurrence;
            c_psi = *w.concurrence;
            if (*w.concurrence <= tol.product) {
                continue;
            }
            if (c_phi <= tol.product) {
                antiparallel_all = false;
                continue;
            }
            auto psi = support_basis(e.states[k].matrix(), tol.rank).front();
            w.antiparallel = against_complement(psi, phi);
            antiparallel_all = antiparallel_all && w.antiparallel->antiparallel;
        }
        if (p == std::vector<size_t>{1, 1, 1}) {
            v.concurrence_sum = c_sum;
            v.sep = antiparallel_all && std::abs(c_sum - c_phi) <= tol.product;
            std::ostringstream os;
            os << "sum C(psi_i) - C(Phi) = " << (c_sum - c_phi);
            v.notes.push_back(os.str());
        } else {
            bool product = c_psi <= tol.product;
            v.sep = product || (antiparallel_all && c_psi <= c_phi + tol.product);
            std::ostringstream os;
            os << "C(Phi) - C(psi) = " << (c_phi - c_psi)
               << (product ? " (psi is product)"
                           : (antiparallel_all && std::abs(c_phi - c_psi) <= tol.product
                                  ? " (equality with antiparallel eigenvalues: LOCC form holds)"
                                  : ""));
            v.notes.push_back(os.str());
        }
    }
    if (v.locc && !v.sep) {
        throw std::logic_error("classify: LOCC verdict without SEP verdict for profile " + profile_string(p));
    }
    return v;
}

bool locc_perfect(const Ensemble &e, const Tolerances &tol) { return classify(e, tol).locc; }

bool sep_perfect(const Ensemble &e, const Tolerances &tol) { return classify(e, tol).sep; }

PairSepMeasurement pair_sep_measurement(const CVector &psi, const CVector &phi) {
    double c_phi = concurrence_pure(phi);
    if (c_phi <= 0) {
        throw PerfectError("pair_sep_measurement: complement state must be entangled");
    }
    PairSepMeasurement out;
    out.lambda = concurrence_pure(psi) / c_phi;
    Matrix e = Matrix::projector(psi) + out.lambda * Matrix::projector(phi);
    Matrix f = Matrix::identity(4) - e;
    out.povm.elements = {e, f};
    out.pt_min_first = min_pt_eigenvalue(e);
    out.pt_min_second = min_pt_eigenvalue(f);
    out.psd_min_second = min_eigenvalue(f);
    return out;
}

}  // namespace qlocc
