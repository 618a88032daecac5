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

#include "qlocc/min_error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qlocc/kernels.hpp"
#include "qlocc/rng.hpp"

namespace qlocc {

namespace {

void require_compatible(const Ensemble &e, const Povm &povm) {
    if (povm.elements.size() != e.size()) {
        throw MinErrorError("POVM has " + std::to_string(povm.elements.size()) + " guessing elements for " +
                            std::to_string(e.size()) + " states");
    }
    if (povm.dim() != e.dim()) {
        throw MinErrorError("POVM dimension does not match the ensemble");
    }
}

void require_independent_pure(const Ensemble &e, const Tolerances &tol) {
    if (!e.is_pure()) {
        throw MinErrorError("expected an ensemble of pure states");
    }
    if (e.size() > e.dim()) {
        throw MinErrorError("more states than the space dimension: states are linearly dependent");
    }
    auto sv = singular_values(Matrix::from_columns(e.kets, e.dim()));
    if (sv.back() <= tol.independence) {
        std::ostringstream os;
        os << "states are linearly dependent (smallest singular value " << sv.back() << ")";
        throw MinErrorError(os.str());
    }
}

// Objective sum_i p_i |<w_i|c_i>|^2 over the columns of W.
double basis_objective(const Matrix &w, const Matrix &c, const std::vector<double> &p) {
    double f = 0;
    for (size_t i = 0; i < p.size(); i++) {
        f += p[i] * std::norm(inner(w.column(i), c.column(i)));
    }
    return f;
}

// One sweep of exact pairwise rotations: on span{w_p, w_q} the best orthonormal
// pair is the eigenbasis of p_p|x><x| - p_q|y><y|.
void rotation_sweep(Matrix &w, const Matrix &c, const std::vector<double> &p) {
    size_t n = p.size();
    for (size_t a = 0; a + 1 < n; a++) {
        for (size_t b = a + 1; b < n; b++) {
            CVector wa = w.column(a);
            CVector wb = w.column(b);
            CVector ca = c.column(a);
            CVector cb = c.column(b);
            CVector x{inner(wa, ca), inner(wb, ca)};
            CVector y{inner(wa, cb), inner(wb, cb)};
            Matrix m = p[a] * Matrix::projector(x) - p[b] * Matrix::projector(y);
            Eigensystem es = eig_hermitian(m);
            CVector u = es.vectors.column(1);
            CVector v = es.vectors.column(0);
            w.set_column(a, axpy(u[0], wa, scaled(u[1], wb)));
            w.set_column(b, axpy(v[0], wa, scaled(v[1], wb)));
        }
    }
}

OptimalSolution finish(const Ensemble &e, Povm povm, const Tolerances &tol) {
    OptimalSolution s;
    s.povm = std::move(povm);
    s.success = success_probability(e, s.povm);
    s.lambda = lambda_operator(e, s.povm);
    s.certificate = holevo_certificate(e, s.povm);
    s.certified = s.certificate.passes(tol.certificate);
    return s;
}

}  // namespace

double Certificate::worst_min_eig() const { return *std::min_element(min_eigs.begin(), min_eigs.end()); }

bool Certificate::passes(double floor, double herm_tol) const {
    return worst_min_eig() >= -floor && hermiticity_gap <= herm_tol;
}

double success_probability(const Ensemble &e, const Povm &povm) {
    require_compatible(e, povm);
    double s = 0;
    for (size_t i = 0; i < e.size(); i++) {
        s += e.priors[i] * (povm.elements[i] * e.states[i].matrix()).trace().real();
    }
    return s;
}

Matrix lambda_operator(const Ensemble &e, const Povm &povm) {
    require_compatible(e, povm);
    Matrix l(e.dim(), e.dim());
    for (size_t i = 0; i < e.size(); i++) {
        l += e.priors[i] * (povm.elements[i] * e.states[i].matrix());
    }
    return l;
}

Certificate holevo_certificate(const Ensemble &e, const Povm &povm) {
    Matrix l = lambda_operator(e, povm);
    Certificate c;
    c.hermiticity_gap = (l - l.adjoint()).max_abs();
    Matrix h = l.hermitian_part();
    for (size_t j = 0; j < e.size(); j++) {
        Matrix d = h - e.priors[j] * e.states[j].matrix();
        c.min_eigs.push_back(min_eigenvalue(d));
        c.complementarity.push_back((povm.elements[j] * (l - e.priors[j] * e.states[j].matrix())).max_abs());
    }
    return c;
}

Matrix span_projector(const Ensemble &e, double rank_tol) {
    Matrix sum(e.dim(), e.dim());
    for (const auto &s : e.states) {
        sum += s.matrix();
    }
    std::vector<CVector> vs;
    for (const auto &s : e.states) {
        auto b = support_basis(s.matrix(), rank_tol);
        vs.insert(vs.end(), b.begin(), b.end());
    }
    Matrix p(e.dim(), e.dim());
    for (const auto &v : orthonormal_basis(vs, 1e-10)) {
        p += Matrix::projector(v);
    }
    return p;
}

Povm merge_rest(const Povm &povm) {
    Povm out{povm.elements, std::nullopt};
    if (povm.rest) {
        out.elements.front() += *povm.rest;
    }
    return out;
}

OptimalSolution helstrom_two_state(const Ensemble &e, const Tolerances &tol) {
    e.validate();
    if (e.size() != 2) {
        throw MinErrorError("helstrom_two_state needs exactly two states");
    }
    Matrix d = e.priors[0] * e.states[0].matrix() - e.priors[1] * e.states[1].matrix();
    Matrix pos = support_projector(d, 0.0);
    Povm povm{{pos, Matrix::identity(e.dim()) - pos}, std::nullopt};
    return finish(e, povm, tol);
}

OptimalSolution optimal_povm(const Ensemble &e, const OptimizerOptions &opts, const Tolerances &tol) {
    e.validate();
    require_independent_pure(e, tol);
    size_t n = e.size();
    size_t d = e.dim();
    auto basis = orthonormal_basis(e.kets, 0.0);
    Matrix b = Matrix::from_columns(basis, d);
    Matrix c = b.adjoint() * Matrix::from_columns(e.kets, d);
    Matrix span(d, d);
    for (const auto &v : basis) {
        span += Matrix::projector(v);
    }

    OptimalSolution best;
    bool have_best = false;
    size_t restarts = std::max<size_t>(opts.restarts, 1);
    for (size_t r = 0; r < restarts; r++) {
        Matrix w = haar_unitary(n, derive_seed(opts.seed, r));
        double f = basis_objective(w, c, e.priors);
        for (size_t sweep = 0; sweep < opts.max_sweeps; sweep++) {
            rotation_sweep(w, c, e.priors);
            double g = basis_objective(w, c, e.priors);
            double gain = g - f;
            f = g;
            if (gain < opts.improvement_tol) {
                break;
            }
        }
        Povm povm;
        for (size_t i = 0; i < n; i++) {
            CVector phi = fix_phase(b * w.column(i));
            povm.elements.push_back(Matrix::projector(phi));
        }
        povm.rest = Matrix::identity(d) - span;
        OptimalSolution s = finish(e, povm, tol);
        s.restarts_used = r + 1;
        s.seed = opts.seed;
        if (!have_best || (s.certified && !best.certified) ||
            (s.certified == best.certified && s.success > best.success)) {
            best = s;
            have_best = true;
        }
        if (best.certified) {
            break;
        }
    }
    return best;
}

DetectionDecomposition detection_decomposition(const Ensemble &e, const OptimalSolution &sol, const Tolerances &tol) {
    DetectionDecomposition out;
    out.span_projector = span_projector(e, tol.rank);
    const Matrix &ys = out.span_projector;
    Matrix sum(e.dim(), e.dim());
    double worst = 0;
    for (size_t i = 0; i < e.size(); i++) {
        Matrix p = (ys * sol.povm.elements[i] * ys).hermitian_part();
        worst = std::max(worst, (p * p - p).max_abs());
        size_t want = state_rank(e.states[i].matrix(), tol.rank);
        size_t got = state_rank(p, 1e-6);
        if (got != want) {
            throw MinErrorError("detection subspace " + std::to_string(i) + " has rank " + std::to_string(got) +
                                ", state has rank " + std::to_string(want));
        }
        out.subspace_projectors.push_back(p);
        sum += p;
    }
    for (size_t i = 0; i < e.size(); i++) {
        for (size_t j = i + 1; j < e.size(); j++) {
            worst = std::max(worst, (out.subspace_projectors[i] * out.subspace_projectors[j]).max_abs());
        }
    }
    worst = std::max(worst, (sum - ys).max_abs());
    out.max_invariant_residual = worst;
    if (worst > 1e-7) {
        std::ostringstream os;
        os << "detection decomposition invariants violated (residual " << worst << ")";
        throw MinErrorError(os.str());
    }
    if (e.is_pure()) {
        for (const auto &p : out.subspace_projectors) {
            out.detection_states.push_back(fix_phase(support_basis(p, 0.5).front()));
        }
    }
    return out;
}

LoccOptimality locc_optimality_test(const Ensemble &e, const OptimizerOptions &opts, const Tolerances &tol) {
    if (e.size() != 3 && e.size() != 4) {
        throw MinErrorError("locc_optimality_test needs 3 or 4 states, got " + std::to_string(e.size()));
    }
    if (e.dims() != PartyDims{2, 2}) {
        throw MinErrorError("locc_optimality_test is defined for two-qubit ensembles");
    }
    LoccOptimality out;
    out.solution = optimal_povm(e, opts, tol);
    auto dd = detection_decomposition(e, out.solution, tol);
    out.detection_states = dd.detection_states;
    for (const auto &phi : dd.detection_states) {
        double c = concurrence_pure(phi);
        out.concurrences.push_back(c);
        out.product_count += c <= tol.product ? 1 : 0;
    }
    out.locc_optimal = e.size() == 3 ? out.product_count >= 2 : out.product_count == 4;
    return out;
}

NwoeResult nwoe_product_criterion(const Ensemble &e, const Tolerances &tol) {
    if (e.size() != 3 || !e.is_pure() || e.dims() != PartyDims{2, 2}) {
        throw MinErrorError("nwoe_product_criterion needs three two-qubit pure states");
    }
    for (size_t i = 0; i < 3; i++) {
        if (!(e.priors[i] > 0)) {
            throw MinErrorError("nwoe_product_criterion needs positive priors");
        }
        double c = concurrence_pure(e.kets[i]);
        if (c > tol.product) {
            std::ostringstream os;
            os << "state " << i << " is not a product state (concurrence " << c << ")";
            throw MinErrorError(os.str());
        }
    }
    require_independent_pure(e, tol);
    NwoeResult r;
    r.complement = fix_phase(complement_basis(e.kets, 4).front());
    r.lambda_min = schmidt_lambda_min(r.complement);
    r.triggers = true;
    for (size_t i = 0; i < 3; i++) {
        size_t j = (i + 1) % 3;
        size_t k = (i + 2) % 3;
        const auto &p = e.priors;
        r.lhs[i] = p[i] * p[i] * r.lambda_min * r.lambda_min;
        r.rhs[i] = p[j] * p[j] * std::norm(inner(e.kets[i], e.kets[j])) +
                   p[k] * p[k] * std::norm(inner(e.kets[i], e.kets[k]));
        r.margins[i] = r.lhs[i] - r.rhs[i];
        r.scaled_lhs[i] = r.lhs[i] / (p[i] * p[i]);
        r.scaled_rhs[i] = r.rhs[i] / (p[i] * p[i]);
        r.triggers = r.triggers && r.margins[i] > 0;
    }
    return r;
}

PureVsRank2 pure_vs_rank2_case(const CVector &psi, const Matrix &rho, double p_psi, double p_rho,
                               const Tolerances &tol) {
    PureVsRank2 out;
    DensityMatrix rho_dm(rho);
    CVector psi_n = normalized(psi);
    if (state_rank(rho_dm.matrix(), tol.rank) != 2) {
        throw MinErrorError("pure_vs_rank2_case needs a rank-2 mixed state");
    }
    if (std::abs(p_psi + p_rho - 1.0) > 1e-12 || p_psi < 0 || p_rho < 0) {
        throw MinErrorError("priors must be nonnegative and sum to 1");
    }
    out.rho_ppt = ppt_separable(rho_dm.matrix(), tol.separable);
    if (p_psi == 0 || p_rho == 0) {
        // Always guess the state that occurs.
        out.trivial = true;
        out.sep_optimal = out.locc_optimal = true;
        out.sep_cross = out.locc_cross = true;
        out.cross_check_agrees = true;
        out.success = 1.0;
        out.sep_measurement_success = 1.0;
        return out;
    }
    Ensemble pair = Ensemble::from_states({DensityMatrix::from_pure(psi_n), rho_dm}, {p_psi, p_rho});
    OptimalSolution helstrom = helstrom_two_state(pair, tol);
    out.success = helstrom.success;

    // Restrict p_rho rho - p_psi |psi><psi| to S = span{psi, supp rho}.
    std::vector<CVector> gens{psi_n};
    for (const auto &v : support_basis(rho_dm.matrix(), tol.rank)) {
        gens.push_back(v);
    }
    auto s_basis = orthonormal_basis(gens, 1e-8);
    if (s_basis.size() != 3) {
        throw MinErrorError("pure state lies in the support of the rank-2 state; span is not 3-dimensional");
    }
    Matrix b = Matrix::from_columns(s_basis, 4);
    Matrix delta = p_rho * rho_dm.matrix() - p_psi * Matrix::projector(psi_n);
    Eigensystem es = eig_hermitian(b.adjoint() * delta * b);
    std::vector<CVector> pos;
    std::vector<CVector> neg;
    for (size_t k = 0; k < 3; k++) {
        CVector v = b * es.vectors.column(k);
        if (std::abs(es.values[k]) < 1e-9) {
            out.degenerate = true;
        }
        (es.values[k] < -1e-9 ? neg : pos).push_back(v);
    }
    if (neg.size() != 1 || pos.size() != 2) {
        throw MinErrorError("unexpected inertia of p_rho rho - p_psi |psi><psi| on the span (" +
                            std::to_string(pos.size()) + " positive, " + std::to_string(neg.size()) + " negative)");
    }
    out.negative_state = fix_phase(neg[0]);
    out.positive_projector = Matrix::projector(pos[0]) + Matrix::projector(pos[1]);
    out.reduced_pair =
        Ensemble::from_states({DensityMatrix::from_pure(out.negative_state), DensityMatrix(0.5 * out.positive_projector)},
                              {0.5, 0.5});
    out.verdict = classify(*out.reduced_pair, tol);
    out.sep_optimal = out.verdict->sep;
    out.locc_optimal = out.verdict->locc;

    // Independent route. LOCC: an orthogonal product basis for the support of the
    // projected rho element exists iff its projector is PPT.
    bool n_product = concurrence_pure(out.negative_state) <= tol.product;
    out.locc_cross = n_product || ppt_separable(out.positive_projector, tol.separable);
    // SEP: build {E, I - E} explicitly, check PPT of both and that it attains the optimum.
    CVector phi = complement_basis(s_basis, 4).front();
    Matrix e_elem;
    bool elements_ok = false;
    if (n_product) {
        e_elem = Matrix::projector(out.negative_state);
        elements_ok = true;
    } else if (concurrence_pure(phi) > tol.product) {
        auto m = pair_sep_measurement(out.negative_state, phi);
        e_elem = m.povm.elements[0];
        elements_ok = m.pt_min_first >= -tol.separable && m.pt_min_second >= -tol.separable &&
                      m.psd_min_second >= -tol.psd;
    }
    if (elements_ok) {
        Povm sep{{e_elem, Matrix::identity(4) - e_elem}, std::nullopt};
        out.sep_measurement_success = success_probability(pair, sep);
        out.sep_cross = std::abs(out.sep_measurement_success - out.success) <= 1e-9 &&
                        ppt_separable(sep.elements[1], tol.separable);
    }
    out.cross_check_agrees = out.sep_cross == out.sep_optimal && out.locc_cross == out.locc_optimal;
    return out;
}

TensorSolution tensor_optimal(const std::vector<Ensemble> &factors, const std::vector<OptimalSolution> &solutions,
                              const Tolerances &tol) {
    if (factors.empty() || factors.size() != solutions.size()) {
        throw MinErrorError("tensor_optimal needs one solution per factor");
    }
    size_t dim = 1;
    for (size_t f = 0; f < factors.size(); f++) {
        if (!solutions[f].certified) {
            throw MinErrorError("tensor_optimal: factor " + std::to_string(f) + " is not certified");
        }
        dim *= factors[f].dim();
        if (dim > 256) {
            throw MinErrorError("tensor_optimal: product dimension exceeds 256");
        }
    }
    std::vector<Matrix> states{Matrix::identity(1)};
    std::vector<Matrix> elems{Matrix::identity(1)};
    std::vector<double> priors{1.0};
    PartyDims dims;
    for (size_t f = 0; f < factors.size(); f++) {
        Povm p = merge_rest(solutions[f].povm);
        std::vector<Matrix> ns;
        std::vector<Matrix> ne;
        std::vector<double> np;
        for (size_t a = 0; a < states.size(); a++) {
            for (size_t i = 0; i < factors[f].size(); i++) {
                ns.push_back(kron(states[a], factors[f].states[i].matrix()));
                ne.push_back(kron(elems[a], p.elements[i]));
                np.push_back(priors[a] * factors[f].priors[i]);
            }
        }
        states = std::move(ns);
        elems = std::move(ne);
        priors = std::move(np);
        dims.insert(dims.end(), factors[f].dims().begin(), factors[f].dims().end());
    }
    double total = std::accumulate(priors.begin(), priors.end(), 0.0);
    for (auto &p : priors) {
        p /= total;
    }
    std::vector<DensityMatrix> dms;
    for (const auto &s : states) {
        dms.emplace_back(s, dims);
    }
    TensorSolution out{Ensemble::from_states(std::move(dms), priors), {}};
    out.solution = finish(out.ensemble, Povm{elems, std::nullopt}, tol);
    return out;
}

SurveyResult random_survey(size_t trials, uint64_t seed, std::optional<std::vector<double>> priors,
                           const OptimizerOptions &opts, const Tolerances &tol, bool parallel) {
    if (trials == 0) {
        throw MinErrorError("random_survey needs at least one trial");
    }
    if (priors && priors->size() != 3) {
        throw MinErrorError("random_survey priors must have three entries");
    }
    SurveyResult out;
    out.trials = trials;
    out.per_trial.resize(trials);
    auto trial = [&](size_t t) {
        uint64_t ts = derive_seed(seed, t);
        auto p = priors ? *priors : random_priors(3, derive_seed(ts, 99));
        Ensemble e = random_ensemble(3, p, ts);
        OptimizerOptions o = opts;
        o.seed = derive_seed(ts, 100);
        auto r = locc_optimality_test(e, o, tol);
        SurveyTrial st;
        st.certified = r.solution.certified;
        st.locc_optimal = r.locc_optimal;
        st.product_count = r.product_count;
        st.min_concurrence = *std::min_element(r.concurrences.begin(), r.concurrences.end());
        st.success = r.solution.success;
        out.per_trial[t] = st;
    };
    if (parallel) {
        kernels::omp::for_each_index(trials, trial);
    } else {
        kernels::serial::for_each_index(trials, trial);
    }
    out.histogram.assign(20, 0);
    for (const auto &t : out.per_trial) {
        if (!t.certified) {
            out.uncertified++;
        }
        if (t.locc_optimal) {
            out.locc_optimal++;
        }
        if (t.min_concurrence > 1e-4) {
            out.min_concurrence_above_1e4++;
        }
        size_t bin = std::min<size_t>(19, static_cast<size_t>(t.min_concurrence * 20));
        out.histogram[bin]++;
    }
    out.fraction_locc_optimal = static_cast<double>(out.locc_optimal) / static_cast<double>(trials);
    return out;
}

}  // namespace qlocc
