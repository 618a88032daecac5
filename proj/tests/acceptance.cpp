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


// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "qlocc/kernels.hpp"
#include "qlocc/min_error.hpp"
#include "qlocc/trine.hpp"
#include "qlocc/unambiguous.hpp"
#include "test_util.hpp"

using namespace qlocc;
using namespace qlocc::testing;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail << " [violated: " << what << "]";
        }
    }
    template <class T>
    void note(const std::string &key, const T &value) {
        detail << " " << key << "=" << value;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Ensemble double_trine_ensemble() { return Ensemble::uniform(double_trine()); }

void ac1(Check &c) {
    auto t0 = std::chrono::steady_clock::now();
    Ensemble e = double_trine_ensemble();
    auto s = optimal_povm(e);
    c.require(s.certified, "optimum certified");
    auto dd = detection_decomposition(e, s);
    double sum = 0, worst = 0;
    for (const auto &k : dd.detection_states) {
        double con = concurrence_pure(k);
        sum += con;
        worst = std::max(worst, std::abs(con - 1.0 / 3));
    }
    double singlet = concurrence_pure(psi_minus());
    double secs = seconds_since(t0);
    c.note("max|C-1/3|", worst);
    c.note("sumC", sum);
    c.note("C(singlet)", singlet);
    c.note("seconds", secs);
    c.require(worst <= 1e-5, "each concurrence 1/3 +- 1e-5");
    c.require(std::abs(sum - 1) <= 1e-5 && std::abs(sum - singlet) <= 1e-5, "sum = 1 = C(singlet)");
    c.require(secs < 5, "runtime < 5 s");
}

void ac2(Check &c) {
    auto n = nwoe_product_criterion(double_trine_ensemble());
    double dl = 0, dr = 0;
    for (int i = 0; i < 3; i++) {
        dl = std::max(dl, std::abs(n.scaled_lhs[i] - 0.25));
        dr = std::max(dr, std::abs(n.scaled_rhs[i] - 0.125));
    }
    c.note("max|lhs-1/4|", dl);
    c.note("max|rhs-1/8|", dr);
    c.note("triggers", n.triggers);
    c.require(dl <= 1e-12 && dr <= 1e-12, "margins 1/4 and 1/8");
    c.require(n.triggers, "criterion triggers");
}

void ac3(Check &c) {
    double worst_overlap = 0, worst_cube = 0;
    for (int n = 2; n <= 10; n++) {
        TrineFamily f = trine_family(n);
        double expect = std::pow(-0.5, n);
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                if (i != j) worst_overlap = std::max(worst_overlap, std::abs(inner(f.states[i], f.states[j]) - expect));
            }
        }
        // (U^(x)N)^3 applied to every basis vector
        size_t dim = size_t{1} << n;
        for (size_t k = 0; k < dim; k++) {
            CVector v(dim, 0.0);
            v[k] = 1;
            CVector w = v;
            for (int r = 0; r < 3; r++) w = kernels::omp::apply_local_unitary(w, f.u, n);
            worst_cube = std::max(worst_cube, distance(w, v));
        }
    }
    c.note("max|overlap-(-1/2)^N|", worst_overlap);
    c.note("max||(U^N)^3 e_k - e_k||", worst_cube);
    c.require(worst_overlap <= 1e-10, "overlaps (-1/2)^N");
    c.require(worst_cube <= 1e-10, "(U^(x)N)^3 = I");
}

void ac4(Check &c) {
    double wk = 0, wo = 0, ws = 0, wg = 0;
    for (int n = 2; n <= 10; n++) {
        auto [iso, lt] = lift_iso(n);
        double kappa = 1 - std::pow(-0.5, n - 1);
        wk = std::max({wk, std::abs(iso.kappa - kappa), std::abs(iso.alpha - kappa / 3)});
        CVector s(iso.omegas[0].size(), 0.0);
        for (int i = 0; i < 3; i++) {
            s = axpy(1, iso.omegas[i], s);
            for (int j = 0; j < 3; j++) {
                if (i != j) wo = std::max(wo, std::abs(inner(iso.omegas[i], iso.omegas[j]) + 0.5));
            }
        }
        ws = std::max(ws, norm(s));
        TrineFamily f = trine_family(n);
        LiftedTrine l = lifted_trine(kappa / 3);
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                wg = std::max(wg, std::abs(inner(f.states[i], f.states[j]) - inner(l.states[i], l.states[j])));
            }
        }
    }
    c.note("max|kappa,alpha err|", wk);
    c.note("max|<w_i|w_j>+1/2|", wo);
    c.note("max||sum w||", ws);
    c.note("max gram diff", wg);
    c.require(wk <= 1e-12, "kappa and alpha closed forms");
    c.require(wo <= 1e-10, "omega overlaps -1/2");
    c.require(ws <= 1e-9, "omegas sum to zero");
    c.require(wg <= 1e-10, "gram matrices match");
}

void ac5(Check &c) {
    double wd = 0, wf = 0, wres = 0;
    for (int n = 2; n <= 10; n++) {
        double kappa = 1 - std::pow(-0.5, n - 1);
        double formula = std::pow(std::sqrt(2.0 / 3) * std::sqrt(1 - kappa / 3) + std::sqrt(1.0 / 3) * std::sqrt(kappa / 3), 2);
        LiftedTrine l = lifted_trine(kappa / 3);
        Ensemble e = Ensemble::from_kets(l.states, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {3});
        Povm m = pgm(e);
        double p = success_probability(e, m);
        wd = std::max(wd, std::abs(p - formula));
        wf = std::max(wf, std::abs(pgm_success(n) - formula));
        wres = std::min(wres, holevo_certificate(e, m).worst_min_eig());
    }
    c.note("max|P_lifted-formula|", wd);
    c.note("max|P_family-formula|", wf);
    c.note("min Holevo residual", wres);
    c.require(wd <= 1e-10 && wf <= 1e-10, "success matches the closed form");
    c.require(wres >= -1e-9, "Holevo residuals >= -1e-9");
}

void ac6(Check &c) {
    auto ex = elimination_exact(2);
    auto mc = elimination_monte_carlo(2, 1000000, 2026);
    double z = (mc.inconclusive - ex.inconclusive) / mc.standard_error;
    std::string note = elimination_annotation(2);
    bool mono = true;
    double prev = 0, last = 0;
    for (int n = 2; n <= 20; n++) {
        double p = elimination_exact(n).conclusive;
        mono = mono && p > prev && std::abs(p - (1 - std::pow(0.5, n - 1))) <= 1e-15;
        prev = last = p;
    }
    double enum_gap = 0;
    for (int n = 2; n <= 8; n++) enum_gap = std::max(enum_gap, std::abs(elimination_enumerated(n) - elimination_exact(n).inconclusive));
    c.note("exact", ex.inconclusive);
    c.note("mc", mc.inconclusive);
    c.note("z", z);
    c.note("conclusive(20)", last);
    c.note("enumeration gap", enum_gap);
    c.require(std::abs(ex.inconclusive - 0.5) <= 1e-15, "exact inconclusive 1/2 at N=2");
    c.require(std::abs(z) <= 3, "Monte Carlo within 3 sigma");
    c.require(note.find("(1/3)^N") != std::string::npos && note.find("(1/2)^(N-1)") != std::string::npos,
              "annotation names both figures");
    c.require(mono && 1 - last < 1e-5, "conclusive increases to 1");
    c.require(enum_gap <= 1e-12, "string enumeration agrees");
}

void ac7(Check &c) {
    auto t0 = std::chrono::steady_clock::now();
    Ensemble e = double_trine_ensemble();
    auto g = global_unambiguous_opt(e);
    auto gg = unambiguous_grid_oracle(e, 1e-3);
    auto pe = double_trine_pi_eigs(0.75, 0, 0);
    auto se = double_trine_sum_eigs(0.75, 0, 0);
    bool global_point = pe[0] >= -1e-12 && *std::max_element(se.begin(), se.end()) <= 1 + 1e-9;
    auto s = double_trine_sep_opt();
    const BranchOptimum *b2 = nullptr;
    for (const auto &b : s.branches) {
        if (b.name == "12b^2=(a+3c)^2") b2 = &b;
    }
    auto grid = double_trine_grid_oracle(200);
    // Omega t-values: closed form against the Wootters spectrum of the operator itself
    Matrix omega = Matrix::identity(4) - double_trine_orbit_sum(double_trine_element(s.a, s.b, s.c));
    auto ts = wootters_spectrum(omega);
    std::array<double, 4> tc = s.omega_t;
    std::sort(tc.begin(), tc.end(), std::greater<>());
    std::array<double, 4> want{4.0 / 9, 1.0 / 9, 1.0 / 9, 0};
    double tdiff = 0, tspec = 0;
    for (int k = 0; k < 4; k++) {
        tdiff = std::max(tdiff, std::abs(tc[k] - want[k]));
        tspec = std::max(tspec, std::abs(ts[k] - want[k]));
    }
    double secs = seconds_since(t0);
    c.note("global", g.conclusive);
    c.note("global_grid", gg.best);
    c.note("sep", s.conclusive);
    c.note("(a,b,c)", "(" + std::to_string(s.a) + "," + std::to_string(s.b) + "," + std::to_string(s.c) + ")");
    if (b2) c.note("branch2", "(" + std::to_string(b2->a) + "," + std::to_string(b2->b) + "," + std::to_string(b2->c) + ")");
    c.note("grid", "(" + std::to_string(grid.a) + "," + std::to_string(grid.b) + "," + std::to_string(grid.c) + ")");
    c.note("C(Omega)", s.omega_concurrence);
    c.note("max|t-t*|", std::max(tdiff, tspec));
    c.note("seconds", secs);
    c.require(std::abs(g.conclusive - 0.75) <= 1e-4, "global 3/4");
    c.require(gg.best <= g.conclusive + 1e-4, "no grid point beats the optimizer");
    c.require(global_point, "(3/4, 0, 0) feasible");
    c.require(std::abs(s.conclusive - 0.5) <= 1e-4, "SEP 1/2");
    c.require(std::abs(s.a - 0.5) <= 1e-3 && std::abs(s.b) <= 1e-3 && std::abs(s.c - 1.0 / 6) <= 1e-3,
              "SEP optimum at (1/2, 0, 1/6)");
    c.require(b2 && std::abs(b2->a - 0.375) <= 1e-3 && std::abs(b2->b - std::sqrt(3.0) / 8) <= 1e-3 &&
                  std::abs(b2->c - 0.125) <= 1e-3,
              "branch (ii) at (3/8, sqrt3/8, 1/8)");
    c.require(grid.found && std::abs(grid.a - 0.5) <= 0.01 && std::abs(grid.b) <= 0.01 && std::abs(grid.c - 1.0 / 6) <= 0.01,
              "grid oracle near the SEP optimum");
    c.require(s.omega_concurrence <= 1e-6, "Omega separable");
    c.require(tdiff <= 1e-6 && tspec <= 1e-6, "t-values (4/9, 0, 1/9, 1/9)");
    c.require(secs < 30, "runtime < 30 s");
}

void ac8(Check &c) {
    const double r = std::numbers::sqrt2 / 2;
    Ensemble e = Ensemble::uniform({{r, 0, 0, r}, {r, 0, 0, -r}, {0, r, r, 0}});
    auto b = symmetric_sep_bound(e);
    auto g = global_unambiguous_opt(e);
    c.note("applicable", b.applicable);
    c.note("bound", b.bound ? *b.bound : -1);
    c.note("global", g.conclusive);
    c.require(b.applicable && b.bound && std::abs(*b.bound - 1.0 / 3) <= 1e-9, "bound 1/3");
    c.require(std::abs(g.conclusive - 1) <= 1e-9, "global 1");
}

void ac9(Check &c) {
    Ensemble a = Ensemble::uniform({product_ket("00"), product_ket("0+"), product_ket("+0"), product_ket("++")});
    auto fa = locc_unambiguous_feasible(a);
    auto da = dual_states(a);
    std::vector<CVector> want{product_ket("--"), product_ket("-1"), product_ket("1-"), product_ket("11")};
    double dd = 0;
    for (int i = 0; i < 4; i++) dd = std::max(dd, ray_distance(normalized(da.duals[i]), want[i]));
    Ensemble b = Ensemble::uniform({product_ket("00"), product_ket("0+"), product_ket("+0"), product_ket("11")});
    auto fb = locc_unambiguous_feasible(b);
    double cmax = 0;
    for (double x : fb.complement_concurrence) cmax = std::max(cmax, x);
    c.note("feasible(product-dual quartet)", fa.feasible);
    c.note("max dual distance", dd);
    c.note("feasible(entangled-complement quartet)", fb.feasible);
    c.note("complement C", cmax);
    c.require(fa.feasible && dd <= 1e-9, "product-dual quartet feasible with exact duals");
    c.require(!fb.feasible, "second quartet infeasible");
    c.require(std::abs(cmax - 2.0 / 3) <= 1e-9 && cmax > 0, "entangled complement, C = 2/3");
}

void ac10(Check &c) {
    auto t0 = std::chrono::steady_clock::now();
    auto s = random_survey(1000, 7);
    double secs = seconds_since(t0);
    c.note("locc_optimal", s.locc_optimal);
    c.note("uncertified", s.uncertified);
    c.note("seconds", secs);
    c.require(s.locc_optimal == 0, "no LOCC-optimal ensemble");
    c.require(s.uncertified <= 10, "<= 1% uncertified");
    c.require(secs < 600, "runtime < 10 min");
}

void ac11(Check &c) {
    int good = 0;
    for (double t : {0.2, 0.5, std::numbers::pi / 4, 1.2}) {
        auto r = pure_vs_rank2_case(product_ket("00"), rho_theta(t), 0.5, 0.5);
        bool ok = r.rho_ppt && r.sep_optimal && !r.locc_optimal && r.cross_check_agrees;
        good += ok;
        c.require(ok, "theta=" + std::to_string(t));
    }
    c.note("cases passing", good);
}

void ac12(Check &c) {
    // PPT against concurrence
    int mismatch = 0, boundary = 0;
    for (uint64_t k = 0; k < 1000; k++) {
        Matrix rho = random_density(derive_seed(20260, k));
        bool ppt = ppt_separable(rho, 1e-9);
        double con = concurrence_operator(rho);
        if (ppt != (con <= 1e-7)) {
            if (con <= 1e-6 || std::abs(min_pt_eigenvalue(rho)) <= 1e-6) {
                boundary++;
            } else {
                mismatch++;
            }
        }
    }
    // Holevo certificates: residuals and tr(Lambda) = success on every certified optimum
    size_t certified = 0, cert_bad = 0;
    for (uint64_t k = 0; k < 200; k++) {
        size_t n = 3 + k % 2;
        auto e = random_ensemble(n, random_priors(n, derive_seed(k, 31)), derive_seed(k, 32));
        auto s = optimal_povm(e);
        if (!s.certified) continue;
        certified++;
        auto cert = holevo_certificate(e, s.povm);
        double tr = lambda_operator(e, s.povm).trace().real();
        if (!cert.passes() || std::abs(tr - s.success) > 1e-9) cert_bad++;
    }
    // uniqueness of the optimum across optimizer seeds
    double proj_gap = 0;
    for (uint64_t k = 0; k < 20; k++) {
        auto e = random_ensemble(3, random_priors(3, derive_seed(k, 41)), derive_seed(k, 42));
        OptimizerOptions a, b;
        a.seed = derive_seed(k, 43);
        b.seed = derive_seed(k, 44);
        auto da = detection_decomposition(e, optimal_povm(e, a));
        auto db = detection_decomposition(e, optimal_povm(e, b));
        for (size_t i = 0; i < 3; i++) proj_gap = std::max(proj_gap, (da.subspace_projectors[i] - db.subspace_projectors[i]).max_abs());
    }
    // tensor products
    int tensor_bad = 0;
    for (uint64_t k = 0; k < 50; k++) {
        auto a = random_ensemble(3, random_priors(3, derive_seed(k, 51)), derive_seed(k, 52));
        auto b = random_ensemble(2, random_priors(2, derive_seed(k, 53)), derive_seed(k, 54));
        auto t = tensor_optimal({a, b}, {optimal_povm(a), helstrom_two_state(b)});
        tensor_bad += !t.solution.certified;
    }
    c.note("ppt mismatches", mismatch);
    c.note("boundary", boundary);
    c.note("certified", certified);
    c.note("certificate failures", cert_bad);
    c.note("max projector gap", proj_gap);
    c.note("tensor failures", tensor_bad);
    c.require(mismatch == 0, "PPT matches concurrence");
    c.require(certified > 0 && cert_bad == 0, "Holevo certificates");
    c.require(proj_gap <= 1e-5, "optimum unique across seeds");
    c.require(tensor_bad == 0, "tensor certificates");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
        {"double trine minimum-error detection concurrences", ac1},
        {"product-state criterion on the double trine", ac2},
        {"trine family overlaps and cube", ac3},
        {"lifted-trine isomorphism", ac4},
        {"PGM success on the lifted trine", ac5},
        {"elimination protocol", ac6},
        {"double trine unambiguous: global, SEP, branches, Omega", ac7},
        {"symmetric Bell trio", ac8},
        {"LOCC unambiguous feasibility quartets", ac9},
        {"random survey against LOCC optimality", ac10},
        {"pure versus rank-2 family", ac11},
        {"property suites", ac12},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception &e) {
            c.ok = false;
            c.detail << " [exception: " << e.what() << "]";
        }
        failed += !c.ok;
        std::printf("[%s] %2zu %s:%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
