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


#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "qlocc/min_error.hpp"
#include "qlocc/trine.hpp"
#include "qlocc/unambiguous.hpp"
#include "test_util.hpp"

using namespace qlocc;
using namespace qlocc::testing;

namespace {

struct FrozenCase {
    Ensemble ensemble;
    double conclusive;
};

std::vector<FrozenCase> frozen_cases() {
    auto j = load_json(std::string(QLOCC_TEST_DATA) + "/random_cases.json");
    std::vector<FrozenCase> out;
    for (const auto &c : j["cases"]) {
        std::vector<CVector> kets;
        for (const auto &k : c["states"]) {
            kets.push_back(ket_from_json(k));
        }
        out.push_back({Ensemble::from_kets(kets, c["priors"].get<std::vector<double>>()),
                       c["unambiguous_conclusive"].get<double>()});
    }
    return out;
}

Ensemble bell_trio(std::vector<double> priors = {1.0 / 3, 1.0 / 3, 1.0 / 3}) {
    return Ensemble::from_kets({phi_plus(), phi_minus(), psi_plus()}, priors);
}

Ensemble quartet(bool local) {
    return Ensemble::uniform({product_ket("00"), product_ket("0+"), product_ket("+0"),
                              product_ket(local ? "++" : "11")});
}

double conclusive_rate(const Ensemble &e, const Povm &p, size_t i) {
    return (Matrix::projector(e.kets[i]) * p.elements[i]).trace().real();
}

}  // namespace

TEST(Duals, OrthonormalStatesAreSelfDual) {
    std::vector<CVector> kets{product_ket("00"), psi_plus(), psi_minus()};
    auto db = dual_states(Ensemble::uniform(kets));
    for (size_t i = 0; i < 3; i++) {
        EXPECT_LE(ray_distance(db.duals[i], kets[i]), 1e-12);
        EXPECT_NEAR(std::abs(db.overlaps[i]), 1.0, 1e-12);
    }
}

TEST(Duals, DoubleTrine) {
    auto db = dual_states(Ensemble::uniform(double_trine()));
    const double r10 = std::sqrt(10.0);
    EXPECT_LE(ray_distance(db.duals[0], CVector{3 / r10, 0.0, 0.0, -1 / r10}), 1e-12);
    // Partner of psi_1: orthogonal to psi_0 and psi_2.
    CVector d1{0.0, std::sqrt(0.3), std::sqrt(0.3), std::sqrt(0.4)};
    CVector d2{0.0, -std::sqrt(0.3), -std::sqrt(0.3), std::sqrt(0.4)};
    EXPECT_LE(ray_distance(db.duals[1], d1), 1e-12);
    EXPECT_LE(ray_distance(db.duals[2], d2), 1e-12);
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(std::norm(db.overlaps[i]), 0.9, 1e-12);
        EXPECT_NEAR(db.overlaps[i].imag(), 0.0, 1e-15);
    }
    // The duals share the ensemble's V symmetry.
    Matrix u = trine_family(2).u;
    Matrix v = kron(u, u);
    EXPECT_LE(ray_distance(v * db.duals[0], db.duals[1]), 1e-12);
}

TEST(Duals, RandomEnsemblesAreBiorthogonal) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        size_t n = 2 + seed % 3;
        auto e = random_ensemble(n, random_priors(n, seed), derive_seed(seed, 5));
        auto db = dual_states(e);
        EXPECT_LT(db.biorthogonality_residual, 1e-9);
        Matrix span = span_projector(e);
        for (const auto &d : db.duals) {
            EXPECT_LE(distance(span * d, d), 1e-10);
        }
    }
}

TEST(Duals, RejectsDependentStates) {
    auto a = random_pure_state(4, 3);
    auto b = random_pure_state(4, 4);
    EXPECT_THROW(dual_states(Ensemble::uniform({a, b, normalized(axpy(cplx(0.3), a, b))})), UnambiguousError);
}

TEST(LoccUnambiguousFeasible, LocalQuartet) {
    auto e = quartet(true);
    auto r = locc_unambiguous_feasible(e);
    EXPECT_TRUE(r.feasible);
    auto db = dual_states(e);
    std::vector<std::string> want{"--", "-1", "1-", "11"};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_LE(ray_distance(db.duals[i], product_ket(want[i])), 1e-12);
        ASSERT_TRUE(r.witnesses[i].has_value());
    }
}

TEST(LoccUnambiguousFeasible, NonlocalQuartet) {
    auto e = quartet(false);
    auto r = locc_unambiguous_feasible(e);
    EXPECT_FALSE(r.feasible);
    EXPECT_FALSE(r.witnesses[0].has_value());
    EXPECT_NEAR(r.complement_concurrence[0], 2.0 / 3.0, 1e-12);
    const double s = std::sqrt(1.0 / 3);
    auto db = dual_states(e);
    EXPECT_LE(ray_distance(db.duals[0], CVector{s, -s, -s, 0.0}), 1e-12);
    // The all-plus vector is not orthogonal to |0+>.
    EXPECT_GT(std::abs(inner(CVector{s, s, s, 0.0}, e.kets[1])), 0.5);
    for (size_t i = 1; i < 4; i++) {
        EXPECT_TRUE(r.witnesses[i].has_value());
    }
}

TEST(LoccUnambiguousFeasible, ThreeStatesAlwaysFeasible) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        auto e = random_ensemble(3, {1.0 / 3, 1.0 / 3, 1.0 / 3}, seed);
        auto r = locc_unambiguous_feasible(e);
        ASSERT_TRUE(r.feasible) << seed;
        for (size_t i = 0; i < 3; i++) {
            const auto &w = *r.witnesses[i];
            EXPECT_LE(concurrence_pure(w), 1e-7);
            EXPECT_GT(std::abs(inner(w, e.kets[i])), 1e-9);
            for (size_t j = 0; j < 3; j++) {
                if (j != i) {
                    EXPECT_LE(std::abs(inner(w, e.kets[j])), 1e-8);
                }
            }
        }
    }
}

TEST(LoccUnambiguousFeasible, RejectsSizes) {
    EXPECT_THROW(locc_unambiguous_feasible(Ensemble::uniform({product_ket("00"), product_ket("11")})),
                 UnambiguousError);
}

TEST(GlobalUnambiguous, OrthonormalStates) {
    auto s = global_unambiguous_opt(Ensemble::from_kets(
        {product_ket("00"), product_ket("01"), product_ket("10"), product_ket("11")}, {0.1, 0.2, 0.3, 0.4}));
    EXPECT_TRUE(s.certified);
    EXPECT_NEAR(s.inconclusive, 0.0, 1e-9);
}

TEST(GlobalUnambiguous, DoubleTrine) {
    auto s = global_unambiguous_opt(Ensemble::uniform(double_trine()));
    EXPECT_TRUE(s.certified);
    EXPECT_NEAR(s.conclusive, 0.75, 1e-9);
    for (double w : s.weights) {
        EXPECT_NEAR(w, 0.75, 1e-8);
    }
    EXPECT_GE(s.rest_min_eig, -1e-7);
    EXPECT_LE(s.zero_error_residual, 1e-9);
}

TEST(GlobalUnambiguous, FrozenRandomCases) {
    for (const auto &c : frozen_cases()) {
        auto s = global_unambiguous_opt(c.ensemble);
        EXPECT_TRUE(s.certified);
        EXPECT_NEAR(s.conclusive, c.conclusive, 1e-8);
        EXPECT_GE(s.dual_bound, s.conclusive - 1e-12);
        EXPECT_LE(s.gap, 1e-6);
        EXPECT_TRUE(s.povm.valid());
    }
}

TEST(GlobalUnambiguous, BellTrioIsPerfect) {
    auto s = global_unambiguous_opt(bell_trio());
    EXPECT_NEAR(s.conclusive, 1.0, 1e-9);
}

TEST(GlobalUnambiguous, MatchesGridOracle) {
    auto cases = frozen_cases();
    for (size_t k = 0; k < cases.size(); k++) {
        if (cases[k].ensemble.size() > 3) {
            continue;
        }
        auto s = global_unambiguous_opt(cases[k].ensemble);
        auto g = unambiguous_grid_oracle(cases[k].ensemble, 1e-3);
        EXPECT_LE(g.best, s.conclusive + 1e-4) << k;
        EXPECT_NEAR(g.best, s.conclusive, 1e-4) << k;
    }
    for (uint64_t seed = 0; seed < 3; seed++) {
        auto e = random_ensemble(3, random_priors(3, 70 + seed), 80 + seed);
        auto s = global_unambiguous_opt(e);
        auto g = unambiguous_grid_oracle(e, 1e-3);
        EXPECT_NEAR(g.best, s.conclusive, 1e-4) << seed;
    }
}

TEST(GlobalUnambiguous, GridBackendsAgree) {
    auto e = random_ensemble(3, {0.5, 0.3, 0.2}, 17);
    auto a = unambiguous_grid_oracle(e, 1e-2, true);
    auto b = unambiguous_grid_oracle(e, 1e-2, false);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.coefficients, b.coefficients);
}

TEST(Twirl, CovariantPovmIsFixed) {
    auto e = Ensemble::uniform(double_trine());
    Matrix u = trine_family(2).u;
    Matrix v = kron(u, u);
    auto s = global_unambiguous_opt(e);
    auto t = twirl_symmetrize(s.povm, v);
    for (size_t i = 0; i < 3; i++) {
        EXPECT_LE((t.elements[i] - s.povm.elements[i]).max_abs(), 1e-8);
    }
}

TEST(Twirl, EqualizesRatesAndKeepsValidity) {
    auto e = Ensemble::uniform(double_trine());
    Matrix u = trine_family(2).u;
    Matrix v = kron(u, u);
    auto db = dual_states(e);
    std::vector<double> coeff{0.6, 0.25, 0.05};
    Povm p;
    Matrix rest = Matrix::identity(4);
    for (size_t i = 0; i < 3; i++) {
        p.elements.push_back(coeff[i] * Matrix::projector(db.duals[i]));
        rest -= p.elements.back();
    }
    p.rest = rest;
    ASSERT_TRUE(p.valid());
    auto t = twirl_symmetrize(p, v);
    EXPECT_TRUE(t.valid());
    double before = 0;
    double after = 0;
    for (size_t i = 0; i < 3; i++) {
        before += conclusive_rate(e, p, i) / 3;
        after += conclusive_rate(e, t, i) / 3;
        EXPECT_NEAR(conclusive_rate(e, t, i), conclusive_rate(e, t, 0), 1e-12);
    }
    EXPECT_NEAR(before, after, 1e-10);
}

TEST(Twirl, RejectsBrokenSymmetry) {
    Matrix v = kron(haar_unitary(2, 3), haar_unitary(2, 4));
    Povm p{{Matrix::identity(4), Matrix(4, 4), Matrix(4, 4)}, std::nullopt};
    EXPECT_THROW(twirl_symmetrize(p, v), UnambiguousError);
}

TEST(SymmetricBound, BellTrio) {
    auto r = symmetric_sep_bound(bell_trio());
    EXPECT_TRUE(r.applicable);
    ASSERT_TRUE(r.bound.has_value());
    EXPECT_NEAR(*r.bound, 1.0 / 3, 1e-15);
}

TEST(SymmetricBound, DoubleTrineNotApplicable) {
    auto r = symmetric_sep_bound(Ensemble::uniform(double_trine()));
    EXPECT_FALSE(r.applicable);
    EXPECT_FALSE(r.bound.has_value());
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(r.dual_concurrence[i], 0.6, 1e-12);
        EXPECT_NEAR(r.overlap_sq[i], 0.9, 1e-12);
    }
}

TEST(SymmetricBound, PermutationInvariant) {
    auto a = symmetric_sep_bound(bell_trio({0.5, 0.3, 0.2}));
    auto b = symmetric_sep_bound(Ensemble::from_kets({psi_plus(), phi_plus(), phi_minus()}, {0.2, 0.5, 0.3}));
    EXPECT_EQ(a.applicable, b.applicable);
    EXPECT_EQ(*a.bound, *b.bound);
    EXPECT_NEAR(a.dual_concurrence[2], b.dual_concurrence[0], 1e-12);
}

TEST(SymmetricBound, RejectsAntisymmetric) {
    EXPECT_THROW(symmetric_sep_bound(Ensemble::uniform({phi_plus(), psi_minus(), psi_plus()})),
                 UnambiguousError);
}

TEST(ProductRays, ProductDual) {
    auto rays = sep_product_rays(product_ket("00"));
    for (const auto &r : rays) {
        EXPECT_LE(ray_distance(r, product_ket("00")), 1e-12);
    }
}

TEST(ProductRays, DoubleTrineDual) {
    auto db = dual_states(Ensemble::uniform(double_trine()));
    for (const auto &d : db.duals) {
        auto rays = sep_product_rays(d);
        auto oracle = product_states_in_span(d, psi_minus());
        ASSERT_EQ(oracle.states.size(), 2u);
        Matrix span = Matrix::projector(normalized(d)) + Matrix::projector(psi_minus());
        for (const auto &r : rays) {
            EXPECT_LE(concurrence_pure(r), 1e-8);
            EXPECT_LE(distance(span * r, r), 1e-12);
            double best = std::min(ray_distance(r, oracle.states[0]), ray_distance(r, oracle.states[1]));
            EXPECT_LE(best, 1e-8);
        }
        EXPECT_GT(ray_distance(rays[0], rays[1]), 0.1);
        // Coefficient on the normalized singlet has modulus sqrt(C(dual)).
        cplx t0 = inner(psi_minus(), rays[0]) / inner(d, rays[0]);
        EXPECT_NEAR(std::abs(t0), std::sqrt(concurrence_pure(d)), 1e-12);
    }
}

TEST(DoubleTrineSep, ClosedFormsMatchDirect) {
    SplitMix64 rng(31);
    for (int k = 0; k < 200; k++) {
        double a = 0.6 * rng.uniform();
        double b = 0.4 * (rng.uniform() - 0.5);
        double c = 0.3 * rng.uniform();
        Matrix pi = double_trine_element(a, b, c);
        auto ev = eigvals_hermitian(pi);
        auto pe = double_trine_pi_eigs(a, b, c);
        // Rank two: trace and second elementary symmetric sum fix the nonzero pair.
        double e1 = 0;
        double e2 = 0;
        for (int i = 0; i < 4; i++) {
            e1 += ev[i];
            for (int j = i + 1; j < 4; j++) {
                e2 += ev[i] * ev[j];
            }
        }
        EXPECT_NEAR(e1, pe[0] + pe[1], 1e-12);
        EXPECT_NEAR(e2, pe[0] * pe[1], 1e-12);
        auto se = eigvals_hermitian(double_trine_orbit_sum(pi));
        auto sf = double_trine_sum_eigs(a, b, c);
        for (int i = 0; i < 4; i++) {
            EXPECT_NEAR(se[i], sf[i], 1e-10);
        }
        Matrix omega = Matrix::identity(4) - double_trine_orbit_sum(pi);
        auto ws = wootters_spectrum(omega);
        auto tf = double_trine_omega_t(a, b, c);
        std::sort(tf.begin(), tf.end(), std::greater<>());
        if (min_eigenvalue(omega) > 1e-6) {
            for (int i = 0; i < 4; i++) {
                EXPECT_NEAR(ws[i], tf[i], 1e-9);
            }
        }
    }
}

TEST(DoubleTrineSep, SeparabilityConstraintTracksConcurrence) {
    SplitMix64 rng(32);
    for (int k = 0; k < 100; k++) {
        double a = 0.5 * rng.uniform();
        double c = 0.2 * rng.uniform();
        double bmax = std::sqrt(a * c);
        double b = bmax * rng.uniform();
        double cons = double_trine_sep_constraint(a, b, c);
        double conc = concurrence_operator(double_trine_element(a, b, c));
        EXPECT_EQ(std::abs(cons) < 1e-14, conc < 1e-8) << a << " " << b << " " << c;
    }
    EXPECT_LE(concurrence_operator(double_trine_element(0.3, 0.0, 0.1)), 1e-10);
    EXPECT_LE(concurrence_operator(double_trine_element(0.3, std::sqrt(0.03), 0.1)), 1e-8);
}

TEST(DoubleTrineSep, GlobalPointIsFeasible) {
    auto pe = double_trine_pi_eigs(0.75, 0, 0);
    auto se = double_trine_sum_eigs(0.75, 0, 0);
    EXPECT_GE(pe[0], 0);
    EXPECT_NEAR(se[3], 1.0, 1e-15);
    EXPECT_GT(concurrence_operator(double_trine_element(0.75, 0, 0)), 0.1);
}

TEST(DoubleTrineSep, Optimum) {
    auto s = double_trine_sep_opt();
    EXPECT_EQ(s.branch, "a=3c");
    EXPECT_NEAR(s.a, 0.5, 1e-6);
    EXPECT_NEAR(s.b, 0.0, 1e-6);
    EXPECT_NEAR(s.c, 1.0 / 6, 1e-6);
    EXPECT_NEAR(s.conclusive, 0.5, 1e-6);
    EXPECT_GE(s.pi_eigs[0], -1e-9);
    EXPECT_LE(s.sum_eigs[3], 1 + 1e-9);
    EXPECT_LE(s.omega_concurrence, 1e-6);
    EXPECT_NEAR(s.omega_t[0], 4.0 / 9, 1e-6);
    EXPECT_NEAR(s.omega_t[1], 0.0, 1e-6);
    EXPECT_NEAR(s.omega_t[2], 1.0 / 9, 1e-6);
    EXPECT_NEAR(s.omega_t[3], 1.0 / 9, 1e-6);
    ASSERT_EQ(s.branches.size(), 2u);
    const auto &ii = s.branches[1];
    EXPECT_NEAR(ii.a, 3.0 / 8, 1e-6);
    EXPECT_NEAR(ii.b, std::sqrt(3.0) / 8, 1e-6);
    EXPECT_NEAR(ii.c, 1.0 / 8, 1e-6);
    EXPECT_LE(ii.pi_concurrence, 1e-6);
}

TEST(DoubleTrineSep, LoccMatchesSep) {
    auto s = double_trine_sep_opt();
    EXPECT_NEAR(elimination_exact(2).conclusive, s.conclusive, 1e-6);
    EXPECT_LT(s.conclusive, global_unambiguous_opt(Ensemble::uniform(double_trine())).conclusive);
}

TEST(DoubleTrineSep, GridOracle) {
    auto start = std::chrono::steady_clock::now();
    auto g = double_trine_grid_oracle(200);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto s = double_trine_sep_opt();
    ASSERT_TRUE(g.found);
    EXPECT_LE(g.a, s.a + 1e-9);
    EXPECT_GE(g.a, s.a - 1.0 / 199);
    EXPECT_LT(secs, 30);
}

TEST(DoubleTrineSep, GridBackendsAgree) {
    auto a = double_trine_grid_oracle(61, true);
    auto b = double_trine_grid_oracle(61, false);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.c, b.c);
    EXPECT_NEAR(a.a, 0.5, 1e-12);
}
