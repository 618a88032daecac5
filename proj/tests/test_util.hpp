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

#ifndef QLOCC_TEST_UTIL_HPP
#define QLOCC_TEST_UTIL_HPP

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "json.hpp"
#include "qlocc/quantum.hpp"
#include "qlocc/rng.hpp"

namespace qlocc::testing {

inline const double kSqrtHalf = std::sqrt(0.5);

inline CVector phi_plus() { return {kSqrtHalf, 0.0, 0.0, kSqrtHalf}; }
inline CVector phi_minus() { return {kSqrtHalf, 0.0, 0.0, -kSqrtHalf}; }
inline CVector psi_plus() { return {0.0, kSqrtHalf, kSqrtHalf, 0.0}; }
inline CVector psi_minus() { return {0.0, kSqrtHalf, -kSqrtHalf, 0.0}; }

inline CVector s_plus(double t) { return {std::cos(t), 0.0, 0.0, std::sin(t)}; }
inline CVector s_minus(double t) { return {-std::sin(t), 0.0, 0.0, std::cos(t)}; }

/// (|s+><s+| + sin 2t |Psi+><Psi+|) / (1 + sin 2t)
inline Matrix rho_theta(double t) {
    double s = std::sin(2 * t);
    return (1.0 / (1.0 + s)) * (Matrix::projector(s_plus(t)) + s * Matrix::projector(psi_plus()));
}

/// Mixture of 1..4 Haar-random pure states with random weights.
inline Matrix random_density(uint64_t seed) {
    SplitMix64 rng(seed);
    size_t k = 1 + static_cast<size_t>(rng.next() % 4);
    auto w = random_priors(k, derive_seed(seed, 100));
    Matrix m(4, 4);
    for (size_t i = 0; i < k; i++) {
        m += w[i] * Matrix::projector(random_pure_state(4, derive_seed(seed, i)));
    }
    return m;
}

// Trine s_i (x) s_i and its square-root measurement vectors.
inline std::vector<CVector> double_trine() {
    std::vector<CVector> out;
    for (int i = 0; i < 3; i++) {
        double a = 2 * std::numbers::pi * i / 3;
        CVector s{std::cos(a), -std::sin(a)};
        out.push_back(kron(s, s));
    }
    return out;
}

inline std::vector<CVector> square_root_vectors(const std::vector<CVector> &kets) {
    Matrix g(4, 4);
    for (const auto &k : kets) {
        g += Matrix::projector(k);
    }
    Matrix r = psd_power(g, -0.5);
    std::vector<CVector> out;
    for (const auto &k : kets) {
        out.push_back(r * k);
    }
    return out;
}

inline Matrix local_unitary(uint64_t seed) { return kron(haar_unitary(2, derive_seed(seed, 0)), haar_unitary(2, derive_seed(seed, 1))); }

/// Distance between rays: min over phases of |a - e^{i t} b|.
inline double ray_distance(const CVector &a, const CVector &b) {
    cplx ov = inner(b, a);
    cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1);
    return distance(a, scaled(ph, b));
}

inline nlohmann::json load_json(const std::string &path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

inline CVector ket_from_json(const nlohmann::json &j) {
    CVector v;
    for (const auto &c : j) {
        v.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return v;
}

}  // namespace qlocc::testing

#endif
