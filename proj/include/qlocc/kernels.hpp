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

#ifndef QLOCC_KERNELS_HPP
#define QLOCC_KERNELS_HPP

#include <array>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#include "qlocc/numerics.hpp"

// Data-parallel kernels. Each has a serial reference and an OpenMP variant;
// both produce bit-identical results (work is split into index-addressed
// items with derived seeds and merged in index order).

namespace qlocc::kernels {

/// Born-rule outcome table: table[j][i] = P(outcome i | state j) for one party.
using OutcomeTable = std::array<std::array<double, 3>, 3>;

struct EliminationCounts {
    uint64_t samples = 0;
    uint64_t inconclusive = 0;
};

inline constexpr uint64_t kEliminationBlock = 1 << 16;

struct GridBest {
    bool found = false;
    double value = -std::numeric_limits<double>::infinity();
    size_t index = 0;
};

namespace detail {
inline void keep_better(GridBest &best, double v, size_t i) {
    if (!best.found || v > best.value || (v == best.value && i < best.index)) {
        best = {true, v, i};
    }
}
}  // namespace detail

namespace serial {

template <class Fn>
void for_each_index(size_t n, Fn &&fn) {
    for (size_t i = 0; i < n; i++) {
        fn(i);
    }
}

/// fn(i) -> std::optional<double>; returns the largest value (ties: lowest index).
template <class Fn>
GridBest grid_argmax(size_t n, Fn &&fn) {
    GridBest best;
    for (size_t i = 0; i < n; i++) {
        if (auto v = fn(i)) {
            detail::keep_better(best, *v, i);
        }
    }
    return best;
}

EliminationCounts elimination_mc(int parties, uint64_t samples, uint64_t seed, const OutcomeTable &table,
                                 const std::array<double, 3> &priors);
/// u applied to every qubit: u^(x)N |state>.
CVector apply_local_unitary(const CVector &state, const Matrix &u, int qubits);

}  // namespace serial

namespace omp {

template <class Fn>
void for_each_index(size_t n, Fn &&fn) {
    std::exception_ptr error;
    size_t error_index = n;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); i++) {
        try {
            fn(static_cast<size_t>(i));
        } catch (...) {
#pragma omp critical(qlocc_kernel_error)
            if (static_cast<size_t>(i) < error_index) {
                error_index = static_cast<size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

template <class Fn>
GridBest grid_argmax(size_t n, Fn &&fn) {
    GridBest best;
#pragma omp parallel
    {
        GridBest local;
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); i++) {
            if (auto v = fn(static_cast<size_t>(i))) {
                detail::keep_better(local, *v, static_cast<size_t>(i));
            }
        }
#pragma omp critical(qlocc_grid_reduce)
        if (local.found) {
            detail::keep_better(best, local.value, local.index);
        }
    }
    return best;
}

EliminationCounts elimination_mc(int parties, uint64_t samples, uint64_t seed, const OutcomeTable &table,
                                 const std::array<double, 3> &priors);
CVector apply_local_unitary(const CVector &state, const Matrix &u, int qubits);

}  // namespace omp

}  // namespace qlocc::kernels

#endif
