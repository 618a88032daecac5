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

#ifndef QLOCC_KERNELS_BLOCKS_HPP
#define QLOCC_KERNELS_BLOCKS_HPP

#include <algorithm>

#include "qlocc/kernels.hpp"
#include "qlocc/rng.hpp"

// Per-item work shared by the serial and OpenMP kernels.

namespace qlocc::kernels::detail {

inline int sample_index(double u, const std::array<double, 3> &p) {
    double acc = 0;
    for (int k = 0; k < 2; k++) {
        acc += p[k];
        if (u < acc) {
            return k;
        }
    }
    return 2;
}

/// Inconclusive count for one block of the elimination protocol.
inline uint64_t elimination_block(int parties, uint64_t count, uint64_t block_seed, const OutcomeTable &table,
                                  const std::array<double, 3> &priors) {
    SplitMix64 rng(block_seed);
    uint64_t inconclusive = 0;
    for (uint64_t s = 0; s < count; s++) {
        int j = sample_index(rng.uniform(), priors);
        int first = sample_index(rng.uniform(), table[j]);
        bool same = true;
        for (int k = 1; k < parties; k++) {
            same = (sample_index(rng.uniform(), table[j]) == first) && same;
        }
        inconclusive += same ? 1 : 0;
    }
    return inconclusive;
}

inline uint64_t block_count(uint64_t samples) { return (samples + kEliminationBlock - 1) / kEliminationBlock; }

inline uint64_t block_size(uint64_t samples, uint64_t b) {
    return std::min<uint64_t>(kEliminationBlock, samples - b * kEliminationBlock);
}

/// Amplitude pair (i0, i1) of qubit q under u; q = 0 is the most significant factor.
inline void rotate_pair(CVector &v, size_t i0, size_t i1, const Matrix &u) {
    cplx a = v[i0];
    cplx b = v[i1];
    v[i0] = u(0, 0) * a + u(0, 1) * b;
    v[i1] = u(1, 0) * a + u(1, 1) * b;
}

inline void check_local_unitary(const CVector &state, const Matrix &u, int qubits) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw NumericError("apply_local_unitary: expected a 2x2 unitary");
    }
    if (qubits < 1 || qubits > 24 || state.size() != (size_t{1} << qubits)) {
        throw NumericError("apply_local_unitary: state length is not 2^qubits");
    }
}

}  // namespace qlocc::kernels::detail

#endif
