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

#include "blocks.hpp"

namespace qlocc::kernels::omp {

EliminationCounts elimination_mc(int parties, uint64_t samples, uint64_t seed, const OutcomeTable &table,
                                 const std::array<double, 3> &priors) {
    const long long blocks = static_cast<long long>(detail::block_count(samples));
    uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (long long b = 0; b < blocks; b++) {
        uint64_t ub = static_cast<uint64_t>(b);
        total += detail::elimination_block(parties, detail::block_size(samples, ub), derive_seed(seed, ub), table, priors);
    }
    return {samples, total};
}

CVector apply_local_unitary(const CVector &state, const Matrix &u, int qubits) {
    detail::check_local_unitary(state, u, qubits);
    CVector v = state;
    const long long half = static_cast<long long>(v.size() / 2);
    for (int q = 0; q < qubits; q++) {
        size_t stride = size_t{1} << (qubits - 1 - q);
        // Enumerate the pair index with bit q cleared.
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < half; k++) {
            size_t uk = static_cast<size_t>(k);
            size_t low = uk & (stride - 1);
            size_t i = ((uk - low) << 1) | low;
            detail::rotate_pair(v, i, i | stride, u);
        }
    }
    return v;
}

}  // namespace qlocc::kernels::omp
