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

namespace qlocc::kernels::serial {

EliminationCounts elimination_mc(int parties, uint64_t samples, uint64_t seed, const OutcomeTable &table,
                                 const std::array<double, 3> &priors) {
    EliminationCounts out{samples, 0};
    for (uint64_t b = 0; b < detail::block_count(samples); b++) {
        out.inconclusive +=
            detail::elimination_block(parties, detail::block_size(samples, b), derive_seed(seed, b), table, priors);
    }
    return out;
}

CVector apply_local_unitary(const CVector &state, const Matrix &u, int qubits) {
    detail::check_local_unitary(state, u, qubits);
    CVector v = state;
    size_t dim = v.size();
    for (int q = 0; q < qubits; q++) {
        size_t stride = size_t{1} << (qubits - 1 - q);
        for (size_t i = 0; i < dim; i++) {
            if ((i & stride) == 0) {
                detail::rotate_pair(v, i, i | stride, u);
            }
        }
    }
    return v;
}

}  // namespace qlocc::kernels::serial
