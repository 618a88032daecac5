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


#include <benchmark/benchmark.h>

#include "qlocc/kernels.hpp"
#include "qlocc/trine.hpp"
#include "qlocc/unambiguous.hpp"

using namespace qlocc;

namespace {

const std::array<double, 3> kEqual{1.0 / 3, 1.0 / 3, 1.0 / 3};

template <bool Parallel>
void elimination(benchmark::State &st) {
    auto table = elimination_table();
    int parties = static_cast<int>(st.range(0));
    for (auto _ : st) {
        auto r = Parallel ? kernels::omp::elimination_mc(parties, 1 << 20, 7, table, kEqual)
                          : kernels::serial::elimination_mc(parties, 1 << 20, 7, table, kEqual);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * (1 << 20));
}

template <bool Parallel>
void local_unitary(benchmark::State &st) {
    int n = static_cast<int>(st.range(0));
    TrineFamily f = trine_family(2, false);
    CVector v(size_t{1} << n, 0.0);
    v[0] = 1;
    for (auto _ : st) {
        auto w = Parallel ? kernels::omp::apply_local_unitary(v, f.u, n)
                          : kernels::serial::apply_local_unitary(v, f.u, n);
        benchmark::DoNotOptimize(w);
    }
}

template <bool Parallel>
void double_trine_grid(benchmark::State &st) {
    for (auto _ : st) {
        auto g = double_trine_grid_oracle(static_cast<size_t>(st.range(0)), Parallel);
        benchmark::DoNotOptimize(g);
    }
}

template <bool Parallel>
void unambiguous_grid(benchmark::State &st) {
    Ensemble e = random_ensemble(3, {0.2, 0.3, 0.5}, 11);
    for (auto _ : st) {
        auto g = unambiguous_grid_oracle(e, 1.0 / static_cast<double>(st.range(0)), Parallel);
        benchmark::DoNotOptimize(g);
    }
}

}  // namespace

BENCHMARK(elimination<false>)->Name("elimination_mc/serial")->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(elimination<true>)->Name("elimination_mc/omp")->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(local_unitary<false>)->Name("local_unitary/serial")->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(local_unitary<true>)->Name("local_unitary/omp")->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(double_trine_grid<false>)->Name("double_trine_grid/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(double_trine_grid<true>)->Name("double_trine_grid/omp")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(unambiguous_grid<false>)->Name("unambiguous_grid/serial")->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(unambiguous_grid<true>)->Name("unambiguous_grid/omp")->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
