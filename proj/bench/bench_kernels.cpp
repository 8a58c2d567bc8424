// Copyright 2026 The dicke-vqe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against the serial reference loops.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dicke/kernels.hpp"

namespace {

using dicke::kernels::cplx;

std::vector<cplx> random_state(unsigned n) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &a : v) {
        a = cplx(nd(rng), nd(rng));
    }
    return v;
}

dicke::kernels::Mat2 ry(double t) {
    return {std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)};
}

void BM_1q(benchmark::State &st) {
    auto v = random_state(static_cast<unsigned>(st.range(0)));
    const auto m = ry(0.3);
    for (auto _ : st) {
        dicke::kernels::apply_1q(v, 3, m);
        benchmark::DoNotOptimize(v.data());
    }
}

void BM_1q_reference(benchmark::State &st) {
    auto v = random_state(static_cast<unsigned>(st.range(0)));
    const auto m = ry(0.3);
    for (auto _ : st) {
        dicke::kernels::reference::apply_1q(v, 3, m);
        benchmark::DoNotOptimize(v.data());
    }
}

void BM_controlled_bond(benchmark::State &st) {
    auto v = random_state(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) {
        dicke::kernels::apply_controlled_bond(v, 0, 2, 5, 0.2);
        benchmark::DoNotOptimize(v.data());
    }
}

void BM_controlled_bond_reference(benchmark::State &st) {
    auto v = random_state(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) {
        dicke::kernels::reference::apply_controlled_bond(v, 0, 2, 5, 0.2);
        benchmark::DoNotOptimize(v.data());
    }
}

void BM_pauli(benchmark::State &st) {
    const auto v = random_state(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(dicke::kernels::pauli_expectation(v, 0b1010, 0b0110, 1));
    }
}

void BM_pauli_reference(benchmark::State &st) {
    const auto v = random_state(static_cast<unsigned>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            dicke::kernels::reference::pauli_expectation(v, 0b1010, 0b0110, 1));
    }
}

} // namespace

BENCHMARK(BM_1q)->DenseRange(12, 22, 5);
BENCHMARK(BM_1q_reference)->DenseRange(12, 22, 5);
BENCHMARK(BM_controlled_bond)->DenseRange(12, 22, 5);
BENCHMARK(BM_controlled_bond_reference)->DenseRange(12, 22, 5);
BENCHMARK(BM_pauli)->DenseRange(12, 22, 5);
BENCHMARK(BM_pauli_reference)->DenseRange(12, 22, 5);

BENCHMARK_MAIN();
