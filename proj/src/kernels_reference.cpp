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

// Serial reference kernels: visit every index, skip the ones with a
// target bit set, gather / multiply / scatter.

#include <cmath>
#include <vector>

#include "dicke/kernels.hpp"

namespace dicke::kernels::reference {

namespace {

template <std::size_t K>
void apply_dense(std::span<cplx> amps, const std::array<unsigned, K> &qubits,
                 const std::array<cplx, (1U << K) * (1U << K)> &m) {
    constexpr std::size_t local = std::size_t{1} << K;
    std::uint64_t target_mask = 0;
    for (unsigned q : qubits) {
        target_mask |= std::uint64_t{1} << q;
    }
    std::array<std::uint64_t, local> idx{};
    std::array<cplx, local> v{};
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t j = 0; j < local; ++j) {
            std::uint64_t i = base;
            for (std::size_t t = 0; t < K; ++t) {
                if ((j >> t) & 1U) {
                    i |= std::uint64_t{1} << qubits[t];
                }
            }
            idx[j] = i;
            v[j] = amps[i];
        }
        for (std::size_t r = 0; r < local; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < local; ++c) {
                acc += m[r * local + c] * v[c];
            }
            amps[idx[r]] = acc;
        }
    }
}

} // namespace

void apply_1q(std::span<cplx> amps, unsigned q, const Mat2 &m) {
    apply_dense<1>(amps, {q}, m);
}

void apply_2q(std::span<cplx> amps, unsigned q0, unsigned q1, const Mat4 &m) {
    apply_dense<2>(amps, {q0, q1}, m);
}

void apply_3q(std::span<cplx> amps, unsigned q0, unsigned q1, unsigned q2, const Mat8 &m) {
    apply_dense<3>(amps, {q0, q1, q2}, m);
}

Mat8 controlled_bond_matrix(double angle) {
    // local index = control + 2 lo + 4 hi
    // U = I (x) (cos P_bond + P_rest) + X (x) sin J
    Mat8 m{};
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto at = [&m](int r, int col) -> cplx & { return m[8 * r + col]; };
    for (int ctrl = 0; ctrl < 2; ++ctrl) {
        const int a = ctrl | 2;  // lo=1, hi=0
        const int b = ctrl | 4;  // lo=0, hi=1
        const int a_flip = (1 - ctrl) | 2;
        const int b_flip = (1 - ctrl) | 4;
        at(ctrl, ctrl) = 1.0;          // |00> on the bond
        at(ctrl | 6, ctrl | 6) = 1.0;  // |11> on the bond
        at(a, a) = c;
        at(b, b) = c;
        at(a, b_flip) = s;
        at(b, a_flip) = -s;
    }
    return m;
}

void apply_controlled_bond(std::span<cplx> amps, unsigned control, unsigned lo, unsigned hi,
                           double angle) {
    apply_3q(amps, control, lo, hi, controlled_bond_matrix(angle));
}

cplx pauli_expectation(std::span<const cplx> amps, std::uint64_t x_mask, std::uint64_t z_mask,
                       int n_y) {
    static constexpr cplx iy[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        int parity = 0;
        for (std::uint64_t z = b & z_mask; z != 0; z &= z - 1) {
            parity ^= 1;
        }
        acc += (parity ? -1.0 : 1.0) * std::conj(amps[b ^ x_mask]) * amps[b];
    }
    return iy[n_y & 3] * acc;
}

} // namespace dicke::kernels::reference
