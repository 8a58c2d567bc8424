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

#include "dicke/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dicke::kernels {

namespace {

using index_t = std::int64_t;

inline std::uint64_t insert_zero(std::uint64_t i, unsigned q) {
    const std::uint64_t low = i & ((std::uint64_t{1} << q) - 1);
    return ((i >> q) << (q + 1)) | low;
}

// Zero bits must be inserted in ascending position order.
inline std::uint64_t insert_zeros(std::uint64_t i, unsigned a, unsigned b) {
    return insert_zero(insert_zero(i, std::min(a, b)), std::max(a, b));
}

inline std::uint64_t insert_zeros(std::uint64_t i, unsigned a, unsigned b, unsigned c) {
    std::array<unsigned, 3> s{a, b, c};
    std::sort(s.begin(), s.end());
    return insert_zero(insert_zero(insert_zero(i, s[0]), s[1]), s[2]);
}

inline std::uint64_t n_groups(std::size_t size, unsigned k) { return size >> k; }

} // namespace

void apply_1q(std::span<cplx> amps, unsigned q, const Mat2 &m) {
    const std::uint64_t groups = n_groups(amps.size(), 1);
    const std::uint64_t bit = std::uint64_t{1} << q;
    cplx *a = amps.data();
#pragma omp parallel for if (groups >= kParallelThreshold)
    for (index_t g = 0; g < static_cast<index_t>(groups); ++g) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(g), q);
        const std::uint64_t i1 = i0 | bit;
        const cplx v0 = a[i0];
        const cplx v1 = a[i1];
        a[i0] = m[0] * v0 + m[1] * v1;
        a[i1] = m[2] * v0 + m[3] * v1;
    }
}

void apply_2q(std::span<cplx> amps, unsigned q0, unsigned q1, const Mat4 &m) {
    const std::uint64_t groups = n_groups(amps.size(), 2);
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    cplx *a = amps.data();
#pragma omp parallel for if (groups >= kParallelThreshold)
    for (index_t g = 0; g < static_cast<index_t>(groups); ++g) {
        const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(g), q0, q1);
        const std::uint64_t idx[4] = {base, base | b0, base | b1, base | b0 | b1};
        cplx v[4];
        for (int j = 0; j < 4; ++j) {
            v[j] = a[idx[j]];
        }
        for (int r = 0; r < 4; ++r) {
            a[idx[r]] = m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] +
                        m[4 * r + 3] * v[3];
        }
    }
}

void apply_3q(std::span<cplx> amps, unsigned q0, unsigned q1, unsigned q2, const Mat8 &m) {
    const std::uint64_t groups = n_groups(amps.size(), 3);
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    const std::uint64_t b2 = std::uint64_t{1} << q2;
    cplx *a = amps.data();
#pragma omp parallel for if (groups >= kParallelThreshold)
    for (index_t g = 0; g < static_cast<index_t>(groups); ++g) {
        const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(g), q0, q1, q2);
        std::uint64_t idx[8];
        cplx v[8];
        for (int j = 0; j < 8; ++j) {
            idx[j] = base | ((j & 1) ? b0 : 0) | ((j & 2) ? b1 : 0) | ((j & 4) ? b2 : 0);
            v[j] = a[idx[j]];
        }
        for (int r = 0; r < 8; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < 8; ++c) {
                acc += m[8 * r + c] * v[c];
            }
            a[idx[r]] = acc;
        }
    }
}

void apply_controlled_bond(std::span<cplx> amps, unsigned control, unsigned lo, unsigned hi,
                           double angle) {
    const std::uint64_t groups = n_groups(amps.size(), 3);
    const std::uint64_t bc = std::uint64_t{1} << control;
    const std::uint64_t bl = std::uint64_t{1} << lo;
    const std::uint64_t bh = std::uint64_t{1} << hi;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    cplx *a = amps.data();
#pragma omp parallel for if (groups >= kParallelThreshold)
    for (index_t g = 0; g < static_cast<index_t>(groups); ++g) {
        const std::uint64_t base = insert_zeros(static_cast<std::uint64_t>(g), control, lo, hi);
        // only the bond subspace {A, B} in both control branches moves
        const std::uint64_t a0 = base | bl;
        const std::uint64_t a1 = a0 | bc;
        const std::uint64_t b0 = base | bh;
        const std::uint64_t b1 = b0 | bc;
        const cplx va0 = a[a0];
        const cplx va1 = a[a1];
        const cplx vb0 = a[b0];
        const cplx vb1 = a[b1];
        a[a0] = c * va0 + s * vb1;
        a[a1] = c * va1 + s * vb0;
        a[b0] = c * vb0 - s * va1;
        a[b1] = c * vb1 - s * va0;
    }
}

cplx pauli_expectation(std::span<const cplx> amps, std::uint64_t x_mask, std::uint64_t z_mask,
                       int n_y) {
    const cplx *a = amps.data();
    const auto size = static_cast<index_t>(amps.size());
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) if (amps.size() >= kParallelThreshold)
    for (index_t b = 0; b < size; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        const cplx term = std::conj(a[ub ^ x_mask]) * a[ub];
        const double sign = (std::popcount(ub & z_mask) & 1) ? -1.0 : 1.0;
        re += sign * term.real();
        im += sign * term.imag();
    }
    static constexpr cplx iy[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return iy[n_y & 3] * cplx(re, im);
}

double norm_squared(std::span<const cplx> amps) {
    const cplx *a = amps.data();
    const auto size = static_cast<index_t>(amps.size());
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (amps.size() >= kParallelThreshold)
    for (index_t b = 0; b < size; ++b) {
        acc += std::norm(a[b]);
    }
    return acc;
}

void probabilities(std::span<const cplx> amps, std::span<double> out) {
    const auto size = static_cast<index_t>(amps.size());
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (index_t b = 0; b < size; ++b) {
        out[b] = std::norm(amps[b]);
    }
}

} // namespace dicke::kernels
