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
/**
 * @file
 * Amplitude-level kernels. The top-level namespace holds the OpenMP
 * stride-iteration kernels; `reference` holds straightforward serial
 * loops over the full index range that the tests and benchmarks compare
 * against.
 *
 * Matrix convention: a k-qubit matrix acting on qubits (q0, q1, q2) is
 * row-major over the local index b0 + 2 b1 + 4 b2, where bj is the bit
 * of qubit qj. Matrices need not be unitary (noise superoperators reuse
 * these kernels).
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

namespace dicke::kernels {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;
using Mat8 = std::array<cplx, 64>;

/// Loops shorter than this run serially.
inline constexpr std::uint64_t kParallelThreshold = 1U << 12;

void apply_1q(std::span<cplx> amps, unsigned q, const Mat2 &m);
void apply_2q(std::span<cplx> amps, unsigned q0, unsigned q1, const Mat4 &m);
void apply_3q(std::span<cplx> amps, unsigned q0, unsigned q1, unsigned q2, const Mat8 &m);

/// exp(angle * X_control (x) J) with J = |A><B| - |B><A| on the bond
/// subspace A = (lo=1, hi=0), B = (lo=0, hi=1).
void apply_controlled_bond(std::span<cplx> amps, unsigned control, unsigned lo, unsigned hi,
                           double angle);

/// <psi| P |psi> for the Pauli string with the given X/Z masks and Y count.
cplx pauli_expectation(std::span<const cplx> amps, std::uint64_t x_mask, std::uint64_t z_mask,
                       int n_y);

double norm_squared(std::span<const cplx> amps);

void probabilities(std::span<const cplx> amps, std::span<double> out);

namespace reference {

void apply_1q(std::span<cplx> amps, unsigned q, const Mat2 &m);
void apply_2q(std::span<cplx> amps, unsigned q0, unsigned q1, const Mat4 &m);
void apply_3q(std::span<cplx> amps, unsigned q0, unsigned q1, unsigned q2, const Mat8 &m);
void apply_controlled_bond(std::span<cplx> amps, unsigned control, unsigned lo, unsigned hi,
                           double angle);
cplx pauli_expectation(std::span<const cplx> amps, std::uint64_t x_mask, std::uint64_t z_mask,
                       int n_y);

/// Dense 8x8 matrix of the controlled bond rotation on (control, lo, hi).
Mat8 controlled_bond_matrix(double angle);

} // namespace reference

} // namespace dicke::kernels
