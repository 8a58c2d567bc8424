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
 * Trotterized polaron variational circuit.
 *
 * For atom i, Trotter step s and mode k the circuit applies
 *
 *     exp((f^s_ik / d_ik) sx_i X^e_k) exp((f^s_ik / d_ik) sx_i X^o_k)
 *
 * where X^e_k (X^o_k) collects the even (odd) bonds (n, n+1) of the
 * encoded a_k - a_k^+ with weight sqrt(n+1). Every bond factor is one
 * controlled-bond rotation. The parameter vector is laid out as
 * polaron slots ordered (i, k, s[, n]) followed by the 2N atom-layer
 * angles (first Ry layer, then second Ry layer).
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/ses.hpp"
#include "dicke/statevector.hpp"

namespace dicke {

struct AnsatzSpec {
    int n_atoms = 1;
    FockTruncation truncation;
    /// n_atoms x n_modes Trotter depths d_ik.
    std::vector<std::vector<int>> trotter_depths;
    /// Independent angle per bond: f^s_ik becomes f^s_ik(n).
    bool per_photon = false;
    /// Ry / CZ-chain / Ry prefix on the atoms. Required when n_atoms > 1.
    bool atom_layer = false;

    static AnsatzSpec uniform(int n_atoms, const FockTruncation &trunc, int depth,
                              bool per_photon = false);

    void validate() const;
    [[nodiscard]] int n_modes() const { return truncation.n_modes(); }
    [[nodiscard]] std::size_t polaron_parameter_count() const;
    [[nodiscard]] std::size_t atom_layer_parameter_count() const {
        return atom_layer ? 2 * static_cast<std::size_t>(n_atoms) : 0;
    }
    [[nodiscard]] std::size_t parameter_count() const {
        return polaron_parameter_count() + atom_layer_parameter_count();
    }
    /// Slot of f^s_ik (bond n when per_photon is set; ignored otherwise).
    [[nodiscard]] std::size_t slot(int i, int k, int s, int n = 0) const;
};

struct AnsatzGate {
    enum class Kind { Ry, CZ, ControlledBond };

    Kind kind = Kind::Ry;
    std::vector<unsigned> qubits;
    int slot = -1;       ///< -1 for fixed gates
    double weight = 1.0; ///< angle = theta[slot] * weight
};

struct AnsatzCircuit {
    AnsatzSpec spec;
    QubitLayout layout;
    std::vector<AnsatzGate> gates;
    /// Basis index of the encoded vacuum the circuit starts from.
    std::uint64_t initial_index = 0;

    [[nodiscard]] std::size_t parameter_count() const { return spec.parameter_count(); }
    [[nodiscard]] std::size_t controlled_bond_count() const;

    /// One gate per line: `kind qubits slot weight`.
    void dump(std::ostream &os) const;
};

AnsatzCircuit build_ansatz(const AnsatzSpec &spec);

/// Throws InvalidArgument when theta has the wrong length.
Program bind_parameters(const AnsatzCircuit &circuit, std::span<const double> theta);

/// Runs the bound program on the encoded vacuum.
StateVector prepare_state(const AnsatzCircuit &circuit, std::span<const double> theta);

/// Ry layer, CZ chain, Ry layer on atoms 0..N-1; params has 2N entries.
Program build_atom_layer(int n_atoms, std::span<const double> params);

/// Fixed point of w' = w_q exp(-2 sum_k f_k^2), f_k = g_ik / (w_k + w').
/// Returns w_q (and sets *converged = false) when it does not converge.
double renormalized_atom_frequency(const DickeModel &model, int atom,
                                   bool *converged = nullptr);

/// Warm start f_ik = g_ik / (w_k + w'_i) in every Trotter slot; the
/// atom-layer angles start at zero.
std::vector<double> polaron_displacement_params(const DickeModel &model,
                                                const AnsatzSpec &spec);

/// Maps an optimum at depth d onto depth d+1 so that both circuits coincide
/// (last step idle). Requires uniform per-(i,k) depth increments by one.
std::vector<double> pad_parameters(const AnsatzSpec &from, const AnsatzSpec &to,
                                   std::span<const double> theta);

} // namespace dicke
