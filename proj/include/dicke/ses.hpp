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
 * Single-excitation-subspace (one-hot) encoding of bosonic modes.
 *
 * Qubit layout: atoms occupy qubits 0..N-1, then mode k owns the
 * contiguous register [offset_k, offset_k + n_k^max]. Fock level n of
 * mode k is the register pattern with a single 1 at position n.
 *
 * Sign convention: |0> is the +1 eigenstate of Z. The atomic ground
 * state |g> is encoded as qubit |1> (Z = -1) and |e> as qubit |0>, so
 * the physical atomic Pauli operators coincide with the qubit ones.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/pauli.hpp"

namespace dicke {

class QubitLayout {
  public:
    QubitLayout() = default;
    QubitLayout(int n_atoms, const FockTruncation &trunc);

    [[nodiscard]] unsigned total_qubits() const { return total_; }
    [[nodiscard]] int n_atoms() const { return n_atoms_; }
    [[nodiscard]] int n_modes() const { return static_cast<int>(offsets_.size()); }
    [[nodiscard]] unsigned atom_qubit(int i) const { return static_cast<unsigned>(i); }
    [[nodiscard]] unsigned mode_qubit(int k, int n) const { return offsets_[k] + n; }
    [[nodiscard]] unsigned register_offset(int k) const { return offsets_[k]; }
    [[nodiscard]] int register_size(int k) const { return sizes_[k]; }
    [[nodiscard]] int max_photons(int k) const { return sizes_[k] - 1; }
    [[nodiscard]] std::uint64_t register_mask(int k) const;
    [[nodiscard]] std::uint64_t atom_mask() const { return (std::uint64_t{1} << n_atoms_) - 1; }
    [[nodiscard]] FockTruncation truncation() const;

  private:
    int n_atoms_ = 0;
    unsigned total_ = 0;
    std::vector<unsigned> offsets_;
    std::vector<int> sizes_;
};

/// a_k -> sum_n sqrt(n+1) sigma^+_n sigma^-_{n+1} on the mode-k register.
PauliTermSum encode_annihilation(int k, const QubitLayout &layout);

/// Encoded Dicke Hamiltonian; every string has weight <= 3.
PauliTermSum encode_hamiltonian(const DickeModel &model, const FockTruncation &trunc,
                                const QubitLayout &layout);

/// Computational-basis index of |atoms; n_0 ... n_{M-1}>. Bit i of
/// `atom_excitations` is 1 when atom i is excited.
std::uint64_t encode_state(std::span<const int> photons, std::uint64_t atom_excitations,
                           const QubitLayout &layout);

/// True iff every mode register holds exactly one excitation.
bool in_ses(std::uint64_t basis_index, const QubitLayout &layout);

/// Same as in_ses but only checks registers selected by `mode_filter`.
bool in_ses(std::uint64_t basis_index, const QubitLayout &layout,
            std::span<const bool> mode_filter);

/// Fock-basis index -> qubit-basis index.
std::uint64_t fock_to_qubit_index(std::size_t fock_index, const FockBasis &basis,
                                  const QubitLayout &layout);

/// Inverse of fock_to_qubit_index; nullopt outside SES.
std::optional<std::size_t> qubit_to_fock_index(std::uint64_t qubit_index, const FockBasis &basis,
                                               const QubitLayout &layout);

/// P_SES O P_SES written in the Fock basis ordering.
Eigen::MatrixXcd restrict_to_ses(const PauliTermSum &op, const FockBasis &basis,
                                 const QubitLayout &layout);

/// Embeds a Fock-space vector into the 2^n qubit space.
std::vector<cplx> embed_fock_state(const Eigen::VectorXcd &fock_state, const FockBasis &basis,
                                   const QubitLayout &layout);

/// Projects a qubit-space vector onto SES, returned in Fock ordering.
Eigen::VectorXcd extract_fock_state(std::span<const cplx> amplitudes, const FockBasis &basis,
                                    const QubitLayout &layout);

} // namespace dicke
