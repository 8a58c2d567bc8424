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

#include "dicke/ses.hpp"

#include <bit>
#include <cmath>

#include "dicke/error.hpp"

namespace dicke {

QubitLayout::QubitLayout(int n_atoms, const FockTruncation &trunc) : n_atoms_(n_atoms) {
    if (n_atoms < 1) {
        throw InvalidArgument("layout needs at least one atom");
    }
    unsigned next = static_cast<unsigned>(n_atoms);
    for (int n_max : trunc.max_photons) {
        if (n_max < 1) {
            throw InvalidArgument("max photon number must be >= 1");
        }
        offsets_.push_back(next);
        sizes_.push_back(n_max + 1);
        next += static_cast<unsigned>(n_max + 1);
    }
    if (next > 62) {
        throw ResourceError("qubit layout exceeds 62 qubits");
    }
    total_ = next;
}

std::uint64_t QubitLayout::register_mask(int k) const {
    return ((std::uint64_t{1} << sizes_[k]) - 1) << offsets_[k];
}

FockTruncation QubitLayout::truncation() const {
    FockTruncation t;
    for (int s : sizes_) {
        t.max_photons.push_back(s - 1);
    }
    return t;
}

PauliTermSum encode_annihilation(int k, const QubitLayout &layout) {
    if (k < 0 || k >= layout.n_modes()) {
        throw InvalidArgument("mode index out of range");
    }
    const unsigned n_qubits = layout.total_qubits();
    PauliTermSum a(n_qubits);
    for (int n = 0; n < layout.max_photons(k); ++n) {
        const double weight = std::sqrt(static_cast<double>(n + 1));
        a.add(sigma_plus(layout.mode_qubit(k, n), n_qubits) *
                  sigma_minus(layout.mode_qubit(k, n + 1), n_qubits),
              weight);
    }
    return a.canonicalized();
}

PauliTermSum encode_hamiltonian(const DickeModel &model, const FockTruncation &trunc,
                                const QubitLayout &layout) {
    model.validate();
    trunc.validate(model.n_modes());
    if (layout.n_atoms() != model.n_atoms() || layout.n_modes() != model.n_modes()) {
        throw InvalidArgument("layout does not match model");
    }
    const unsigned n_qubits = layout.total_qubits();
    PauliTermSum h(n_qubits);
    for (int i = 0; i < model.n_atoms(); ++i) {
        h.add(0.5 * model.atom_freqs[i], PauliString{{layout.atom_qubit(i), Pauli::Z}});
    }
    for (int k = 0; k < model.n_modes(); ++k) {
        const double w = model.mode_freqs[k];
        for (int n = 1; n <= layout.max_photons(k); ++n) {
            // n |1><1|_n = n (I - Z_n) / 2
            h.add(0.5 * w * n, PauliString{});
            h.add(-0.5 * w * n, PauliString{{layout.mode_qubit(k, n), Pauli::Z}});
        }
        const PauliTermSum a = encode_annihilation(k, layout);
        const PauliTermSum quadrature = a + a.adjoint();
        for (int i = 0; i < model.n_atoms(); ++i) {
            const double g = model.couplings(i, k);
            if (g == 0.0) {
                continue;
            }
            PauliTermSum sx(n_qubits);
            sx.add(1.0, PauliString{{layout.atom_qubit(i), Pauli::X}});
            h.add(sx * quadrature, g);
        }
    }
    return h.canonicalized();
}

std::uint64_t encode_state(std::span<const int> photons, std::uint64_t atom_excitations,
                           const QubitLayout &layout) {
    if (static_cast<int>(photons.size()) != layout.n_modes()) {
        throw InvalidArgument("photon list length does not match mode count");
    }
    if (atom_excitations > layout.atom_mask()) {
        throw InvalidArgument("atom excitation bits out of range");
    }
    // excited atom -> qubit 0, ground -> qubit 1
    std::uint64_t idx = ~atom_excitations & layout.atom_mask();
    for (int k = 0; k < layout.n_modes(); ++k) {
        if (photons[k] < 0 || photons[k] > layout.max_photons(k)) {
            throw InvalidArgument("photon number out of range for mode " + std::to_string(k));
        }
        idx |= std::uint64_t{1} << layout.mode_qubit(k, photons[k]);
    }
    return idx;
}

bool in_ses(std::uint64_t basis_index, const QubitLayout &layout) {
    for (int k = 0; k < layout.n_modes(); ++k) {
        if (std::popcount(basis_index & layout.register_mask(k)) != 1) {
            return false;
        }
    }
    return true;
}

bool in_ses(std::uint64_t basis_index, const QubitLayout &layout,
            std::span<const bool> mode_filter) {
    for (int k = 0; k < layout.n_modes(); ++k) {
        if (mode_filter[k] && std::popcount(basis_index & layout.register_mask(k)) != 1) {
            return false;
        }
    }
    return true;
}

std::uint64_t fock_to_qubit_index(std::size_t fock_index, const FockBasis &basis,
                                  const QubitLayout &layout) {
    std::vector<int> photons(static_cast<std::size_t>(basis.n_modes()));
    for (int k = 0; k < basis.n_modes(); ++k) {
        photons[k] = basis.photons(fock_index, k);
    }
    return encode_state(photons, basis.atom_excitations(fock_index), layout);
}

std::optional<std::size_t> qubit_to_fock_index(std::uint64_t qubit_index, const FockBasis &basis,
                                               const QubitLayout &layout) {
    if (!in_ses(qubit_index, layout)) {
        return std::nullopt;
    }
    std::size_t idx = ~qubit_index & layout.atom_mask();
    for (int k = 0; k < layout.n_modes(); ++k) {
        const std::uint64_t reg = (qubit_index & layout.register_mask(k)) >> layout.register_offset(k);
        idx += basis.mode_stride(k) * static_cast<std::size_t>(std::countr_zero(reg));
    }
    return idx;
}

Eigen::MatrixXcd restrict_to_ses(const PauliTermSum &op, const FockBasis &basis,
                                 const QubitLayout &layout) {
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const cplx iy[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    for (const auto &[s, c] : op.terms()) {
        const std::uint64_t x = s.x_mask();
        const std::uint64_t z = s.z_mask();
        int n_y = 0;
        for (const auto &f : s.factors()) {
            n_y += f.second == Pauli::Y ? 1 : 0;
        }
        for (Eigen::Index col = 0; col < dim; ++col) {
            const std::uint64_t b = fock_to_qubit_index(static_cast<std::size_t>(col), basis, layout);
            const auto row = qubit_to_fock_index(b ^ x, basis, layout);
            if (!row) {
                continue;
            }
            const double sign = (std::popcount(b & z) % 2) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(*row), col) += c * iy[n_y % 4] * sign;
        }
    }
    return m;
}

std::vector<cplx> embed_fock_state(const Eigen::VectorXcd &fock_state, const FockBasis &basis,
                                   const QubitLayout &layout) {
    if (static_cast<std::size_t>(fock_state.size()) != basis.dimension()) {
        throw InvalidArgument("Fock state size mismatch");
    }
    std::vector<cplx> out(std::size_t{1} << layout.total_qubits(), cplx(0.0));
    for (std::size_t f = 0; f < basis.dimension(); ++f) {
        out[fock_to_qubit_index(f, basis, layout)] = fock_state[static_cast<Eigen::Index>(f)];
    }
    return out;
}

Eigen::VectorXcd extract_fock_state(std::span<const cplx> amplitudes, const FockBasis &basis,
                                    const QubitLayout &layout) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(basis.dimension()));
    for (std::size_t f = 0; f < basis.dimension(); ++f) {
        out[static_cast<Eigen::Index>(f)] = amplitudes[fock_to_qubit_index(f, basis, layout)];
    }
    return out;
}

} // namespace dicke
