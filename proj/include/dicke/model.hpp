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
 * Multimode Dicke model and its truncated-Fock-space reference solvers.
 *
 * Basis ordering (shared by every module): atoms first, then modes in
 * ascending k, little-endian within each factor. A Fock-basis index is
 *
 *     idx = sum_i e_i 2^i + 2^N * (n_0 + (n_0^max+1) * (n_1 + ...))
 *
 * where e_i = 1 when atom i is excited and n_k is the photon number of
 * mode k. The atomic Pauli operators act on (|g>, |e>) as
 * sigma^z = diag(-1, +1).
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dicke {

using cplx = std::complex<double>;

/// Physical parameters of H = sum_i w_qi/2 sz_i + sum_k w_k a_k^+ a_k
///                          + sum_ik g_ik sx_i (a_k + a_k^+).
struct DickeModel {
    std::vector<double> atom_freqs;
    std::vector<double> mode_freqs;
    Eigen::MatrixXd couplings; ///< n_atoms x n_modes

    [[nodiscard]] int n_atoms() const { return static_cast<int>(atom_freqs.size()); }
    [[nodiscard]] int n_modes() const { return static_cast<int>(mode_freqs.size()); }

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;

    /// All frequencies equal to omega and every coupling equal to g.
    static DickeModel resonant(int n_atoms, int n_modes, double omega, double g);
};

struct FockTruncation {
    std::vector<int> max_photons;

    [[nodiscard]] int n_modes() const { return static_cast<int>(max_photons.size()); }
    static FockTruncation uniform(int n_modes, int n_max);
    void validate(int n_modes) const;
};

/// Index arithmetic for the atoms (x) modes tensor basis.
class FockBasis {
  public:
    FockBasis() = default;
    FockBasis(int n_atoms, FockTruncation trunc);

    [[nodiscard]] int n_atoms() const { return n_atoms_; }
    [[nodiscard]] int n_modes() const { return trunc_.n_modes(); }
    [[nodiscard]] const FockTruncation &truncation() const { return trunc_; }
    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] std::size_t atom_dimension() const { return std::size_t{1} << n_atoms_; }
    [[nodiscard]] std::size_t mode_stride(int k) const { return strides_[k]; }

    [[nodiscard]] std::size_t index(std::uint64_t atom_excitations,
                                    std::span<const int> photons) const;
    [[nodiscard]] std::uint64_t atom_excitations(std::size_t idx) const {
        return idx & (atom_dimension() - 1);
    }
    [[nodiscard]] int photons(std::size_t idx, int k) const {
        return static_cast<int>((idx / strides_[k]) % (trunc_.max_photons[k] + 1));
    }

  private:
    int n_atoms_ = 0;
    FockTruncation trunc_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 0;
};

/// Sparse storage; `dense()` materializes the matrix for small systems.
struct FockOperatorMatrix {
    FockBasis basis;
    Eigen::SparseMatrix<cplx> matrix;

    [[nodiscard]] Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
    [[nodiscard]] double max_abs() const;
    /// Largest |H - H^dagger| element.
    [[nodiscard]] double hermiticity_defect() const;
};

struct SolverLimits {
    std::size_t max_dimension = 16384;
    std::size_t dense_threshold = 4096; ///< dense eigensolver up to this size
};

FockOperatorMatrix build_fock_hamiltonian(const DickeModel &model, const FockTruncation &trunc,
                                          const SolverLimits &limits = {});

struct GroundState {
    double energy = 0.0;
    Eigen::VectorXcd state;
};

/// Lowest eigenpair. Dense solver below `dense_threshold`, Lanczos above.
GroundState exact_groundstate(const FockOperatorMatrix &hamiltonian,
                              const SolverLimits &limits = {});

/// Truncated single-mode ladder operator, <n|a|n+1> = sqrt(n+1).
Eigen::MatrixXd annihilation_matrix(int n_max);

/// exp(alpha a^+ - alpha^* a) in the truncated space, by matrix exponential.
Eigen::MatrixXcd displacement_matrix(int n_max, cplx alpha);

enum class AtomLabel { I, X, Y, Z };

AtomLabel parse_atom_label(char c);
char atom_label_char(AtomLabel label);

/// <m| D(alpha) Pi D^+(alpha) |n> for m, n <= n_max, from the closed form of
/// the untruncated operator.
Eigen::MatrixXcd displaced_parity_matrix(int n_max, cplx alpha);

/// W_l(alpha) = Tr[rho sigma^{l_1}...sigma^{l_N} (2/pi)^M D Pi D^+] for rho = |state><state|.
/// Exact for any state supported on the truncated basis.
double exact_wigner(const Eigen::VectorXcd &state, const FockBasis &basis,
                    std::span<const AtomLabel> labels, std::span<const cplx> alpha);

/// exact_wigner over many displacement points; evaluated in parallel.
std::vector<double> exact_wigner_field(const Eigen::VectorXcd &state, const FockBasis &basis,
                                       std::span<const AtomLabel> labels,
                                       const std::vector<std::vector<cplx>> &points);

} // namespace dicke
