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
 * Sparse Pauli strings and weighted sums of them.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

using cplx = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli parse_pauli(char c);

/// Canonical form: (qubit, label) pairs sorted by qubit, identities dropped.
class PauliString {
  public:
    PauliString() = default;
    PauliString(std::initializer_list<std::pair<unsigned, Pauli>> factors);

    /// Dense label, qubit 0 first, e.g. "XIZ".
    static PauliString from_label(std::string_view label);

    [[nodiscard]] const std::vector<std::pair<unsigned, Pauli>> &factors() const {
        return factors_;
    }
    [[nodiscard]] std::size_t weight() const { return factors_.size(); }
    [[nodiscard]] bool is_identity() const { return factors_.empty(); }
    [[nodiscard]] Pauli at(unsigned qubit) const;
    /// Highest touched qubit + 1 (0 for the identity).
    [[nodiscard]] unsigned span() const;

    [[nodiscard]] std::uint64_t x_mask() const;
    [[nodiscard]] std::uint64_t z_mask() const;

    [[nodiscard]] std::string label(unsigned n_qubits) const;

    /// this * other = phase * result
    [[nodiscard]] std::pair<cplx, PauliString> multiply(const PauliString &other) const;

    /// Qubit-wise commutation: on each shared qubit the labels agree.
    [[nodiscard]] bool qubitwise_commutes(const PauliString &other) const;

    auto operator<=>(const PauliString &) const = default;

  private:
    void set(unsigned qubit, Pauli p);
    std::vector<std::pair<unsigned, Pauli>> factors_;
};

class PauliTermSum {
  public:
    static constexpr double kPruneThreshold = 1e-14;

    PauliTermSum() = default;
    explicit PauliTermSum(unsigned n_qubits) : n_qubits_(n_qubits) {}

    [[nodiscard]] unsigned num_qubits() const { return n_qubits_; }
    void set_num_qubits(unsigned n);

    void add(cplx coeff, const PauliString &s);
    void add(const PauliTermSum &other, cplx scale = 1.0);

    [[nodiscard]] const std::map<PauliString, cplx> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] cplx coefficient(const PauliString &s) const;

    /// Merges are automatic; this drops coefficients below the threshold.
    [[nodiscard]] PauliTermSum canonicalized(double threshold = kPruneThreshold) const;

    [[nodiscard]] PauliTermSum adjoint() const;
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
    [[nodiscard]] std::size_t max_weight() const;

    [[nodiscard]] PauliTermSum operator*(const PauliTermSum &other) const;
    [[nodiscard]] PauliTermSum operator+(const PauliTermSum &other) const;
    [[nodiscard]] PauliTermSum operator-(const PauliTermSum &other) const;
    [[nodiscard]] PauliTermSum operator*(cplx s) const;

    /// 2^n x 2^n matrix, little-endian (qubit q is bit q of the index).
    [[nodiscard]] Eigen::MatrixXcd to_dense() const;

    /// One term per line: `coeff_re coeff_im LABEL`.
    void write(std::ostream &os) const;
    static PauliTermSum read(std::istream &is);

  private:
    unsigned n_qubits_ = 0;
    std::map<PauliString, cplx> terms_;
};

/// Single-qubit raising/lowering in the |1> = occupied convention:
/// sigma^+ = |1><0| = (X - iY)/2, sigma^- = |0><1| = (X + iY)/2.
PauliTermSum sigma_plus(unsigned qubit, unsigned n_qubits);
PauliTermSum sigma_minus(unsigned qubit, unsigned n_qubits);

} // namespace dicke
