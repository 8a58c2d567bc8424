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
 * State vectors, gate descriptions and gate programs.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

using cplx = std::complex<double>;

class StateVector {
  public:
    StateVector() = default;
    /// |0...0>
    explicit StateVector(unsigned n_qubits);
    StateVector(unsigned n_qubits, std::vector<cplx> amplitudes);

    static StateVector basis_state(unsigned n_qubits, std::uint64_t index);

    [[nodiscard]] unsigned num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<cplx> amplitudes() { return amps_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    cplx &operator[](std::size_t i) { return amps_[i]; }
    const cplx &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const;
    void normalize();
    [[nodiscard]] std::vector<double> probabilities() const;
    /// |<this|other>|^2
    [[nodiscard]] double fidelity(const StateVector &other) const;

    /// Text header `qubits=<n>` then 2^n little-endian f64 (re, im) pairs.
    void write(std::ostream &os) const;
    static StateVector read(std::istream &is);

  private:
    unsigned n_ = 0;
    std::vector<cplx> amps_;
};

/**
 * One gate of a program.
 *
 * Unitary: explicit 2^k x 2^k matrix (k <= 3) in the kernel convention
 * (row-major over b0 + 2 b1 + 4 b2 for qubits q0, q1, q2).
 *
 * ControlledBondRotation on (control, lo, hi): exp(angle * sx_c (x) J)
 * where J = |A><B| - |B><A|, A = (lo=1, hi=0) and B = (lo=0, hi=1).
 * Equivalently exp(-i angle G) for the Hermitian generator
 * G = i sx_c (x) J = sx_c (x) (-i)(sigma^+_lo sigma^-_hi - h.c.).
 * In the +1 (-1) X-eigenspace of the control the bond is rotated by
 * +angle (-angle); at angle = pi/2 with control |+>, |A> -> -|B>.
 */
struct GateOp {
    enum class Kind { Unitary, ControlledBondRotation };

    Kind kind = Kind::Unitary;
    std::vector<unsigned> qubits;
    std::vector<cplx> matrix;
    double angle = 0.0;

    /// Validates distinct targets and unitarity to 1e-12.
    static GateOp unitary(std::vector<unsigned> qubits, std::vector<cplx> matrix);
    static GateOp controlled_bond(unsigned control, unsigned lo, unsigned hi, double angle);

    [[nodiscard]] GateOp adjoint() const;
    [[nodiscard]] Eigen::MatrixXcd local_matrix() const;
    [[nodiscard]] std::size_t arity() const { return qubits.size(); }
};

using Program = std::vector<GateOp>;

void apply_gate(StateVector &state, const GateOp &gate);
void apply_program(StateVector &state, const Program &program);

/// Adjoint program: reversed order, each gate inverted.
Program adjoint_program(const Program &program);

namespace gates {

GateOp x(unsigned q);
GateOp hadamard(unsigned q);
/// S^dagger = diag(1, -i)
GateOp sdg(unsigned q);
/// exp(-i theta Y / 2)
GateOp ry(unsigned q, double theta);
GateOp cz(unsigned a, unsigned b);
/// exp(angle J) on (lo, hi), real Givens rotation of the bond subspace.
GateOp bond_rotation(unsigned lo, unsigned hi, double angle);
/// exp(i angle (|A><B| + |B><A|)) on (lo, hi).
GateOp bond_exchange(unsigned lo, unsigned hi, double angle);

} // namespace gates

} // namespace dicke
