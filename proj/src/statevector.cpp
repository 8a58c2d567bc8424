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

#include "dicke/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "dicke/error.hpp"
#include "dicke/kernels.hpp"

namespace dicke {

StateVector::StateVector(unsigned n_qubits) : n_(n_qubits) {
    if (n_qubits > 30) {
        throw ResourceError("state vector limited to 30 qubits");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
    amps_[0] = 1.0;
}

StateVector::StateVector(unsigned n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw InvalidArgument("amplitude count must be 2^n");
    }
}

StateVector StateVector::basis_state(unsigned n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) {
        throw InvalidArgument("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amps_)); }

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) {
        throw NumericalError("cannot normalize the zero vector");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    kernels::probabilities(amps_, p);
    return p;
}

double StateVector::fidelity(const StateVector &other) const {
    if (other.size() != size()) {
        throw InvalidArgument("fidelity between states of different size");
    }
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        overlap += std::conj(amps_[i]) * other.amps_[i];
    }
    return std::norm(overlap);
}

namespace {

void write_le_double(std::ostream &os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    }
    os.write(reinterpret_cast<const char *>(bytes), 8);
}

double read_le_double(std::istream &is) {
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char *>(bytes), 8)) {
        throw InvalidArgument("truncated state dump");
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

} // namespace

void StateVector::write(std::ostream &os) const {
    os << "qubits=" << n_ << '\n';
    for (const auto &a : amps_) {
        write_le_double(os, a.real());
        write_le_double(os, a.imag());
    }
}

StateVector StateVector::read(std::istream &is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("qubits=", 0) != 0) {
        throw InvalidArgument("state dump must start with 'qubits=<n>'");
    }
    const unsigned n = static_cast<unsigned>(std::stoul(header.substr(7)));
    if (n > 30) {
        throw ResourceError("state dump too large");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        const double re = read_le_double(is);
        const double im = read_le_double(is);
        a = cplx(re, im);
    }
    return StateVector(n, std::move(amps));
}

GateOp GateOp::unitary(std::vector<unsigned> qubits, std::vector<cplx> matrix) {
    const std::size_t k = qubits.size();
    if (k == 0 || k > 3) {
        throw InvalidArgument("unitary gates act on 1 to 3 qubits");
    }
    std::vector<unsigned> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("gate targets must be distinct");
    }
    const std::size_t dim = std::size_t{1} << k;
    if (matrix.size() != dim * dim) {
        throw InvalidArgument("gate matrix has wrong size");
    }
    GateOp g;
    g.kind = Kind::Unitary;
    g.qubits = std::move(qubits);
    g.matrix = std::move(matrix);
    const Eigen::MatrixXcd u = g.local_matrix();
    const double defect =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-12) {
        throw InvalidArgument("gate matrix is not unitary");
    }
    return g;
}

GateOp GateOp::controlled_bond(unsigned control, unsigned lo, unsigned hi, double angle) {
    if (control == lo || control == hi || lo == hi) {
        throw InvalidArgument("gate targets must be distinct");
    }
    GateOp g;
    g.kind = Kind::ControlledBondRotation;
    g.qubits = {control, lo, hi};
    g.angle = angle;
    return g;
}

GateOp GateOp::adjoint() const {
    GateOp g = *this;
    if (kind == Kind::ControlledBondRotation) {
        g.angle = -angle;
        return g;
    }
    const std::size_t dim = std::size_t{1} << qubits.size();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            g.matrix[r * dim + c] = std::conj(matrix[c * dim + r]);
        }
    }
    return g;
}

Eigen::MatrixXcd GateOp::local_matrix() const {
    if (kind == Kind::ControlledBondRotation) {
        const auto m = kernels::reference::controlled_bond_matrix(angle);
        Eigen::MatrixXcd out(8, 8);
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                out(r, c) = m[8 * r + c];
            }
        }
        return out;
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out(r, c) = matrix[static_cast<std::size_t>(r * dim + c)];
        }
    }
    return out;
}

void apply_gate(StateVector &state, const GateOp &gate) {
    for (unsigned q : gate.qubits) {
        if (q >= state.num_qubits()) {
            throw InvalidArgument("gate target " + std::to_string(q) + " out of range");
        }
    }
    auto amps = state.amplitudes();
    if (gate.kind == GateOp::Kind::ControlledBondRotation) {
        kernels::apply_controlled_bond(amps, gate.qubits[0], gate.qubits[1], gate.qubits[2],
                                       gate.angle);
        return;
    }
    switch (gate.qubits.size()) {
    case 1: {
        kernels::Mat2 m;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        kernels::apply_1q(amps, gate.qubits[0], m);
        break;
    }
    case 2: {
        kernels::Mat4 m;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        kernels::apply_2q(amps, gate.qubits[0], gate.qubits[1], m);
        break;
    }
    case 3: {
        kernels::Mat8 m;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        kernels::apply_3q(amps, gate.qubits[0], gate.qubits[1], gate.qubits[2], m);
        break;
    }
    default:
        throw InvalidArgument("unsupported gate arity");
    }
}

void apply_program(StateVector &state, const Program &program) {
    for (const auto &g : program) {
        apply_gate(state, g);
    }
}

Program adjoint_program(const Program &program) {
    Program out;
    out.reserve(program.size());
    for (auto it = program.rbegin(); it != program.rend(); ++it) {
        out.push_back(it->adjoint());
    }
    return out;
}

namespace gates {

GateOp x(unsigned q) { return GateOp::unitary({q}, {0.0, 1.0, 1.0, 0.0}); }

GateOp hadamard(unsigned q) {
    const double h = 1.0 / std::sqrt(2.0);
    return GateOp::unitary({q}, {h, h, h, -h});
}

GateOp sdg(unsigned q) { return GateOp::unitary({q}, {1.0, 0.0, 0.0, cplx(0, -1)}); }

GateOp ry(unsigned q, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return GateOp::unitary({q}, {c, -s, s, c});
}

GateOp cz(unsigned a, unsigned b) {
    std::vector<cplx> m(16, 0.0);
    m[0] = m[5] = m[10] = 1.0;
    m[15] = -1.0;
    return GateOp::unitary({a, b}, std::move(m));
}

GateOp bond_rotation(unsigned lo, unsigned hi, double angle) {
    // local index = lo + 2 hi; A = 1, B = 2
    std::vector<cplx> m(16, 0.0);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    m[0] = m[15] = 1.0;
    m[4 * 1 + 1] = c;
    m[4 * 1 + 2] = s;
    m[4 * 2 + 1] = -s;
    m[4 * 2 + 2] = c;
    return GateOp::unitary({lo, hi}, std::move(m));
}

GateOp bond_exchange(unsigned lo, unsigned hi, double angle) {
    std::vector<cplx> m(16, 0.0);
    const double c = std::cos(angle);
    const cplx is(0.0, std::sin(angle));
    m[0] = m[15] = 1.0;
    m[4 * 1 + 1] = c;
    m[4 * 1 + 2] = is;
    m[4 * 2 + 1] = is;
    m[4 * 2 + 2] = c;
    return GateOp::unitary({lo, hi}, std::move(m));
}

} // namespace gates

} // namespace dicke
