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

#include "dicke/observable.hpp"

#include <cmath>
#include <string>

#include "dicke/error.hpp"
#include "dicke/kernels.hpp"

namespace dicke {

CompiledObservable::CompiledObservable(const PauliTermSum &op) : n_qubits_(op.num_qubits()) {
    if (!op.is_hermitian()) {
        throw InvalidArgument("observable is not Hermitian");
    }
    terms_.reserve(op.size());
    for (const auto &[s, c] : op.terms()) {
        CompiledTerm t;
        t.coeff = c.real();
        t.string = s;
        t.x_mask = s.x_mask();
        t.z_mask = s.z_mask();
        for (const auto &[q, p] : s.factors()) {
            t.n_y += p == Pauli::Y ? 1 : 0;
        }
        terms_.push_back(std::move(t));
    }
}

double CompiledObservable::expectation(const StateVector &state) const {
    if (state.num_qubits() < n_qubits_) {
        throw InvalidArgument("observable acts on more qubits than the state has");
    }
    cplx acc = 0.0;
    for (const auto &t : terms_) {
        acc += t.coeff *
               kernels::pauli_expectation(state.amplitudes(), t.x_mask, t.z_mask, t.n_y);
    }
    if (std::abs(acc.imag()) > kImaginaryResidueTolerance) {
        throw NumericalError("expectation has imaginary residue " + std::to_string(acc.imag()));
    }
    return acc.real();
}

double expectation(const StateVector &state, const PauliTermSum &op) {
    return CompiledObservable(op).expectation(state);
}

namespace {

bool fits(const PauliString &basis, const PauliString &s) {
    for (const auto &[q, p] : s.factors()) {
        const Pauli b = basis.at(q);
        if (b != Pauli::I && b != p) {
            return false;
        }
    }
    return true;
}

PauliString merge(const PauliString &basis, const PauliString &s) {
    PauliString out = basis;
    for (const auto &[q, p] : s.factors()) {
        if (basis.at(q) == Pauli::I) {
            out = out.multiply(PauliString{{q, p}}).second;
        }
    }
    return out;
}

} // namespace

std::vector<MeasurementGroup> group_qubitwise_commuting(const CompiledObservable &obs) {
    std::vector<MeasurementGroup> groups;
    const auto &terms = obs.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto &s = terms[i].string;
        if (s.is_identity()) {
            continue;
        }
        bool placed = false;
        for (auto &g : groups) {
            if (fits(g.basis, s)) {
                g.basis = merge(g.basis, s);
                g.term_indices.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({s, {i}});
        }
    }
    return groups;
}

Program basis_change_program(const PauliString &basis) {
    Program prog;
    for (const auto &[q, p] : basis.factors()) {
        if (p == Pauli::X) {
            prog.push_back(gates::hadamard(q));
        } else if (p == Pauli::Y) {
            prog.push_back(gates::sdg(q));
            prog.push_back(gates::hadamard(q));
        }
    }
    return prog;
}

} // namespace dicke
