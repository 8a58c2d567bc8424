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

#include "dicke/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>
#include <string>

#include "dicke/error.hpp"

namespace dicke {

AnsatzSpec AnsatzSpec::uniform(int n_atoms, const FockTruncation &trunc, int depth,
                               bool per_photon) {
    AnsatzSpec spec;
    spec.n_atoms = n_atoms;
    spec.truncation = trunc;
    spec.trotter_depths.assign(n_atoms, std::vector<int>(trunc.n_modes(), depth));
    spec.per_photon = per_photon;
    spec.atom_layer = n_atoms > 1;
    return spec;
}

void AnsatzSpec::validate() const {
    if (n_atoms < 1) {
        throw InvalidArgument("ansatz needs at least one atom");
    }
    truncation.validate(truncation.n_modes());
    if (static_cast<int>(trotter_depths.size()) != n_atoms) {
        throw InvalidArgument("trotter_depths must have one row per atom");
    }
    for (const auto &row : trotter_depths) {
        if (static_cast<int>(row.size()) != n_modes()) {
            throw InvalidArgument("trotter_depths must have one column per mode");
        }
        for (int d : row) {
            if (d < 1) {
                throw InvalidArgument("Trotter depths must be >= 1");
            }
        }
    }
    if (n_atoms > 1 && !atom_layer) {
        throw InvalidArgument("the atom layer is required for more than one atom");
    }
}

std::size_t AnsatzSpec::polaron_parameter_count() const {
    std::size_t count = 0;
    for (int i = 0; i < n_atoms; ++i) {
        for (int k = 0; k < n_modes(); ++k) {
            const auto d = static_cast<std::size_t>(trotter_depths[i][k]);
            count += per_photon ? d * truncation.max_photons[k] : d;
        }
    }
    return count;
}

std::size_t AnsatzSpec::slot(int i, int k, int s, int n) const {
    std::size_t offset = 0;
    for (int ii = 0; ii < n_atoms; ++ii) {
        for (int kk = 0; kk < n_modes(); ++kk) {
            const auto per_step =
                per_photon ? static_cast<std::size_t>(truncation.max_photons[kk]) : 1;
            if (ii == i && kk == k) {
                return offset + s * per_step + (per_photon ? n : 0);
            }
            offset += trotter_depths[ii][kk] * per_step;
        }
    }
    throw InvalidArgument("slot index out of range");
}

std::size_t AnsatzCircuit::controlled_bond_count() const {
    std::size_t n = 0;
    for (const auto &g : gates) {
        n += g.kind == AnsatzGate::Kind::ControlledBond ? 1 : 0;
    }
    return n;
}

void AnsatzCircuit::dump(std::ostream &os) const {
    char buf[64];
    for (const auto &g : gates) {
        switch (g.kind) {
        case AnsatzGate::Kind::Ry:
            os << "ry";
            break;
        case AnsatzGate::Kind::CZ:
            os << "cz";
            break;
        case AnsatzGate::Kind::ControlledBond:
            os << "cbond";
            break;
        }
        os << ' ';
        for (std::size_t j = 0; j < g.qubits.size(); ++j) {
            os << (j ? "," : "") << g.qubits[j];
        }
        std::snprintf(buf, sizeof(buf), "%.17g", g.weight);
        os << ' ' << g.slot << ' ' << buf << '\n';
    }
}

AnsatzCircuit build_ansatz(const AnsatzSpec &spec) {
    spec.validate();
    AnsatzCircuit circ;
    circ.spec = spec;
    circ.layout = QubitLayout(spec.n_atoms, spec.truncation);
    const std::vector<int> vacuum(spec.n_modes(), 0);
    circ.initial_index = encode_state(vacuum, 0, circ.layout);

    const auto n_atoms = static_cast<unsigned>(spec.n_atoms);
    if (spec.atom_layer) {
        const auto base = static_cast<int>(spec.polaron_parameter_count());
        for (unsigned i = 0; i < n_atoms; ++i) {
            circ.gates.push_back({AnsatzGate::Kind::Ry, {i}, base + static_cast<int>(i), 1.0});
        }
        for (unsigned i = 0; i + 1 < n_atoms; ++i) {
            circ.gates.push_back({AnsatzGate::Kind::CZ, {i, i + 1}, -1, 1.0});
        }
        for (unsigned i = 0; i < n_atoms; ++i) {
            circ.gates.push_back(
                {AnsatzGate::Kind::Ry, {i}, base + static_cast<int>(n_atoms + i), 1.0});
        }
    }

    for (int i = 0; i < spec.n_atoms; ++i) {
        int max_depth = 0;
        for (int d : spec.trotter_depths[i]) {
            max_depth = std::max(max_depth, d);
        }
        for (int s = 0; s < max_depth; ++s) {
            for (int k = 0; k < spec.n_modes(); ++k) {
                const int d = spec.trotter_depths[i][k];
                if (s >= d) {
                    continue;
                }
                const int n_max = spec.truncation.max_photons[k];
                for (int parity = 0; parity < 2; ++parity) {
                    for (int n = parity; n < n_max; n += 2) {
                        AnsatzGate g;
                        g.kind = AnsatzGate::Kind::ControlledBond;
                        g.qubits = {circ.layout.atom_qubit(i), circ.layout.mode_qubit(k, n),
                                    circ.layout.mode_qubit(k, n + 1)};
                        g.slot = static_cast<int>(spec.slot(i, k, s, n));
                        g.weight = std::sqrt(static_cast<double>(n + 1)) / d;
                        circ.gates.push_back(std::move(g));
                    }
                }
            }
        }
    }
    return circ;
}

Program bind_parameters(const AnsatzCircuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.parameter_count()) {
        throw InvalidArgument("expected " + std::to_string(circuit.parameter_count()) +
                              " parameters, got " + std::to_string(theta.size()));
    }
    Program prog;
    prog.reserve(circuit.gates.size());
    for (const auto &g : circuit.gates) {
        const double angle = g.slot >= 0 ? theta[g.slot] * g.weight : 0.0;
        switch (g.kind) {
        case AnsatzGate::Kind::Ry:
            prog.push_back(gates::ry(g.qubits[0], angle));
            break;
        case AnsatzGate::Kind::CZ:
            prog.push_back(gates::cz(g.qubits[0], g.qubits[1]));
            break;
        case AnsatzGate::Kind::ControlledBond:
            prog.push_back(GateOp::controlled_bond(g.qubits[0], g.qubits[1], g.qubits[2], angle));
            break;
        }
    }
    return prog;
}

StateVector prepare_state(const AnsatzCircuit &circuit, std::span<const double> theta) {
    StateVector state =
        StateVector::basis_state(circuit.layout.total_qubits(), circuit.initial_index);
    apply_program(state, bind_parameters(circuit, theta));
    return state;
}

Program build_atom_layer(int n_atoms, std::span<const double> params) {
    if (n_atoms < 2) {
        throw InvalidArgument("the atom layer needs at least two atoms");
    }
    const auto n = static_cast<unsigned>(n_atoms);
    if (params.size() != 2 * n) {
        throw InvalidArgument("the atom layer takes 2N parameters");
    }
    Program prog;
    for (unsigned i = 0; i < n; ++i) {
        prog.push_back(gates::ry(i, params[i]));
    }
    for (unsigned i = 0; i + 1 < n; ++i) {
        prog.push_back(gates::cz(i, i + 1));
    }
    for (unsigned i = 0; i < n; ++i) {
        prog.push_back(gates::ry(i, params[n + i]));
    }
    return prog;
}

double renormalized_atom_frequency(const DickeModel &model, int atom, bool *converged) {
    const double wq = model.atom_freqs[atom];
    double w = wq;
    for (int it = 0; it < 10000; ++it) {
        double sum = 0.0;
        for (int k = 0; k < model.n_modes(); ++k) {
            const double f = model.couplings(atom, k) / (model.mode_freqs[k] + w);
            sum += f * f;
        }
        const double next = 0.5 * w + 0.5 * wq * std::exp(-2.0 * sum);
        if (!std::isfinite(next)) {
            break;
        }
        if (std::abs(next - w) < 1e-10) {
            if (converged) {
                *converged = true;
            }
            return next;
        }
        w = next;
    }
    std::cerr << "warning: renormalized atom frequency did not converge; using bare value\n";
    if (converged) {
        *converged = false;
    }
    return wq;
}

std::vector<double> polaron_displacement_params(const DickeModel &model,
                                                const AnsatzSpec &spec) {
    model.validate();
    if (model.n_atoms() != spec.n_atoms || model.n_modes() != spec.n_modes()) {
        throw InvalidArgument("ansatz and model disagree on atom or mode count");
    }
    std::vector<double> theta(spec.parameter_count(), 0.0);
    for (int i = 0; i < spec.n_atoms; ++i) {
        const double w = renormalized_atom_frequency(model, i);
        for (int k = 0; k < spec.n_modes(); ++k) {
            const double f = model.couplings(i, k) / (model.mode_freqs[k] + w);
            const int n_bonds = spec.per_photon ? spec.truncation.max_photons[k] : 1;
            for (int s = 0; s < spec.trotter_depths[i][k]; ++s) {
                for (int n = 0; n < n_bonds; ++n) {
                    theta[spec.slot(i, k, s, n)] = f;
                }
            }
        }
    }
    return theta;
}

std::vector<double> pad_parameters(const AnsatzSpec &from, const AnsatzSpec &to,
                                   std::span<const double> theta) {
    if (theta.size() != from.parameter_count()) {
        throw InvalidArgument("parameter vector does not match the source ansatz");
    }
    if (from.n_atoms != to.n_atoms || from.n_modes() != to.n_modes() ||
        from.per_photon != to.per_photon || from.atom_layer != to.atom_layer ||
        from.truncation.max_photons != to.truncation.max_photons) {
        throw InvalidArgument("ansatz specs differ beyond Trotter depth");
    }
    std::vector<double> out(to.parameter_count(), 0.0);
    for (int i = 0; i < from.n_atoms; ++i) {
        for (int k = 0; k < from.n_modes(); ++k) {
            const int d = from.trotter_depths[i][k];
            const int d2 = to.trotter_depths[i][k];
            if (d2 < d) {
                throw InvalidArgument("target depth must not be smaller");
            }
            const int n_bonds = from.per_photon ? from.truncation.max_photons[k] : 1;
            for (int s = 0; s < d; ++s) {
                for (int n = 0; n < n_bonds; ++n) {
                    out[to.slot(i, k, s, n)] =
                        theta[from.slot(i, k, s, n)] * static_cast<double>(d2) / d;
                }
            }
        }
    }
    const std::size_t a = from.atom_layer_parameter_count();
    for (std::size_t j = 0; j < a; ++j) {
        out[to.polaron_parameter_count() + j] = theta[from.polaron_parameter_count() + j];
    }
    return out;
}

} // namespace dicke
