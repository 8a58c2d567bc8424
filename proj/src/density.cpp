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

#include "dicke/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <string>

#include "dicke/error.hpp"
#include "dicke/kernels.hpp"
#include "dicke/observable.hpp"

namespace dicke {

NoiseModel NoiseModel::uniform(unsigned n_qubits, double depolarizing, double damping,
                               double p01, double p10) {
    NoiseModel m;
    m.depolarizing.assign(n_qubits, depolarizing);
    m.damping.assign(n_qubits, damping);
    m.readout = ReadoutError::uniform(n_qubits, p01, p10);
    return m;
}

NoiseModel NoiseModel::noiseless(unsigned n_qubits) { return uniform(n_qubits, 0, 0, 0, 0); }

NoiseModel NoiseModel::scaled() const {
    if (!(scale >= 0.0)) {
        throw InvalidArgument("noise scale must be >= 0");
    }
    bool clamped = false;
    auto fix = [&](double p) {
        if (p < 0.0) {
            throw InvalidArgument("negative error probability");
        }
        const double v = p * scale;
        if (v > 1.0) {
            clamped = true;
            return 1.0;
        }
        return v;
    };
    NoiseModel out;
    for (double p : depolarizing) {
        out.depolarizing.push_back(fix(p));
    }
    for (double p : damping) {
        out.damping.push_back(fix(p));
    }
    for (const auto &[a, b] : readout.flips) {
        out.readout.flips.emplace_back(fix(a), fix(b));
    }
    out.scale = 1.0;
    if (clamped) {
        std::cerr << "warning: scaled error probabilities clamped to 1\n";
    }
    return out;
}

bool NoiseModel::is_noiseless() const {
    auto zero = [](double p) { return p == 0.0; };
    return scale == 0.0 || (std::all_of(depolarizing.begin(), depolarizing.end(), zero) &&
                            std::all_of(damping.begin(), damping.end(), zero) &&
                            readout.is_trivial());
}

DensityMatrix::DensityMatrix(const StateVector &pure) : n_(pure.num_qubits()) {
    const std::size_t dim = pure.size();
    data_.resize(dim * dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            data_[r | (c << n_)] = pure[r] * std::conj(pure[c]);
        }
    }
}

cplx DensityMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) {
        t += at(i, i);
    }
    return t;
}

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> p(dimension());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = at(i, i).real();
    }
    return p;
}

double DensityMatrix::purity() const {
    double acc = 0.0;
    for (const auto &v : data_) {
        acc += std::norm(v);
    }
    return acc;
}

double DensityMatrix::fidelity(const StateVector &pure) const {
    if (pure.num_qubits() != n_) {
        throw InvalidArgument("fidelity between objects of different size");
    }
    cplx acc = 0.0;
    for (std::size_t c = 0; c < dimension(); ++c) {
        for (std::size_t r = 0; r < dimension(); ++r) {
            acc += std::conj(pure[r]) * at(r, c) * pure[c];
        }
    }
    return acc.real();
}

double DensityMatrix::expectation(const PauliTermSum &op) const {
    const CompiledObservable obs(op);
    static constexpr cplx iy[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx acc = 0.0;
    // Tr(rho P) = sum_c <c| rho P |c> = sum_c rho(c, c ^ x) * phase(c)
    for (const auto &t : obs.terms()) {
        cplx s = 0.0;
        for (std::uint64_t c = 0; c < dimension(); ++c) {
            const double sign = (std::popcount(c & t.z_mask) & 1) ? -1.0 : 1.0;
            s += sign * at(c, c ^ t.x_mask);
        }
        acc += t.coeff * iy[t.n_y & 3] * s;
    }
    if (std::abs(acc.imag()) > kImaginaryResidueTolerance) {
        throw NumericalError("expectation has imaginary residue " + std::to_string(acc.imag()));
    }
    return acc.real();
}

void apply_gate(DensityMatrix &rho, const GateOp &gate) {
    const unsigned n = rho.num_qubits();
    for (unsigned q : gate.qubits) {
        if (q >= n) {
            throw InvalidArgument("gate target " + std::to_string(q) + " out of range");
        }
    }
    std::span<cplx> v = rho.data();
    if (gate.kind == GateOp::Kind::ControlledBondRotation) {
        // real matrix, so the column copy uses the same angle
        const auto &q = gate.qubits;
        kernels::apply_controlled_bond(v, q[0], q[1], q[2], gate.angle);
        kernels::apply_controlled_bond(v, q[0] + n, q[1] + n, q[2] + n, gate.angle);
        return;
    }
    std::vector<cplx> conj_m(gate.matrix.size());
    std::transform(gate.matrix.begin(), gate.matrix.end(), conj_m.begin(),
                   [](cplx z) { return std::conj(z); });
    const auto &q = gate.qubits;
    switch (q.size()) {
    case 1: {
        kernels::Mat2 m;
        kernels::Mat2 mc;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        std::copy(conj_m.begin(), conj_m.end(), mc.begin());
        kernels::apply_1q(v, q[0], m);
        kernels::apply_1q(v, q[0] + n, mc);
        break;
    }
    case 2: {
        kernels::Mat4 m;
        kernels::Mat4 mc;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        std::copy(conj_m.begin(), conj_m.end(), mc.begin());
        kernels::apply_2q(v, q[0], q[1], m);
        kernels::apply_2q(v, q[0] + n, q[1] + n, mc);
        break;
    }
    case 3: {
        kernels::Mat8 m;
        kernels::Mat8 mc;
        std::copy(gate.matrix.begin(), gate.matrix.end(), m.begin());
        std::copy(conj_m.begin(), conj_m.end(), mc.begin());
        kernels::apply_3q(v, q[0], q[1], q[2], m);
        kernels::apply_3q(v, q[0] + n, q[1] + n, q[2] + n, mc);
        break;
    }
    default:
        throw InvalidArgument("unsupported gate arity");
    }
}

// Superoperators act on the local index r + 2c of the (row, column) bit pair.

void apply_depolarizing(DensityMatrix &rho, unsigned q, double p) {
    if (p == 0.0) {
        return;
    }
    kernels::Mat4 m{};
    m[0] = m[15] = 1.0 - p / 2;
    m[3] = m[12] = p / 2;
    m[5] = m[10] = 1.0 - p;
    kernels::apply_2q(rho.data(), q, q + rho.num_qubits(), m);
}

void apply_amplitude_damping(DensityMatrix &rho, unsigned q, double p) {
    if (p == 0.0) {
        return;
    }
    kernels::Mat4 m{};
    m[0] = 1.0;
    m[3] = p;
    m[15] = 1.0 - p;
    m[5] = m[10] = std::sqrt(1.0 - p);
    kernels::apply_2q(rho.data(), q, q + rho.num_qubits(), m);
}

DensityMatrix run_noisy(const Program &program, const NoiseModel &noise,
                        const StateVector &initial, unsigned max_qubits) {
    const unsigned n = initial.num_qubits();
    if (n > max_qubits) {
        throw ResourceError("density-matrix simulation limited to " +
                            std::to_string(max_qubits) +
                            " qubits; use trajectory sampling for larger registers");
    }
    const NoiseModel eff = noise.scaled();
    if (eff.depolarizing.size() < n || eff.damping.size() < n) {
        throw InvalidArgument("noise model covers fewer qubits than the state");
    }
    DensityMatrix rho(initial);
    for (const auto &g : program) {
        apply_gate(rho, g);
        for (unsigned q : g.qubits) {
            apply_depolarizing(rho, q, eff.depolarizing[q]);
        }
        for (unsigned q : g.qubits) {
            apply_amplitude_damping(rho, q, eff.damping[q]);
        }
    }
    return rho;
}

} // namespace dicke
