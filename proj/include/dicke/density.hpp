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
 * Density-matrix simulation with gate-attached noise channels.
 *
 * rho is stored as a vector over 2n "qubits": element (r, c) lives at
 * index r | (c << n). A unitary U acts as U on the row qubits and U^* on
 * the column qubits, so the amplitude kernels apply unchanged.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "dicke/pauli.hpp"
#include "dicke/sampling.hpp"
#include "dicke/statevector.hpp"

namespace dicke {

/// Error probabilities before scaling; `scale` is the global factor lambda.
struct NoiseModel {
    std::vector<double> depolarizing; ///< per qubit, after each gate touching it
    std::vector<double> damping;      ///< per qubit, after each gate touching it
    ReadoutError readout;
    double scale = 1.0;

    static NoiseModel uniform(unsigned n_qubits, double depolarizing, double damping,
                              double p01, double p10);
    static NoiseModel noiseless(unsigned n_qubits);

    /// Probabilities multiplied by `scale` and clamped to [0, 1]; warns on
    /// stderr when clamping was needed.
    [[nodiscard]] NoiseModel scaled() const;
    [[nodiscard]] bool is_noiseless() const;
};

class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(const StateVector &pure);

    [[nodiscard]] unsigned num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << n_; }
    [[nodiscard]] cplx at(std::uint64_t r, std::uint64_t c) const {
        return data_[r | (c << n_)];
    }
    [[nodiscard]] std::vector<cplx> &data() { return data_; }
    [[nodiscard]] const std::vector<cplx> &data() const { return data_; }

    [[nodiscard]] cplx trace() const;
    [[nodiscard]] std::vector<double> probabilities() const;
    [[nodiscard]] double purity() const;
    /// <psi| rho |psi>
    [[nodiscard]] double fidelity(const StateVector &pure) const;
    /// Tr(rho O); O must be Hermitian.
    [[nodiscard]] double expectation(const PauliTermSum &op) const;

  private:
    unsigned n_ = 0;
    std::vector<cplx> data_;
};

void apply_gate(DensityMatrix &rho, const GateOp &gate);
void apply_depolarizing(DensityMatrix &rho, unsigned q, double p);
void apply_amplitude_damping(DensityMatrix &rho, unsigned q, double p);

inline constexpr unsigned kDefaultDensityQubitCap = 8;

/// Each gate is followed by depolarizing and then amplitude damping on
/// the qubits it touches. Probabilities are taken from noise.scaled().
DensityMatrix run_noisy(const Program &program, const NoiseModel &noise,
                        const StateVector &initial,
                        unsigned max_qubits = kDefaultDensityQubitCap);

} // namespace dicke
