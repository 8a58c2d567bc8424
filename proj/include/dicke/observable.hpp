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
 * Exact expectation values and measurement grouping for Pauli sums.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "dicke/pauli.hpp"
#include "dicke/statevector.hpp"

namespace dicke {

/// Residual imaginary part tolerated in an expectation value.
inline constexpr double kImaginaryResidueTolerance = 1e-10;

struct CompiledTerm {
    double coeff = 0.0;
    PauliString string;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    int n_y = 0;
};

/// A Hermitian Pauli sum flattened into masks for fast evaluation.
class CompiledObservable {
  public:
    CompiledObservable() = default;
    /// Throws InvalidArgument for non-Hermitian input.
    explicit CompiledObservable(const PauliTermSum &op);

    [[nodiscard]] const std::vector<CompiledTerm> &terms() const { return terms_; }
    [[nodiscard]] unsigned num_qubits() const { return n_qubits_; }

    [[nodiscard]] double expectation(const StateVector &state) const;

  private:
    unsigned n_qubits_ = 0;
    std::vector<CompiledTerm> terms_;
};

double expectation(const StateVector &state, const PauliTermSum &op);

/// Terms that can be read off one measurement setting.
struct MeasurementGroup {
    /// Per-qubit basis; identity where no term acts.
    PauliString basis;
    std::vector<std::size_t> term_indices;
};

/// Greedy qubit-wise-commuting grouping in term order. The identity term
/// is left out since it needs no measurement.
std::vector<MeasurementGroup> group_qubitwise_commuting(const CompiledObservable &obs);

/// Gates rotating each measured qubit of `basis` into the Z basis.
Program basis_change_program(const PauliString &basis);

} // namespace dicke
