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
 * Shot sampling and tensor-product readout error.
 */

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dicke/statevector.hpp"

namespace dicke {

/// Bitstring (little-endian index) -> count.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Dense probability vector over 2^n outcomes.
using Distribution = std::vector<double>;

/// Multinomial draw; deterministic for a given seed.
Histogram sample_from_distribution(std::span<const double> probs, std::uint64_t shots,
                                   std::uint64_t seed);

/// Applies `basis_change` to a copy of `state` and samples the result.
Histogram sample_counts(const StateVector &state, const Program &basis_change,
                        std::uint64_t shots, std::uint64_t seed);

Distribution to_distribution(const Histogram &counts, unsigned n_qubits);

/// Per-qubit flip probabilities (p(read 1 | 0), p(read 0 | 1)).
struct ReadoutError {
    std::vector<std::pair<double, double>> flips;

    [[nodiscard]] bool is_trivial() const;
    [[nodiscard]] unsigned num_qubits() const { return static_cast<unsigned>(flips.size()); }
    static ReadoutError uniform(unsigned n_qubits, double p01, double p10);
};

/// Confusion map applied to an exact distribution.
Distribution apply_readout_error(std::span<const double> probs, const ReadoutError &err);

/// Flips each recorded bit independently; deterministic for a given seed.
Histogram apply_readout_error(const Histogram &counts, const ReadoutError &err,
                              std::uint64_t seed);

/// Inverse of the confusion map. When the inverse leaves the simplex the
/// result is the least-squares solution restricted to the simplex.
/// Throws InvalidArgument when a per-qubit confusion matrix is singular.
Distribution mitigate_readout(std::span<const double> measured, const ReadoutError &err);

/// Total-variation distance.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Euclidean projection onto the probability simplex.
Distribution project_to_simplex(std::span<const double> v);

} // namespace dicke
