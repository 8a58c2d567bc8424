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
 * Variational loop: energy estimation, restarts, reference energies and
 * error metrics.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dicke/ansatz.hpp"
#include "dicke/density.hpp"
#include "dicke/model.hpp"
#include "dicke/observable.hpp"
#include "dicke/optimize.hpp"
#include "dicke/sampling.hpp"
#include "dicke/ses.hpp"

namespace dicke {

/// How E(theta) is evaluated.
///
/// `sampled == false` gives Tr(rho H) directly (state vector, or density
/// matrix when `noise` is set). `sampled == true` measures every
/// qubit-wise-commuting group separately: readout error is applied when
/// noisy, `shots` outcomes are drawn (0 keeps exact probabilities), the
/// distribution is optionally mitigated and then optionally postselected
/// on the registers measured entirely in Z.
struct EstimatorOptions {
    bool sampled = false;
    std::uint64_t shots = 0;
    std::optional<NoiseModel> noise;
    bool mitigate_readout = false;
    bool postselect = false;
    std::uint64_t seed = 1;
    unsigned density_qubit_cap = kDefaultDensityQubitCap;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0; ///< 0 in exact-probability mode
    double retention = 1.0; ///< smallest retained fraction over groups
};

class EnergyEstimator {
  public:
    EnergyEstimator(AnsatzCircuit circuit, const PauliTermSum &hamiltonian,
                    EstimatorOptions options = {});

    /// Throws NumericalError when postselection keeps nothing.
    [[nodiscard]] Estimate estimate(std::span<const double> theta,
                                    std::uint64_t eval_id = 0) const;
    /// Noiseless exact expectation regardless of the options.
    [[nodiscard]] double exact_energy(std::span<const double> theta) const;
    [[nodiscard]] StateVector state(std::span<const double> theta) const;
    [[nodiscard]] Objective objective() const;

    [[nodiscard]] const AnsatzCircuit &circuit() const { return circuit_; }
    [[nodiscard]] const EstimatorOptions &options() const { return options_; }
    [[nodiscard]] const std::vector<MeasurementGroup> &groups() const { return groups_; }

  private:
    [[nodiscard]] Estimate estimate_groups(std::span<const double> theta,
                                           std::uint64_t eval_id) const;

    AnsatzCircuit circuit_;
    CompiledObservable observable_;
    EstimatorOptions options_;
    std::vector<MeasurementGroup> groups_;
    double identity_coeff_ = 0.0;
};

struct PostselectResult {
    Histogram counts;
    double retention = 0.0;
};

/// Drops bitstrings with any mode register outside SES. Throws
/// NumericalError when nothing is retained.
PostselectResult postselect(const Histogram &counts, const QubitLayout &layout);

/// In-place version on a dense distribution restricted to the registers
/// selected by `mode_filter`; renormalizes and returns the retained weight.
double postselect(Distribution &probs, const QubitLayout &layout,
                  std::span<const bool> mode_filter);

struct VqeOptions {
    bool use_spsa = true;
    SpsaConfig spsa;
    bool refine = true;
    RefinerConfig refiner;
    int restarts = 3;                 ///< warm start plus (restarts - 1) perturbed starts
    double perturbation_scale = 0.5;  ///< std-dev of the Gaussian start perturbations
    std::uint64_t seed = 1;
    std::vector<std::vector<double>> extra_starts;
};

struct VqeResult {
    std::vector<double> theta;
    double energy = 0.0;
    std::vector<double> trace; ///< trace of the winning start
    int trials = 0;            ///< SPSA trials of the winning start
    int refiner_steps = 0;
    std::uint64_t evaluations = 0; ///< over all starts
    int best_start = 0;
    bool aborted = false;
    std::uint64_t seed = 0;
};

VqeResult run_vqe(const Objective &objective, const std::vector<double> &warm_start,
                  const VqeOptions &options);

/// Lowest eigenvalue of the truncated Fock Hamiltonian. With `cross_check`
/// the SES-restricted encoded Hamiltonian is diagonalized as well and the
/// two must agree to 1e-9 (skipped above 2048 states).
double encoded_groundstate_energy(const DickeModel &model, const FockTruncation &trunc,
                                  const SolverLimits &limits = {}, bool cross_check = true);

struct PolaronBaseline {
    double energy = 0.0;
    std::vector<double> f; ///< f_ik, row-major over (atom, mode)
};

/// <vac| P^+ H P |vac> in the truncated space with P = exp(sum_ik f_ik
/// sx_i (a_k - a_k^+)) and f minimized. For N > 1 this is the per-atom
/// product heuristic.
PolaronBaseline polaron_baseline(const DickeModel &model, const FockTruncation &trunc);

struct ErrorMetrics {
    double delta_en = 0.0;
    double delta_ex = 0.0;
};

ErrorMetrics error_metrics(double e_vqe, double e_en, double e_ex);

} // namespace dicke
