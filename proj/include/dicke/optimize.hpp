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
 * SPSA and a deterministic local refiner.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dicke {

/// Objective value at theta. `eval_id` numbers the calls of one run and
/// is used to derive per-evaluation seeds for stochastic objectives.
using Objective = std::function<double(std::span<const double> theta, std::uint64_t eval_id)>;

/// Gains a_t = a / (t + 1 + A)^alpha and c_t = c / (t + 1)^gamma.
struct SpsaConfig {
    int max_trials = 150;
    double a = 0.0;       ///< <= 0 selects calibration from probe pairs
    double c = 0.1;
    double A = -1.0;      ///< < 0 selects 10% of max_trials
    double alpha = 0.602;
    double gamma = 0.101;
    int calibration_pairs = 5;
    double target_step = 0.2; ///< first-step size the calibration aims for
    int final_average = 1;    ///< evaluations averaged at the final point
    std::uint64_t seed = 1;

    void validate() const;
};

struct OptimizerResult {
    std::vector<double> theta;      ///< parameters of the best trace entry
    double value = 0.0;             ///< minimum over the trace
    std::vector<double> trace;      ///< one entry per trial, then the final evaluation
    std::vector<double> final_theta;
    int iterations = 0;             ///< SPSA trials or refiner steps
    std::uint64_t evaluations = 0;
    bool aborted = false;           ///< objective returned NaN
    double a = 0.0;                 ///< effective SPSA gain after calibration
};

/// One trial is one (+, -) perturbation pair; its trace entry is the mean
/// of the two values. Deterministic for a given seed and objective.
OptimizerResult spsa_minimize(const Objective &f, std::vector<double> theta0,
                              const SpsaConfig &cfg);

struct RefinerConfig {
    int max_sweeps = 8;          ///< golden-section coordinate sweeps
    double initial_radius = 0.5; ///< bracket half-width of the first sweep
    double tolerance = 1e-10;    ///< stop when a step gains less than this
    bool polish = true;          ///< quasi-Newton polish after the sweeps
    int max_polish_iterations = 200;
    double fd_step = 1e-6;       ///< central-difference step of the polish gradient
};

/// Golden-section coordinate descent (one sweep = one step) followed by a
/// BFGS polish with finite-difference gradients (one iteration = one
/// step). `iterations` reports the total number of steps. The objective
/// must be deterministic.
OptimizerResult refine_minimize(const Objective &f, std::vector<double> theta0,
                                const RefinerConfig &cfg);

/// Deterministic 64-bit mixing of a base seed and a stream index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace dicke
