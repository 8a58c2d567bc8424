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
 * Experiment configuration read from a sectioned key = value file.
 *
 * Lists are comma separated; numeric ranges may be written start:stop:step
 * (stop included). Unknown sections or keys are errors. See README.md for
 * the full key table and defaults.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/optimize.hpp"

namespace dicke {

struct ModelConfig {
    int n_atoms = 1;
    int n_modes = 1;
    double omega_atom = 1.0;
    double omega_mode = 1.0;
    /// Coupling g in units of omega_mode.
    std::vector<double> g_over_omega{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

    [[nodiscard]] DickeModel at(double g_over_omega) const;
};

struct AnsatzConfig {
    std::vector<int> depths{1, 2, 3};
    bool per_photon = false;
};

struct OptimizerConfig {
    bool spsa = true;
    SpsaConfig spsa_config;
    bool refine = true;
    RefinerConfig refiner;
    int restarts = 3;
    double perturbation = 0.5;
};

struct NoiseConfig {
    double depolarizing = 0.02;
    double damping = 0.01;
    double readout_p01 = 0.03;
    double readout_p10 = 0.05;
    std::vector<double> lambdas{0.0, 0.1, 1.0};
    std::vector<double> g_over_omega{0.2, 0.5, 0.8};
    std::uint64_t shots = 8192;
    int seeds = 10;
    int n_max = 1;
    int depth = 1;
    /// Run each point both raw and with mitigation + postselection.
    bool compare_mitigation = true;
    int final_evaluations = 5;
};

struct TomographyConfig {
    double g_over_omega = 1.0;
    int n_max = 7;
    std::vector<int> depths{2, 4, 8};
    double re_min = -3.0;
    double re_max = 3.0;
    int n_re = 41;
    double im_min = -3.0;
    double im_max = 3.0;
    int n_im = 41;
    std::string labels = "z";
    std::vector<double> cutoffs{0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0};
    /// "exact" (encoded groundstate) or "vqe".
    std::string source = "exact";
    int ansatz_depth = 3;
    std::uint64_t shots = 0; ///< 0 = exact probabilities
};

struct ReferenceConfig {
    int n_max = 0; ///< 0 selects 60 for one mode, 30 for two, 20 otherwise
    [[nodiscard]] int resolve(int n_modes) const;
};

struct ExperimentConfig {
    ModelConfig model;
    int n_max = 3;
    AnsatzConfig ansatz;
    OptimizerConfig optimizer;
    NoiseConfig noise;
    TomographyConfig tomography;
    ReferenceConfig reference;
    std::uint64_t seed = 1;
    int threads = 0;
    std::filesystem::path out_dir = "out";
    bool dump_hamiltonian = false;

    /// FNV-1a of the config text (empty text when defaults are used).
    std::uint64_t hash = 0xcbf29ce484222325ULL;

    void validate() const;
};

/// Parses config text. Throws ConfigError on malformed input, unknown
/// keys or invalid values.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);

std::uint64_t fnv1a(const std::string &text);

} // namespace dicke
