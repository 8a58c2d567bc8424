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
 * Sweep runners behind the command-line subcommands, plus their CSV
 * writers. Every runner is deterministic for a given config and seed and
 * returns rows in sweep order independent of the thread count.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/wigner.hpp"

namespace dicke {

struct SweepRow {
    double g_over_omega = 0.0;
    int depth = 0;
    double e_vqe = 0.0;
    double e_en = 0.0;
    double e_ex = 0.0;
    double delta_en = 0.0;
    double delta_ex = 0.0;
    double baseline = 0.0;
    int trials = 0;
    int refiner_steps = 0;
    std::uint64_t seed = 0;
};

/// Noiseless exact-objective VQE for every (g, d). Rows ordered by d,
/// then g. Depths are run in ascending order per g and each depth also
/// starts from the padded optimum of the previous one.
std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg);

struct ExactRow {
    double g_over_omega = 0.0;
    double e_en = 0.0;
    double e_ex = 0.0;
    double baseline = 0.0;
    double delta_ex = 0.0;
    double baseline_error = 0.0; ///< |(baseline - E_ex) / E_ex|
};

std::vector<ExactRow> run_exact(const ExperimentConfig &cfg);

struct NoisyRow {
    double g_over_omega = 0.0;
    double lambda = 0.0;
    bool mitigated = false;
    std::uint64_t seed = 0;
    double e_best = 0.0;  ///< minimum over the SPSA trace
    double e_final = 0.0; ///< fresh estimates at the best parameters, averaged
    double e_en = 0.0;
    double delta_en = 0.0; ///< from e_final
    double retention = 1.0;
    int trials = 0;
};

std::vector<NoisyRow> run_noisy_vqe(const ExperimentConfig &cfg);

struct NoisyBand {
    double g_over_omega = 0.0;
    double lambda = 0.0;
    bool mitigated = false;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double e_en = 0.0;
};

std::vector<NoisyBand> summarize_bands(const std::vector<NoisyRow> &rows);

struct WignerRun {
    WignerGrid grid;
    std::vector<double> exact;
    std::vector<int> depths;
    std::vector<std::vector<WignerSample>> sampled; ///< one field per depth
    struct ErrorPoint {
        int depth;
        double cutoff;
        double delta_w;
    };
    std::vector<ErrorPoint> errors;
};

WignerRun run_wigner(const ExperimentConfig &cfg);

/// `# config_hash=<hex> seed=<n>` then the header row.
void write_csv_preamble(std::ostream &os, const ExperimentConfig &cfg, const std::string &header);

void write_sweep_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<SweepRow> &rows);
void write_exact_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<ExactRow> &rows);
void write_noisy_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<NoisyRow> &rows);
void write_bands_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<NoisyBand> &bands);
void write_wigner_field_csv(std::ostream &os, const ExperimentConfig &cfg, const WignerRun &run,
                            std::size_t depth_index);
void write_wigner_error_csv(std::ostream &os, const ExperimentConfig &cfg, const WignerRun &run);

/// Subcommand bodies: run and write CSV files into cfg.out_dir.
void cmd_sweep(const ExperimentConfig &cfg);
void cmd_exact(const ExperimentConfig &cfg);
void cmd_noisy_vqe(const ExperimentConfig &cfg);
void cmd_wigner(const ExperimentConfig &cfg);
/// Encoded Hamiltonian terms, ansatz gate list and warm-start state for
/// the first g value and the first depth.
void cmd_dump(const ExperimentConfig &cfg);

} // namespace dicke
