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

// Command line front end. Exit codes: 0 success, 1 configuration error,
// 2 numerical or resource failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "dicke/config.hpp"
#include "dicke/error.hpp"
#include "dicke/experiments.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool dump_hamiltonian = false;
};

void add_common(CLI::App *sub, CommonFlags &f) {
    sub->add_option("--config", f.config, "experiment config file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--dump-hamiltonian", f.dump_hamiltonian,
                  "also write the encoded Hamiltonian of every sweep point");
}

dicke::ExperimentConfig resolve(const CommonFlags &f) {
    dicke::ExperimentConfig cfg = f.config.empty() ? dicke::ExperimentConfig{}
                                                   : dicke::load_config(f.config);
    if (!f.out.empty()) {
        cfg.out_dir = f.out;
    }
    if (f.seed) {
        cfg.seed = *f.seed;
    }
    if (f.threads) {
        cfg.threads = *f.threads;
    }
    cfg.dump_hamiltonian = cfg.dump_hamiltonian || f.dump_hamiltonian;
    if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
    }
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Polaron-ansatz VQE for the multimode Dicke model"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::function<void(const dicke::ExperimentConfig &)> action;
    const struct {
        const char *name;
        const char *help;
        void (*fn)(const dicke::ExperimentConfig &);
    } commands[] = {
        {"sweep", "noiseless VQE over the coupling grid and Trotter depths", dicke::cmd_sweep},
        {"noisy-vqe", "SPSA under gate and readout noise", dicke::cmd_noisy_vqe},
        {"wigner", "displaced-parity Wigner tomography", dicke::cmd_wigner},
        {"dump", "write Hamiltonian, ansatz and initial state", dicke::cmd_dump},
        {"exact", "exact diagonalization energies only", dicke::cmd_exact},
    };
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        add_common(sub, flags);
        sub->callback([&action, fn = c.fn] { action = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    dicke::ExperimentConfig cfg;
    try {
        cfg = resolve(flags);
    } catch (const dicke::Error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        action(cfg);
    } catch (const dicke::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dicke::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
