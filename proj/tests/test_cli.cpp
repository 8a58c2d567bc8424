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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "catch_amalgamated.hpp"

#include "dicke/config.hpp"
#include "dicke/error.hpp"
#include "dicke/experiments.hpp"

using namespace dicke;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / ("dicke_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(DICKE_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char *kSmallSweep = R"(
[model]
g_over_omega = 0:0.4:0.2

[truncation]
n_max = 2

[ansatz]
depths = 1, 2

[optimizer]
max_trials = 20
restarts = 2
)";

} // namespace

TEST_CASE("Config defaults and overrides", "[config]") {
    const auto def = parse_config("");
    CHECK(def.model.n_atoms == 1);
    CHECK(def.model.g_over_omega.size() == 11);
    CHECK(def.model.g_over_omega.back() == 1.0);
    CHECK(def.ansatz.depths == std::vector<int>{1, 2, 3});

    const auto cfg = parse_config(R"(
; comment
[model]
n_atoms = 2
n_modes = 2
g_over_omega = 0.1, 0.3 ,0.8

[truncation]
n_max = 4

[noise]
lambdas = 0:1:0.25
shots = 1000

[run]
seed = 12345678901234
)");
    CHECK(cfg.model.n_atoms == 2);
    CHECK(cfg.model.g_over_omega == std::vector<double>{0.1, 0.3, 0.8});
    CHECK(cfg.noise.lambdas == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(cfg.noise.shots == 1000);
    CHECK(cfg.seed == 12345678901234ULL);
    CHECK(cfg.tomography.labels == "zz");
    CHECK(cfg.hash != def.hash);
    CHECK(cfg.reference.resolve(1) == 60);
    CHECK(cfg.reference.resolve(2) == 30);
}

TEST_CASE("Config errors", "[config]") {
    CHECK_THROWS_AS(parse_config("[bogus]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nfoo = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nn_atoms = two\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nn_atoms = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\ng_over_omega = 1:0:0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[ansatz]\ndepths = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[tomography]\nsource = magic\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);
}

TEST_CASE("Dump output matches the golden files", "[cli]") {
    const fs::path golden = DICKE_GOLDEN_DIR;
    auto cfg = load_config(golden / "dump.ini");
    cfg.out_dir = scratch("dump");
    cmd_dump(cfg);
    for (const char *name : {"hamiltonian.txt", "ansatz.txt", "state.bin"}) {
        INFO(name);
        CHECK(slurp(cfg.out_dir / name) == slurp(golden / name));
    }
}

TEST_CASE("Sweep output is byte-reproducible", "[cli]") {
    auto cfg = parse_config(kSmallSweep);
    cfg.out_dir = scratch("sweep_a");
    cmd_sweep(cfg);
    const auto first = slurp(cfg.out_dir / "sweep.csv");
    cfg.out_dir = scratch("sweep_b");
    cfg.threads = 2;
    cmd_sweep(cfg);
    CHECK(slurp(cfg.out_dir / "sweep.csv") == first);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config_hash=", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "g_over_omega,d,E_vqe,E_en,E_ex,delta_en,delta_ex,baseline,trials,seed");
    std::getline(lines, line);
    CHECK(line.rfind("0,1,-0.5,-0.5,-0.5,0,0,-0.5,", 0) == 0);
}

TEST_CASE("Command line exit codes", "[cli]") {
    const auto dir = scratch("cli");
    {
        std::ofstream(dir / "small.ini") << kSmallSweep;
        std::ofstream(dir / "bad.ini") << "[model]\nn_atoms = -1\n";
        std::ofstream(dir / "huge.ini") << "[model]\nn_modes = 3\n[reference]\nn_max = 40\n";
    }
    const std::string out = " --out " + (dir / "out").string();
    CHECK(run_cli("exact --config " + (dir / "small.ini").string() + out) == 0);
    CHECK(fs::exists(dir / "out" / "exact.csv"));
    CHECK(run_cli("exact --config " + (dir / "bad.ini").string() + out) == 1);
    CHECK(run_cli("exact --config " + (dir / "missing.ini").string() + out) == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("exact --threads -2" + out) == 1);
    CHECK(run_cli("exact --config " + (dir / "huge.ini").string() + out) == 2);

    CHECK(run_cli("sweep --dump-hamiltonian --seed 3 --threads 1 --config " +
                  (dir / "small.ini").string() + out) == 0);
    CHECK(fs::exists(dir / "out" / "hamiltonian_g0.2.txt"));
    const auto csv = slurp(dir / "out" / "sweep.csv");
    CHECK(csv.find("seed=3\n") != std::string::npos);
}

TEST_CASE("Noisy and Wigner commands write their tables", "[cli]") {
    auto cfg = parse_config(R"(
[noise]
lambdas = 0, 1
g_over_omega = 0.5
seeds = 2
shots = 500
[optimizer]
max_trials = 10
[tomography]
n_max = 3
depths = 1, 2
n_re = 5
n_im = 5
cutoffs = 1, 2
)");
    cfg.out_dir = scratch("noisy");
    cmd_noisy_vqe(cfg);
    cmd_wigner(cfg);
    const auto bands = slurp(cfg.out_dir / "noisy_bands.csv");
    CHECK(bands.find("median_delta_en") != std::string::npos);
    std::istringstream rows(slurp(cfg.out_dir / "noisy_vqe.csv"));
    std::string line;
    int n = 0;
    while (std::getline(rows, line)) {
        ++n;
    }
    CHECK(n == 2 + 2 * 2 * 2);
    CHECK(fs::exists(cfg.out_dir / "wigner_d1.csv"));
    CHECK(fs::exists(cfg.out_dir / "wigner_d2.csv"));
    // the 5x5 grid over [-3, 3] contains alpha = 0 with full retention
    const auto field = slurp(cfg.out_dir / "wigner_d2.csv");
    CHECK(field.find("\n0,0,") != std::string::npos);
    const auto err = slurp(cfg.out_dir / "wigner_error.csv");
    CHECK(err.find("d,abs_alpha,delta_w") != std::string::npos);
}
