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

#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "dicke/ansatz.hpp"
#include "dicke/error.hpp"
#include "dicke/ses.hpp"
#include "dicke/vqe.hpp"

using namespace dicke;
using Catch::Matchers::WithinAbs;

namespace {

struct Setup {
    DickeModel model;
    FockTruncation trunc;
    QubitLayout layout;
    PauliTermSum h;
    AnsatzSpec spec;

    Setup(int n, int m, int n_max, int d, double g)
        : model(DickeModel::resonant(n, m, 1.0, g)), trunc(FockTruncation::uniform(m, n_max)),
          layout(n, trunc), h(encode_hamiltonian(model, trunc, layout)),
          spec(AnsatzSpec::uniform(n, trunc, d)) {}

    [[nodiscard]] EnergyEstimator estimator(EstimatorOptions o = {}) const {
        return EnergyEstimator(build_ansatz(spec), h, o);
    }
};

/// <g,0| P^+ H P |g,0> with P = exp(f sx (a - a^+)), dense.
double polaron_energy_oracle(double g, int n_max, double f) {
    const auto h = oracle::dicke_hamiltonian({1.0}, {1.0}, Eigen::MatrixXd::Constant(1, 1, g),
                                             {n_max});
    const auto a = oracle::ladder(n_max);
    const std::vector<Eigen::Index> dims{2, n_max + 1};
    const Eigen::MatrixXcd p =
        (f * oracle::embed(dims, 0, oracle::sx()) * oracle::embed(dims, 1, a - a.adjoint()))
            .exp();
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(h.rows());
    vac(0) = 1.0;
    const Eigen::VectorXcd psi = p * vac;
    return (psi.adjoint() * h * psi)(0, 0).real();
}

} // namespace

TEST_CASE("Energy at zero parameters", "[vqe]") {
    for (double g : {0.0, 0.4, 1.0}) {
        const Setup s(2, 1, 2, 2, g);
        const std::vector<double> zero(s.spec.parameter_count(), 0.0);
        CHECK_THAT(s.estimator().estimate(zero).value, WithinAbs(-1.0, 1e-14));
    }
}

TEST_CASE("Decoupled model is minimized at zero", "[vqe]") {
    const Setup s(1, 1, 3, 2, 0.0);
    const auto est = s.estimator();
    VqeOptions opts;
    opts.use_spsa = false;
    opts.restarts = 1;
    const auto res = run_vqe(est.objective(), {0.3, -0.2}, opts);
    CHECK_THAT(res.energy, WithinAbs(-0.5, 1e-10));
}

TEST_CASE("Shot estimate agrees with the exact energy", "[vqe]") {
    const Setup s(1, 1, 3, 2, 0.7);
    EstimatorOptions o;
    o.sampled = true;
    o.shots = 100000;
    o.seed = 17;
    const auto shots = s.estimator(o);
    const auto exact = s.estimator();
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd(0.0, 0.6);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<double> theta(s.spec.parameter_count());
        for (auto &t : theta) {
            t = nd(rng);
        }
        const auto e = shots.estimate(theta, static_cast<std::uint64_t>(trial));
        CHECK(e.std_error > 0.0);
        CHECK(std::abs(e.value - exact.estimate(theta).value) <= 4 * e.std_error);
        CHECK(e.retention == 1.0);
    }
    CHECK(shots.estimate(std::vector<double>{0.2, 0.1}, 5).value ==
          shots.estimate(std::vector<double>{0.2, 0.1}, 5).value);
}

TEST_CASE("Exact-probability sampling reproduces the expectation", "[vqe]") {
    const Setup s(2, 2, 2, 1, 0.5);
    EstimatorOptions o;
    o.sampled = true;
    const auto est = s.estimator(o);
    std::vector<double> theta(s.spec.parameter_count(), 0.3);
    CHECK_THAT(est.estimate(theta).value, WithinAbs(est.exact_energy(theta), 1e-12));
}

TEST_CASE("Encoded ground energy", "[vqe]") {
    auto model = DickeModel::resonant(2, 1, 1.0, 0.0);
    model.atom_freqs = {0.7, 1.1};
    CHECK_THAT(encoded_groundstate_energy(model, FockTruncation::uniform(1, 3)),
               WithinAbs(-0.9, 1e-14));

    // n_max = 1, g = 0.4: the {|g0>, |e1>} block [[-0.5, 0.4], [0.4, 1.5]]
    const double e = encoded_groundstate_energy(DickeModel::resonant(1, 1, 1.0, 0.4),
                                                FockTruncation::uniform(1, 1));
    CHECK_THAT(e, WithinAbs(0.5 - std::sqrt(1.16), 1e-14));
}

TEST_CASE("Polaron baseline", "[vqe]") {
    const auto trunc = FockTruncation::uniform(1, 10);
    CHECK_THAT(polaron_baseline(DickeModel::resonant(1, 1, 1.0, 0.0), trunc).energy,
               WithinAbs(-0.5, 1e-14));

    for (double g : {0.3, 0.8}) {
        const auto model = DickeModel::resonant(1, 1, 1.0, g);
        const auto base = polaron_baseline(model, trunc);
        const double f = base.f[0];
        CHECK_THAT(base.energy, WithinAbs(polaron_energy_oracle(g, 10, f), 1e-12));
        CHECK(polaron_energy_oracle(g, 10, f + 1e-3) >= base.energy);
        CHECK(polaron_energy_oracle(g, 10, f - 1e-3) >= base.energy);
    }

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto model = DickeModel::resonant(1 + trial % 2, 1 + (trial / 2) % 2, 1.0, u(rng));
        const auto t = FockTruncation::uniform(model.n_modes(), 3);
        CHECK(polaron_baseline(model, t).energy >= encoded_groundstate_energy(model, t) - 1e-12);
    }
}

TEST_CASE("Error metrics", "[vqe]") {
    const auto m = error_metrics(-1.0, -1.0, -1.0);
    CHECK(m.delta_en == 0.0);
    CHECK_THAT(error_metrics(-1.0, -1.02, -1.0).delta_ex, WithinAbs(0.02, 1e-15));
    CHECK_THAT(error_metrics(-0.99, -1.0, -1.0).delta_en, WithinAbs(0.01, 1e-15));
    CHECK_THROWS_AS(error_metrics(0.0, 0.0, 0.0), NumericalError);
}

TEST_CASE("Postselection on histograms", "[vqe]") {
    const QubitLayout layout(1, FockTruncation::uniform(1, 2));
    const int one[] = {1};
    const std::uint64_t good = encode_state(one, 0, layout);
    // damping turned the register excitation into the empty pattern
    const std::uint64_t damped = good & ~layout.register_mask(0);
    const auto res = postselect(Histogram{{good, 90}, {damped, 10}}, layout);
    CHECK(res.counts.size() == 1);
    CHECK(res.counts.at(good) == 90);
    CHECK_THAT(res.retention, WithinAbs(0.9, 1e-15));
    CHECK_THROWS_AS(postselect(Histogram{{damped, 5}}, layout), NumericalError);

    const Setup s(1, 1, 3, 2, 0.6);
    EstimatorOptions o;
    o.sampled = true;
    o.postselect = true;
    const std::vector<double> theta{0.3, 0.2};
    CHECK_THAT(s.estimator(o).estimate(theta).retention, WithinAbs(1.0, 1e-12));
}

TEST_CASE("Postselection and mitigation reduce noisy errors", "[vqe][noise]") {
    const Setup s(1, 1, 1, 1, 0.5);
    const double e_en = encoded_groundstate_energy(s.model, s.trunc);
    const std::vector<double> theta = polaron_displacement_params(s.model, s.spec);
    for (double lambda : {0.1, 0.5, 1.0}) {
        auto noise = NoiseModel::uniform(3, 0.02, 0.01, 0.0, 0.0);
        noise.scale = lambda;
        EstimatorOptions raw;
        raw.sampled = true;
        raw.noise = noise;
        EstimatorOptions ps = raw;
        ps.postselect = true;
        const double e_raw = s.estimator(raw).estimate(theta).value;
        const double e_ps = s.estimator(ps).estimate(theta).value;
        CHECK(std::abs(e_ps - e_en) <= std::abs(e_raw - e_en));
    }

    auto noise = NoiseModel::uniform(3, 0.02, 0.01, 0.03, 0.05);
    EstimatorOptions raw;
    raw.sampled = true;
    raw.noise = noise;
    EstimatorOptions mit = raw;
    mit.mitigate_readout = true;
    mit.postselect = true;
    const double e_raw = s.estimator(raw).estimate(theta).value;
    const double e_mit = s.estimator(mit).estimate(theta).value;
    CHECK(std::abs(e_mit - e_en) < std::abs(e_raw - e_en));
}

TEST_CASE("Noise model must cover the register", "[vqe][noise]") {
    const Setup s(1, 1, 1, 1, 0.5);
    EstimatorOptions o;
    o.noise = NoiseModel::uniform(2, 0.01, 0.01, 0.0, 0.0);
    CHECK_THROWS_AS(s.estimator(o), InvalidArgument);
}

TEST_CASE("VQE respects the variational ordering", "[vqe]") {
    for (double g : {0.3, 0.9}) {
        const Setup s(1, 1, 3, 2, g);
        const auto est = s.estimator();
        VqeOptions opts;
        opts.spsa.max_trials = 60;
        const auto res = run_vqe(est.objective(), polaron_displacement_params(s.model, s.spec),
                                 opts);
        const double e_en = encoded_groundstate_energy(s.model, s.trunc);
        const double e_ex = encoded_groundstate_energy(s.model, FockTruncation::uniform(1, 40));
        CHECK(res.energy >= e_en - 1e-9);
        CHECK(e_en >= e_ex - 1e-9);
        CHECK(res.energy < polaron_baseline(s.model, s.trunc).energy);
    }
}

TEST_CASE("VQE is reproducible", "[vqe]") {
    const Setup s(1, 1, 2, 1, 0.6);
    EstimatorOptions o;
    o.sampled = true;
    o.shots = 2000;
    const auto est = s.estimator(o);
    VqeOptions opts;
    opts.spsa.max_trials = 30;
    opts.refine = false;
    opts.seed = 5;
    const auto a = run_vqe(est.objective(), {0.3}, opts);
    const auto b = run_vqe(est.objective(), {0.3}, opts);
    CHECK(a.trace == b.trace);
    CHECK(a.theta == b.theta);
    CHECK(a.energy == b.energy);
}
