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

#include "dicke/density.hpp"
#include "dicke/error.hpp"
#include "dicke/observable.hpp"
#include "dicke/sampling.hpp"
#include "dicke/statevector.hpp"

using namespace dicke;
using Catch::Matchers::WithinAbs;

namespace {

StateVector random_sv(unsigned n, std::mt19937_64 &rng) {
    const auto v = oracle::random_state(Eigen::Index{1} << n, rng);
    return StateVector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXcd to_matrix(const DensityMatrix &rho) {
    const auto d = static_cast<Eigen::Index>(rho.dimension());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = rho.at(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c));
        }
    }
    return m;
}

Eigen::MatrixXcd kraus(const Eigen::MatrixXcd &rho, const std::vector<Eigen::MatrixXcd> &ks,
                       unsigned q, unsigned n) {
    std::vector<Eigen::Index> dims(n, 2);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto &k : ks) {
        const auto full = oracle::embed(dims, q, k);
        out += full * rho * full.adjoint();
    }
    return out;
}

DensityMatrix mixed_state(std::mt19937_64 &rng) {
    // a pure 2-qubit state followed by a little damping gives a mixed one
    DensityMatrix rho(random_sv(2, rng));
    apply_amplitude_damping(rho, 1, 0.3);
    return rho;
}

std::vector<double> probs(const StateVector &s) { return s.probabilities(); }

} // namespace

TEST_CASE("Noiseless density evolution equals the state vector", "[noise]") {
    std::mt19937_64 rng(1);
    const auto init = random_sv(3, rng);
    const Program p{gates::ry(0, 0.3), GateOp::controlled_bond(0, 1, 2, 0.7), gates::cz(1, 2),
                    gates::bond_exchange(1, 2, -0.4)};
    auto s = init;
    apply_program(s, p);
    const auto rho = run_noisy(p, NoiseModel::noiseless(3), init);
    CHECK_THAT(rho.fidelity(s), WithinAbs(1.0, 1e-12));
    const Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), 8);
    CHECK((to_matrix(rho) - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    auto scaled = NoiseModel::uniform(3, 0.1, 0.1, 0.05, 0.05);
    scaled.scale = 0.0;
    CHECK(scaled.is_noiseless());
    CHECK(scaled.scaled().is_noiseless());
    CHECK_THAT(run_noisy(p, scaled, init).fidelity(s), WithinAbs(1.0, 1e-12));
}

TEST_CASE("Full depolarizing gives the maximally mixed state", "[noise]") {
    const auto rho = run_noisy({gates::ry(0, 0.9)}, NoiseModel::uniform(1, 1.0, 0.0, 0.0, 0.0),
                               StateVector(1));
    CHECK_THAT(rho.at(0, 0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(rho.at(1, 1).real(), WithinAbs(0.5, 1e-15));
    CHECK(std::abs(rho.at(0, 1)) < 1e-15);
    CHECK_THAT(rho.purity(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("Amplitude damping of the excited state", "[noise]") {
    for (double p : {0.0, 0.1, 0.5, 1.0}) {
        const auto rho = run_noisy({gates::x(0)}, NoiseModel::uniform(1, 0.0, p, 0.0, 0.0),
                                   StateVector(1));
        CHECK_THAT(rho.at(0, 0).real(), WithinAbs(p, 1e-15));
        CHECK_THAT(rho.at(1, 1).real(), WithinAbs(1.0 - p, 1e-15));
    }
}

TEST_CASE("Channels match their Kraus sums", "[noise]") {
    std::mt19937_64 rng(2);
    const double p = 0.23;
    for (unsigned q = 0; q < 2; ++q) {
        auto rho = mixed_state(rng);
        const auto before = to_matrix(rho);

        auto dep = rho;
        apply_depolarizing(dep, q, p);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        y(0, 1) = cplx(0, -1);
        y(1, 0) = cplx(0, 1);
        z(0, 0) = 1.0;
        z(1, 1) = -1.0;
        const std::vector<Eigen::MatrixXcd> dk{std::sqrt(1 - 3 * p / 4) * id,
                                               std::sqrt(p / 4) * x, std::sqrt(p / 4) * y,
                                               std::sqrt(p / 4) * z};
        CHECK((to_matrix(dep) - kraus(before, dk, q, 2)).cwiseAbs().maxCoeff() < 1e-14);

        auto amp = rho;
        apply_amplitude_damping(amp, q, p);
        Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
        k0(0, 0) = 1.0;
        k0(1, 1) = std::sqrt(1 - p);
        k1(0, 1) = std::sqrt(p);
        CHECK((to_matrix(amp) - kraus(before, {k0, k1}, q, 2)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK_THAT(amp.trace().real(), WithinAbs(1.0, 1e-14));
    }
}

TEST_CASE("Density expectation values", "[noise]") {
    std::mt19937_64 rng(3);
    const auto s = random_sv(3, rng);
    PauliTermSum op(3);
    op.add(0.7, PauliString::from_label("XYZ"));
    op.add(-0.2, PauliString::from_label("IZY"));
    op.add(1.1, PauliString::from_label("III"));
    CHECK_THAT(DensityMatrix(s).expectation(op), WithinAbs(expectation(s, op), 1e-13));
}

TEST_CASE("Density simulation respects the qubit cap", "[noise]") {
    CHECK_THROWS_AS(run_noisy({}, NoiseModel::noiseless(9), StateVector(9)), ResourceError);
    CHECK_THROWS_AS(run_noisy({gates::x(2)}, NoiseModel::noiseless(2), StateVector(3)),
                    InvalidArgument);
}

TEST_CASE("Readout error identity and inverse", "[noise][readout]") {
    std::mt19937_64 rng(4);
    const auto p = probs(random_sv(3, rng));
    const auto none = ReadoutError::uniform(3, 0.0, 0.0);
    CHECK(none.is_trivial());
    const auto same = apply_readout_error(p, none);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(same[i] == p[i]);
    }

    ReadoutError err;
    err.flips = {{0.02, 0.05}, {0.1, 0.03}, {0.04, 0.08}};
    const auto corrupted = apply_readout_error(p, err);
    CHECK(total_variation(corrupted, p) > 1e-3);
    const auto back = mitigate_readout(corrupted, err);
    CHECK(total_variation(back, p) < 1e-8);

    ReadoutError singular;
    singular.flips = {{0.5, 0.5}};
    CHECK_THROWS_AS(mitigate_readout(std::vector<double>{0.5, 0.5}, singular), InvalidArgument);
}

TEST_CASE("Mitigation reduces the sampled distance", "[noise][readout]") {
    const auto err = ReadoutError::uniform(3, 0.02, 0.02);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto truth = probs(random_sv(3, rng));
        const auto raw = sample_from_distribution(truth, 100000, 100 + trial);
        const auto noisy = apply_readout_error(raw, err, 200 + trial);
        const auto measured = to_distribution(noisy, 3);
        const auto fixed = mitigate_readout(measured, err);
        CHECK(total_variation(fixed, truth) < total_variation(measured, truth));
        double sum = 0.0;
        for (double x : fixed) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("Per-shot readout flips follow the confusion matrix", "[noise][readout]") {
    ReadoutError err;
    err.flips = {{0.1, 0.3}};
    Histogram h{{0, 50000}, {1, 50000}};
    const auto out = to_distribution(apply_readout_error(h, err, 9), 1);
    const auto exact = apply_readout_error(std::vector<double>{0.5, 0.5}, err);
    CHECK_THAT(out[1], WithinAbs(exact[1], 4 * std::sqrt(0.25 / 1e5)));
}

TEST_CASE("Simplex projection", "[noise][readout]") {
    const auto p = project_to_simplex(std::vector<double>{0.6, 0.7, -0.2});
    CHECK_THAT(p[0], WithinAbs(0.45, 1e-15));
    CHECK_THAT(p[1], WithinAbs(0.55, 1e-15));
    CHECK(p[2] == 0.0);
}
