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
#include <sstream>
#include <vector>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "dicke/error.hpp"
#include "dicke/model.hpp"
#include "dicke/pauli.hpp"
#include "dicke/ses.hpp"

using namespace dicke;
using Catch::Matchers::WithinAbs;

namespace {

PauliString ps(std::string_view label) { return PauliString::from_label(label); }

DickeModel random_model(int n, int m, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.3, 1.4);
    DickeModel model;
    model.couplings.resize(n, m);
    for (int i = 0; i < n; ++i) {
        model.atom_freqs.push_back(u(rng));
        for (int k = 0; k < m; ++k) {
            model.couplings(i, k) = u(rng) - 0.9;
        }
    }
    for (int k = 0; k < m; ++k) {
        model.mode_freqs.push_back(u(rng));
    }
    return model;
}

} // namespace

TEST_CASE("Pauli products and canonical form", "[pauli]") {
    const auto [phase, s] = ps("XY").multiply(ps("YZ"));
    // X*Y = iZ, Y*Z = iX
    CHECK(phase == cplx(-1.0));
    CHECK(s == ps("ZX"));
    CHECK(ps("IIZ").span() == 3);
    CHECK(ps("III").is_identity());
    CHECK(ps("XIZ").qubitwise_commutes(ps("XYI")));
    CHECK_FALSE(ps("XIZ").qubitwise_commutes(ps("ZII")));

    PauliTermSum s1(3);
    s1.add(0.5, ps("XIZ"));
    s1.add(1e-16, ps("ZZZ"));
    s1.add(cplx(0, 0.25), ps("YII"));
    const auto c1 = s1.canonicalized();
    CHECK(c1.size() == 2);
    CHECK(c1.canonicalized().terms() == c1.terms());
}

TEST_CASE("Pauli sum dense matrices multiply consistently", "[pauli]") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> lab(0, 3);
    std::normal_distribution<double> nd;
    auto rand_sum = [&] {
        PauliTermSum s(3);
        for (int t = 0; t < 5; ++t) {
            std::string l;
            for (int q = 0; q < 3; ++q) {
                l += "IXYZ"[lab(rng)];
            }
            s.add(cplx(nd(rng), nd(rng)), ps(l));
        }
        return s;
    };
    const auto a = rand_sum();
    const auto b = rand_sum();
    CHECK(((a * b).to_dense() - a.to_dense() * b.to_dense()).norm() < 1e-12);
    CHECK(((a + b).to_dense() - a.to_dense() - b.to_dense()).norm() < 1e-12);
    CHECK((a.adjoint().to_dense() - a.to_dense().adjoint()).norm() < 1e-12);

    std::stringstream io;
    a.write(io);
    const auto back = PauliTermSum::read(io);
    CHECK((back.to_dense() - a.to_dense()).norm() == 0.0);
}

TEST_CASE("Raising operator convention", "[pauli]") {
    const auto sp = sigma_plus(0, 1).to_dense();
    CHECK(sp(1, 0) == cplx(1.0));
    CHECK(sp(0, 1) == cplx(0.0));
}

TEST_CASE("Encoded ladder operator", "[ses]") {
    const QubitLayout l1(1, FockTruncation::uniform(1, 1));
    const FockBasis b1(1, FockTruncation::uniform(1, 1));
    const auto a1 = restrict_to_ses(encode_annihilation(0, l1), b1, l1);
    const auto ref1 = oracle::embed({2, 2}, 1, oracle::ladder(1));
    CHECK((a1 - ref1).cwiseAbs().maxCoeff() < 1e-15);

    const QubitLayout l2(1, FockTruncation::uniform(1, 2));
    const FockBasis b2(1, FockTruncation::uniform(1, 2));
    const auto a2 = restrict_to_ses(encode_annihilation(0, l2), b2, l2);
    const int one[] = {1};
    const int two[] = {2};
    CHECK_THAT(a2(static_cast<Eigen::Index>(b2.index(0, one)),
                  static_cast<Eigen::Index>(b2.index(0, two)))
                   .real(),
               WithinAbs(std::sqrt(2.0), 1e-15));

    // a + a^dagger for n_max = 3: bonds (0,1), (1,2), (2,3), each XX + YY
    const QubitLayout l3(1, FockTruncation::uniform(1, 3));
    const auto a3 = encode_annihilation(0, l3);
    const auto q = (a3 + a3.adjoint()).canonicalized();
    CHECK(q.size() == 6);
    for (int n = 0; n < 3; ++n) {
        std::string xx(5, 'I');
        std::string yy(5, 'I');
        xx[1 + n] = xx[2 + n] = 'X';
        yy[1 + n] = yy[2 + n] = 'Y';
        const double w = std::sqrt(n + 1.0) / 2;
        CHECK_THAT(q.coefficient(ps(xx)).real(), WithinAbs(w, 1e-15));
        CHECK_THAT(q.coefficient(ps(yy)).real(), WithinAbs(w, 1e-15));
    }
    CHECK(a3.max_weight() <= 2);
}

TEST_CASE("Decoupled encoded Hamiltonian holds only Z strings", "[ses]") {
    for (int n_max : {1, 2, 5}) {
        const auto trunc = FockTruncation::uniform(2, n_max);
        const QubitLayout layout(2, trunc);
        const auto h = encode_hamiltonian(DickeModel::resonant(2, 2, 1.0, 0.0), trunc, layout);
        std::size_t non_identity = 0;
        for (const auto &[s, c] : h.terms()) {
            CHECK(s.x_mask() == 0);
            non_identity += s.is_identity() ? 0 : 1;
        }
        CHECK(non_identity == static_cast<std::size_t>(2 + 2 * n_max));
    }
}

TEST_CASE("Rabi coupling terms at a single bond", "[ses]") {
    const auto trunc = FockTruncation::uniform(1, 1);
    const QubitLayout layout(1, trunc);
    const auto h = encode_hamiltonian(DickeModel::resonant(1, 1, 1.0, 0.5), trunc, layout);
    CHECK(h.coefficient(ps("XXX")) == cplx(0.25));
    CHECK(h.coefficient(ps("XYY")) == cplx(0.25));
    CHECK(h.coefficient(ps("XXY")) == cplx(0.0));
}

TEST_CASE("SES restriction equals the Fock operator", "[ses]") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> nm(1, 3);
    for (int trial = 0; trial < 16; ++trial) {
        const int n = 1 + trial % 2;
        const int m = 1 + (trial / 2) % 2;
        const auto model = random_model(n, m, rng);
        std::vector<int> mx(m);
        for (auto &x : mx) {
            x = nm(rng);
        }
        const FockTruncation trunc{mx};
        const QubitLayout layout(n, trunc);
        const auto h = encode_hamiltonian(model, trunc, layout);
        CHECK(h.is_hermitian());
        CHECK(h.max_weight() <= 3);
        const auto fock = build_fock_hamiltonian(model, trunc);
        const auto restricted = restrict_to_ses(h, fock.basis, layout);
        CHECK((restricted - fock.dense()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("Fig. 1(a) spectrum of the encoded Hamiltonian", "[ses]") {
    const auto trunc = FockTruncation::uniform(1, 3);
    const QubitLayout layout(1, trunc);
    for (double g : {0.2, 0.6, 1.0}) {
        const auto model = DickeModel::resonant(1, 1, 1.0, g);
        const auto fock = build_fock_hamiltonian(model, trunc);
        const auto restricted = restrict_to_ses(encode_hamiltonian(model, trunc, layout),
                                                fock.basis, layout);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(restricted, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> b(fock.dense(), Eigen::EigenvaluesOnly);
        CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("Term count grows linearly with the register size", "[ses]") {
    std::vector<std::size_t> counts;
    for (int n_max = 1; n_max <= 8; ++n_max) {
        const auto trunc = FockTruncation::uniform(1, n_max);
        counts.push_back(
            encode_hamiltonian(DickeModel::resonant(1, 1, 1.0, 0.3), trunc, QubitLayout(1, trunc))
                .size());
    }
    for (std::size_t i = 2; i < counts.size(); ++i) {
        CHECK(counts[i] - counts[i - 1] == counts[1] - counts[0]);
    }
}

TEST_CASE("Basis state encoding", "[ses]") {
    const QubitLayout l3(1, FockTruncation::uniform(1, 3));
    const int zero[] = {0};
    const int two[] = {2};
    // register starts at qubit 1; atom excitation bit 0 means |g> = qubit 1
    CHECK(encode_state(zero, 0, l3) == (0b1u | (0b0001u << 1)));
    CHECK(encode_state(two, 0, l3) == (0b1u | (0b0100u << 1)));

    const QubitLayout l1(1, FockTruncation::uniform(1, 1));
    const int one[] = {1};
    // |e, 1>: atom qubit 0, register pattern with the 1 at position 1
    CHECK(encode_state(one, 1, l1) == 0b100u);

    const FockBasis basis(2, FockTruncation{{2, 3}});
    const QubitLayout layout(2, basis.truncation());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const auto q = fock_to_qubit_index(i, basis, layout);
        CHECK(in_ses(q, layout));
        CHECK(qubit_to_fock_index(q, basis, layout) == i);
    }
}

TEST_CASE("SES membership", "[ses]") {
    const QubitLayout layout(1, FockTruncation::uniform(1, 3));
    auto reg = [](unsigned pattern) { return static_cast<std::uint64_t>(pattern) << 1; };
    CHECK(in_ses(reg(0b0010), layout));
    CHECK_FALSE(in_ses(reg(0b0000), layout));
    CHECK_FALSE(in_ses(reg(0b0110), layout));
    CHECK(in_ses(reg(0b0010) | 1, layout));
}

TEST_CASE("Fock state embedding round trip", "[ses]") {
    std::mt19937_64 rng(9);
    const FockBasis basis(2, FockTruncation{{2, 1}});
    const QubitLayout layout(2, basis.truncation());
    const auto v = oracle::random_state(static_cast<Eigen::Index>(basis.dimension()), rng);
    const auto amps = embed_fock_state(v, basis, layout);
    CHECK(amps.size() == (std::size_t{1} << layout.total_qubits()));
    CHECK((extract_fock_state(amps, basis, layout) - v).norm() == 0.0);
}
