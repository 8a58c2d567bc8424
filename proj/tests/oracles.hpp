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

// Independent dense reference constructions shared by the tests. Nothing
// here calls into the library under test beyond plain data types.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;

inline MatrixXcd identity(Eigen::Index n) { return MatrixXcd::Identity(n, n); }

/// Truncated annihilation operator on {|0>, ..., |n_max>}.
inline MatrixXcd ladder(int n_max) {
    MatrixXcd a = MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n < n_max; ++n) {
        a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    return a;
}

/// Atom operators on (|g>, |e>) with index 0 = g.
inline MatrixXcd sz() {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

inline MatrixXcd sx() {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

/// Embeds a one-factor operator into the tensor product. Factor 0 is the
/// fastest-varying index, matching the library basis ordering.
inline MatrixXcd embed(const std::vector<Eigen::Index> &dims, std::size_t which,
                       const MatrixXcd &op) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (std::size_t f = 0; f < dims.size(); ++f) {
        const MatrixXcd piece = f == which ? op : identity(dims[f]);
        out = Eigen::kroneckerProduct(piece, out).eval();
    }
    return out;
}

/// Dense Dicke Hamiltonian, factors ordered (atom_0, ..., atom_{N-1},
/// mode_0, ..., mode_{M-1}).
inline MatrixXcd dicke_hamiltonian(const std::vector<double> &wq, const std::vector<double> &wk,
                                   const Eigen::MatrixXd &g, const std::vector<int> &n_max) {
    const std::size_t n = wq.size();
    const std::size_t m = wk.size();
    std::vector<Eigen::Index> dims(n, 2);
    for (int x : n_max) {
        dims.push_back(x + 1);
    }
    Eigen::Index dim = 1;
    for (auto d : dims) {
        dim *= d;
    }
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        h += 0.5 * wq[i] * embed(dims, i, sz());
    }
    for (std::size_t k = 0; k < m; ++k) {
        const MatrixXcd a = ladder(n_max[k]);
        h += wk[k] * embed(dims, n + k, a.adjoint() * a);
        for (std::size_t i = 0; i < n; ++i) {
            h += g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                 embed(dims, i, sx()) * embed(dims, n + k, a + a.adjoint());
        }
    }
    return h;
}

inline double lowest_eigenvalue(const MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

inline Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = cplx(nd(rng), nd(rng));
    }
    return v.normalized();
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
inline MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    MatrixXcd z(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            z(r, c) = cplx(nd(rng), nd(rng));
        }
    }
    Eigen::HouseholderQR<MatrixXcd> qr(z);
    return qr.householderQ();
}

} // namespace oracle
