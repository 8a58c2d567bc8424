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

#include "dicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/error.hpp"

namespace dicke {

void DickeModel::validate() const {
    if (atom_freqs.empty() || mode_freqs.empty()) {
        throw InvalidArgument("model needs at least one atom and one mode");
    }
    if (couplings.rows() != n_atoms() || couplings.cols() != n_modes()) {
        throw InvalidArgument("coupling matrix must be n_atoms x n_modes");
    }
    auto positive = [](double w) { return std::isfinite(w) && w > 0.0; };
    if (!std::all_of(atom_freqs.begin(), atom_freqs.end(), positive) ||
        !std::all_of(mode_freqs.begin(), mode_freqs.end(), positive)) {
        throw InvalidArgument("frequencies must be finite and strictly positive");
    }
    for (Eigen::Index i = 0; i < couplings.size(); ++i) {
        const double g = couplings.data()[i];
        if (!std::isfinite(g)) {
            throw InvalidArgument("couplings must be finite");
        }
    }
}

DickeModel DickeModel::resonant(int n_atoms, int n_modes, double omega, double g) {
    if (n_atoms < 1 || n_modes < 1) {
        throw InvalidArgument("model needs at least one atom and one mode");
    }
    DickeModel m;
    m.atom_freqs.assign(n_atoms, omega);
    m.mode_freqs.assign(n_modes, omega);
    m.couplings = Eigen::MatrixXd::Constant(n_atoms, n_modes, g);
    m.validate();
    return m;
}

FockTruncation FockTruncation::uniform(int n_modes, int n_max) {
    FockTruncation t;
    t.max_photons.assign(n_modes, n_max);
    return t;
}

void FockTruncation::validate(int n_modes_expected) const {
    if (n_modes() != n_modes_expected) {
        throw InvalidArgument("truncation has " + std::to_string(n_modes()) +
                              " modes, model has " + std::to_string(n_modes_expected));
    }
    for (int n : max_photons) {
        if (n < 1) {
            throw InvalidArgument("max photon number must be >= 1");
        }
    }
}

FockBasis::FockBasis(int n_atoms, FockTruncation trunc) : n_atoms_(n_atoms), trunc_(std::move(trunc)) {
    if (n_atoms < 1 || n_atoms > 30) {
        throw InvalidArgument("atom count out of range");
    }
    std::size_t stride = atom_dimension();
    strides_.reserve(trunc_.max_photons.size());
    for (int n_max : trunc_.max_photons) {
        strides_.push_back(stride);
        stride *= static_cast<std::size_t>(n_max + 1);
    }
    dim_ = stride;
}

std::size_t FockBasis::index(std::uint64_t atom_excitations, std::span<const int> photons) const {
    if (photons.size() != strides_.size() || atom_excitations >= atom_dimension()) {
        throw InvalidArgument("basis label inconsistent with truncation");
    }
    std::size_t idx = atom_excitations;
    for (std::size_t k = 0; k < photons.size(); ++k) {
        if (photons[k] < 0 || photons[k] > trunc_.max_photons[k]) {
            throw InvalidArgument("photon number out of range");
        }
        idx += strides_[k] * static_cast<std::size_t>(photons[k]);
    }
    return idx;
}

double FockOperatorMatrix::max_abs() const {
    double m = 0.0;
    for (int c = 0; c < matrix.outerSize(); ++c) {
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(matrix, c); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

double FockOperatorMatrix::hermiticity_defect() const {
    Eigen::SparseMatrix<cplx> diff = matrix - Eigen::SparseMatrix<cplx>(matrix.adjoint());
    double m = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c) {
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(diff, c); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

FockOperatorMatrix build_fock_hamiltonian(const DickeModel &model, const FockTruncation &trunc,
                                          const SolverLimits &limits) {
    model.validate();
    trunc.validate(model.n_modes());
    FockBasis basis(model.n_atoms(), trunc);
    const std::size_t dim = basis.dimension();
    if (dim > limits.max_dimension) {
        std::ostringstream msg;
        msg << "Fock dimension " << dim << " exceeds cap " << limits.max_dimension;
        throw ResourceError(msg.str());
    }

    const int n_atoms = model.n_atoms();
    const int n_modes = model.n_modes();
    std::vector<Eigen::Triplet<cplx>> triplets;
    triplets.reserve(dim * (1 + 2 * static_cast<std::size_t>(n_atoms * n_modes)));

    for (std::size_t b = 0; b < dim; ++b) {
        const std::uint64_t atoms = basis.atom_excitations(b);
        double diag = 0.0;
        for (int i = 0; i < n_atoms; ++i) {
            diag += 0.5 * model.atom_freqs[i] * (((atoms >> i) & 1U) ? 1.0 : -1.0);
        }
        for (int k = 0; k < n_modes; ++k) {
            const int n = basis.photons(b, k);
            diag += model.mode_freqs[k] * n;
            if (n == trunc.max_photons[k]) {
                continue;
            }
            // sigma^x_i (a_k + a_k^+): raise mode k by one, flip atom i.
            const double ladder = std::sqrt(static_cast<double>(n + 1));
            for (int i = 0; i < n_atoms; ++i) {
                const double g = model.couplings(i, k);
                if (g == 0.0) {
                    continue;
                }
                const std::size_t b2 = (b ^ (std::size_t{1} << i)) + basis.mode_stride(k);
                triplets.emplace_back(static_cast<int>(b2), static_cast<int>(b), g * ladder);
                triplets.emplace_back(static_cast<int>(b), static_cast<int>(b2), g * ladder);
            }
        }
        triplets.emplace_back(static_cast<int>(b), static_cast<int>(b), diag);
    }

    FockOperatorMatrix out;
    out.basis = basis;
    out.matrix.resize(static_cast<int>(dim), static_cast<int>(dim));
    out.matrix.setFromTriplets(triplets.begin(), triplets.end());
    out.matrix.makeCompressed();
    return out;
}

namespace {

bool is_real(const Eigen::SparseMatrix<cplx> &m) {
    for (int c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, c); it; ++it) {
            if (it.value().imag() != 0.0) {
                return false;
            }
        }
    }
    return true;
}

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair.
GroundState lanczos_lowest(const Eigen::SparseMatrix<cplx> &h, double tol) {
    const Eigen::Index dim = h.rows();
    const Eigen::Index krylov = std::min<Eigen::Index>(dim, 120);
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd start(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        start[i] = cplx(normal(rng), 0.0);
    }
    start.normalize();

    GroundState best;
    for (int restart = 0; restart < 200; ++restart) {
        Eigen::MatrixXcd basis(dim, krylov);
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(krylov);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(krylov);
        basis.col(0) = start;
        Eigen::Index used = krylov;
        for (Eigen::Index j = 0; j < krylov; ++j) {
            Eigen::VectorXcd w = h * basis.col(j);
            alpha[j] = basis.col(j).dot(w).real();
            // full reorthogonalization, applied twice for stability
            for (int pass = 0; pass < 2; ++pass) {
                w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
            }
            if (j + 1 == krylov) {
                break;
            }
            beta[j] = w.norm();
            if (beta[j] < 1e-13) {
                used = j + 1;
                break;
            }
            basis.col(j + 1) = w / beta[j];
        }
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(used, used);
        for (Eigen::Index j = 0; j < used; ++j) {
            tri(j, j) = alpha[j];
            if (j + 1 < used) {
                tri(j, j + 1) = tri(j + 1, j) = beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        Eigen::VectorXcd ritz = basis.leftCols(used) * small.eigenvectors().col(0).cast<cplx>();
        ritz.normalize();
        best.energy = small.eigenvalues()[0];
        best.state = ritz;
        const double residual = (h * ritz - best.energy * ritz).norm();
        if (residual < tol) {
            return best;
        }
        start = ritz;
    }
    throw NumericalError("Lanczos eigensolver did not converge");
}

} // namespace

GroundState exact_groundstate(const FockOperatorMatrix &hamiltonian, const SolverLimits &limits) {
    const auto &h = hamiltonian.matrix;
    const double scale = std::max(1.0, hamiltonian.max_abs());
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw InvalidArgument("Hamiltonian must be a non-empty square matrix");
    }
    if (hamiltonian.hermiticity_defect() > 1e-12 * scale) {
        throw InvalidArgument("Hamiltonian is not Hermitian");
    }
    const auto dim = static_cast<std::size_t>(h.rows());
    if (dim > limits.max_dimension) {
        throw ResourceError("dimension exceeds eigensolver cap");
    }

    GroundState gs;
    if (dim <= limits.dense_threshold) {
        if (is_real(h)) {
            Eigen::MatrixXd dense = Eigen::MatrixXcd(h).real();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
            if (solver.info() != Eigen::Success) {
                throw NumericalError("dense eigensolver failed");
            }
            gs.energy = solver.eigenvalues()[0];
            gs.state = solver.eigenvectors().col(0).cast<cplx>();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(h)};
            if (solver.info() != Eigen::Success) {
                throw NumericalError("dense eigensolver failed");
            }
            gs.energy = solver.eigenvalues()[0];
            gs.state = solver.eigenvectors().col(0);
        }
        gs.state.normalize();
        return gs;
    }
    const double tol = 1e-10 * scale;
    return lanczos_lowest(h, tol);
}

Eigen::MatrixXd annihilation_matrix(int n_max) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n < n_max; ++n) {
        a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    return a;
}

Eigen::MatrixXcd displacement_matrix(int n_max, cplx alpha) {
    const Eigen::MatrixXcd a = annihilation_matrix(n_max).cast<cplx>();
    const Eigen::MatrixXcd generator = alpha * a.adjoint() - std::conj(alpha) * a;
    return generator.exp();
}

AtomLabel parse_atom_label(char c) {
    switch (c) {
    case '0':
    case 'I':
    case 'i':
        return AtomLabel::I;
    case 'x':
    case 'X':
        return AtomLabel::X;
    case 'y':
    case 'Y':
        return AtomLabel::Y;
    case 'z':
    case 'Z':
        return AtomLabel::Z;
    default:
        throw InvalidArgument(std::string("unknown atom label '") + c + "'");
    }
}

char atom_label_char(AtomLabel label) {
    switch (label) {
    case AtomLabel::I:
        return '0';
    case AtomLabel::X:
        return 'x';
    case AtomLabel::Y:
        return 'y';
    case AtomLabel::Z:
        return 'z';
    }
    return '?';
}

namespace {

// new[.., m, ..] = sum_n op(m, n) old[.., n, ..] on mode k.
Eigen::VectorXcd apply_mode_operator(const Eigen::VectorXcd &psi, const FockBasis &basis, int k,
                                     const Eigen::MatrixXcd &op) {
    const std::size_t stride = basis.mode_stride(k);
    const int levels = basis.truncation().max_photons[k] + 1;
    const std::size_t block = stride * static_cast<std::size_t>(levels);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
    for (std::size_t outer = 0; outer < basis.dimension(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int m = 0; m < levels; ++m) {
                cplx acc = 0.0;
                for (int n = 0; n < levels; ++n) {
                    acc += op(m, n) * psi[static_cast<Eigen::Index>(base + stride * n)];
                }
                out[static_cast<Eigen::Index>(base + stride * m)] = acc;
            }
        }
    }
    return out;
}

Eigen::VectorXcd apply_atom_labels(const Eigen::VectorXcd &psi, const FockBasis &basis,
                                   std::span<const AtomLabel> labels) {
    Eigen::VectorXcd out = psi;
    for (int i = 0; i < basis.n_atoms(); ++i) {
        const std::size_t bit = std::size_t{1} << i;
        const AtomLabel l = labels[i];
        if (l == AtomLabel::I) {
            continue;
        }
        Eigen::VectorXcd next(out.size());
        for (std::size_t b = 0; b < basis.dimension(); ++b) {
            const bool excited = (b & bit) != 0;
            const auto src = static_cast<Eigen::Index>(b ^ bit);
            switch (l) {
            case AtomLabel::X:
                next[static_cast<Eigen::Index>(b)] = out[src];
                break;
            case AtomLabel::Y:
                // sigma^y |e> = i |g>, sigma^y |g> = -i |e>
                next[static_cast<Eigen::Index>(b)] = (excited ? cplx(0, -1) : cplx(0, 1)) * out[src];
                break;
            case AtomLabel::Z:
                next[static_cast<Eigen::Index>(b)] =
                    (excited ? 1.0 : -1.0) * out[static_cast<Eigen::Index>(b)];
                break;
            case AtomLabel::I:
                break;
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

Eigen::MatrixXcd displaced_parity_matrix(int n_max, cplx alpha) {
    // D(a) Pi D^+(a) = D(2a) Pi
    const cplx beta = 2.0 * alpha;
    const double x = std::norm(beta);
    const int levels = n_max + 1;
    Eigen::MatrixXcd out(levels, levels);
    for (int m = 0; m < levels; ++m) {
        for (int n = 0; n < levels; ++n) {
            const int lo = std::min(m, n);
            const int gap = std::abs(m - n);
            const double mag = std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + gap + 1.0)) -
                                        0.5 * x) *
                               std::assoc_laguerre(static_cast<unsigned>(lo),
                                                   static_cast<unsigned>(gap), x);
            const cplx phase = m >= n ? std::pow(beta, gap) : std::pow(-std::conj(beta), gap);
            out(m, n) = (n % 2 == 0 ? 1.0 : -1.0) * mag * phase;
        }
    }
    return out;
}

double exact_wigner(const Eigen::VectorXcd &state, const FockBasis &basis,
                    std::span<const AtomLabel> labels, std::span<const cplx> alpha) {
    if (static_cast<std::size_t>(state.size()) != basis.dimension()) {
        throw InvalidArgument("state size does not match Fock basis");
    }
    if (static_cast<int>(labels.size()) != basis.n_atoms() ||
        static_cast<int>(alpha.size()) != basis.n_modes()) {
        throw InvalidArgument("label or displacement count mismatch");
    }
    Eigen::VectorXcd op_psi = apply_atom_labels(state, basis, labels);
    for (int k = 0; k < basis.n_modes(); ++k) {
        const int n_max = basis.truncation().max_photons[k];
        op_psi = apply_mode_operator(op_psi, basis, k, displaced_parity_matrix(n_max, alpha[k]));
    }
    const double norm = std::pow(2.0 / std::numbers::pi, basis.n_modes());
    return norm * state.dot(op_psi).real();
}

std::vector<double> exact_wigner_field(const Eigen::VectorXcd &state, const FockBasis &basis,
                                       std::span<const AtomLabel> labels,
                                       const std::vector<std::vector<cplx>> &points) {
    std::vector<double> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        try {
            out[p] = exact_wigner(state, basis, labels, points[p]);
        } catch (const Error &e) {
#pragma omp critical
            {
                failed = true;
                message = e.what();
            }
        }
    }
    if (failed) {
        throw InvalidArgument(message);
    }
    return out;
}

} // namespace dicke
