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

#include "dicke/wigner.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "dicke/error.hpp"
#include "dicke/optimize.hpp"
#include "dicke/sampling.hpp"

namespace dicke {

WignerGrid WignerGrid::rectangular(double re_min, double re_max, int n_re, double im_min,
                                   double im_max, int n_im, std::vector<AtomLabel> labels,
                                   int n_modes, int mode) {
    if (n_re < 1 || n_im < 1 || n_modes < 1 || mode < 0 || mode >= n_modes) {
        throw InvalidArgument("invalid Wigner grid shape");
    }
    if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) ||
        !std::isfinite(im_max)) {
        throw InvalidArgument("Wigner grid ranges must be finite");
    }
    WignerGrid grid;
    grid.labels = std::move(labels);
    const double dre = n_re > 1 ? (re_max - re_min) / (n_re - 1) : 1.0;
    const double dim = n_im > 1 ? (im_max - im_min) / (n_im - 1) : 1.0;
    grid.cell_area = dre * dim;
    for (int i = 0; i < n_re; ++i) {
        for (int j = 0; j < n_im; ++j) {
            std::vector<cplx> alpha(n_modes, cplx(0.0));
            alpha[mode] = cplx(re_min + i * dre, im_min + j * dim);
            grid.points.push_back(std::move(alpha));
        }
    }
    return grid;
}

void WignerGrid::validate(int n_atoms, int n_modes) const {
    if (points.empty()) {
        throw InvalidArgument("Wigner grid is empty");
    }
    if (static_cast<int>(labels.size()) != n_atoms) {
        throw InvalidArgument("one atom label per atom required");
    }
    for (const auto &p : points) {
        if (static_cast<int>(p.size()) != n_modes) {
            throw InvalidArgument("grid point has the wrong number of modes");
        }
        for (const auto &a : p) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InvalidArgument("grid point is not finite");
            }
        }
    }
}

std::vector<double> WignerGrid::radii() const {
    std::vector<double> r;
    r.reserve(points.size());
    for (const auto &p : points) {
        double s = 0.0;
        for (const auto &a : p) {
            s += std::norm(a);
        }
        r.push_back(std::sqrt(s));
    }
    return r;
}

Program build_displacement(int k, cplx alpha, int depth, const QubitLayout &layout) {
    if (depth < 1) {
        throw InvalidArgument("displacement depth must be >= 1");
    }
    Program prog;
    if (alpha == cplx(0.0)) {
        return prog;
    }
    const int n_max = layout.max_photons(k);
    auto block = [&](bool imaginary, double value) {
        if (value == 0.0) {
            return;
        }
        for (int parity = 0; parity < 2; ++parity) {
            for (int n = parity; n < n_max; n += 2) {
                const double w = std::sqrt(static_cast<double>(n + 1)) * value / depth;
                const unsigned lo = layout.mode_qubit(k, n);
                const unsigned hi = layout.mode_qubit(k, n + 1);
                // a^+ - a = -sqrt(n+1) J on the bond, a + a^+ = sqrt(n+1) (|A><B| + h.c.)
                prog.push_back(imaginary ? gates::bond_exchange(lo, hi, w)
                                         : gates::bond_rotation(lo, hi, -w));
            }
        }
    };
    for (int s = 0; s < depth; ++s) {
        block(false, alpha.real());
        block(true, alpha.imag());
    }
    return prog;
}

std::vector<WignerSample> sample_wigner(const StateVector &state, const QubitLayout &layout,
                                        const WignerGrid &grid, int depth,
                                        const WignerSampling &sampling) {
    grid.validate(layout.n_atoms(), layout.n_modes());
    if (state.num_qubits() != layout.total_qubits()) {
        throw InvalidArgument("state does not match the layout");
    }
    if (!sampling.exact && sampling.shots == 0) {
        throw InvalidArgument("shot-based Wigner sampling needs shots >= 1");
    }
    const int n_modes = layout.n_modes();
    const double norm = std::pow(2.0 / std::numbers::pi, n_modes);

    Program atom_change;
    std::uint64_t atom_sign_mask = 0;
    for (int i = 0; i < layout.n_atoms(); ++i) {
        const unsigned q = layout.atom_qubit(i);
        switch (grid.labels[i]) {
        case AtomLabel::I:
            continue;
        case AtomLabel::X:
            atom_change.push_back(gates::hadamard(q));
            break;
        case AtomLabel::Y:
            atom_change.push_back(gates::sdg(q));
            atom_change.push_back(gates::hadamard(q));
            break;
        case AtomLabel::Z:
            break;
        }
        atom_sign_mask |= std::uint64_t{1} << q;
    }

    std::vector<WignerSample> out(grid.points.size());
    const auto n_points = static_cast<std::int64_t>(grid.points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t pi = 0; pi < n_points; ++pi) {
        const auto &alpha = grid.points[static_cast<std::size_t>(pi)];
        StateVector work = state;
        for (int k = 0; k < n_modes; ++k) {
            apply_program(work, adjoint_program(build_displacement(k, alpha[k], depth, layout)));
        }
        apply_program(work, atom_change);
        Distribution p = work.probabilities();
        if (!sampling.exact) {
            p = to_distribution(
                sample_from_distribution(
                    p, sampling.shots, derive_seed(sampling.seed, static_cast<std::uint64_t>(pi))),
                work.num_qubits());
        }
        double kept = 0.0;
        double acc = 0.0;
        for (std::uint64_t b = 0; b < p.size(); ++b) {
            if (p[b] == 0.0 || !in_ses(b, layout)) {
                continue;
            }
            kept += p[b];
            int parity = std::popcount(b & atom_sign_mask);
            for (int k = 0; k < n_modes; ++k) {
                const std::uint64_t reg = (b & layout.register_mask(k)) >> layout.register_offset(k);
                parity += std::countr_zero(reg);
            }
            acc += (parity & 1) ? -p[b] : p[b];
        }
        WignerSample &s = out[static_cast<std::size_t>(pi)];
        s.retention = kept;
        s.value = kept > 0.0 ? norm * acc / kept : 0.0;
        s.flagged = kept < kWignerRetentionFlag;
    }
    return out;
}

double wigner_error(std::span<const double> sampled, std::span<const double> exact,
                    std::span<const double> radii, double cutoff, double cell_area) {
    if (sampled.size() != exact.size() || sampled.size() != radii.size()) {
        throw InvalidArgument("Wigner fields are not on a common grid");
    }
    if (!(cutoff > 0.0) || !(cell_area > 0.0)) {
        throw InvalidArgument("cutoff and cell area must be positive");
    }
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        if (radii[i] <= cutoff + 1e-12) {
            const double d = sampled[i] - exact[i];
            acc += d * d * cell_area;
            ++count;
        }
    }
    if (count == 0) {
        throw InvalidArgument("no grid points inside the cutoff disc");
    }
    return std::sqrt(acc) / (std::sqrt(std::numbers::pi) * cutoff);
}

} // namespace dicke
