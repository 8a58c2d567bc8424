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

#include "dicke/vqe.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <limits>
#include <memory>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/error.hpp"

namespace dicke {

namespace {

std::vector<bool> z_measured_registers(const PauliString &basis, const QubitLayout &layout) {
    std::vector<bool> filter(layout.n_modes(), true);
    for (const auto &[q, p] : basis.factors()) {
        if (p == Pauli::X || p == Pauli::Y) {
            for (int k = 0; k < layout.n_modes(); ++k) {
                if ((layout.register_mask(k) >> q) & 1U) {
                    filter[k] = false;
                }
            }
        }
    }
    return filter;
}

} // namespace

EnergyEstimator::EnergyEstimator(AnsatzCircuit circuit, const PauliTermSum &hamiltonian,
                                 EstimatorOptions options)
    : circuit_(std::move(circuit)), observable_(hamiltonian), options_(std::move(options)) {
    if (hamiltonian.num_qubits() > circuit_.layout.total_qubits()) {
        throw InvalidArgument("Hamiltonian acts outside the ansatz register");
    }
    if (options_.noise) {
        options_.noise = options_.noise->scaled();
        const unsigned n = circuit_.layout.total_qubits();
        if (options_.noise->depolarizing.size() != n || options_.noise->damping.size() != n ||
            options_.noise->readout.num_qubits() != n) {
            throw InvalidArgument("noise model must cover every qubit of the ansatz");
        }
    }
    groups_ = group_qubitwise_commuting(observable_);
    for (const auto &t : observable_.terms()) {
        if (t.string.is_identity()) {
            identity_coeff_ += t.coeff;
        }
    }
}

StateVector EnergyEstimator::state(std::span<const double> theta) const {
    return prepare_state(circuit_, theta);
}

double EnergyEstimator::exact_energy(std::span<const double> theta) const {
    return observable_.expectation(state(theta));
}

Estimate EnergyEstimator::estimate(std::span<const double> theta, std::uint64_t eval_id) const {
    if (!options_.sampled) {
        if (!options_.noise) {
            return {exact_energy(theta), 0.0, 1.0};
        }
        const StateVector init =
            StateVector::basis_state(circuit_.layout.total_qubits(), circuit_.initial_index);
        const DensityMatrix rho = run_noisy(bind_parameters(circuit_, theta), *options_.noise,
                                            init, options_.density_qubit_cap);
        PauliTermSum h(observable_.num_qubits());
        for (const auto &t : observable_.terms()) {
            h.add(t.coeff, t.string);
        }
        return {rho.expectation(h), 0.0, 1.0};
    }
    return estimate_groups(theta, eval_id);
}

Estimate EnergyEstimator::estimate_groups(std::span<const double> theta,
                                          std::uint64_t eval_id) const {
    const unsigned n = circuit_.layout.total_qubits();
    std::optional<StateVector> psi;
    std::optional<DensityMatrix> rho;
    if (options_.noise) {
        const StateVector init = StateVector::basis_state(n, circuit_.initial_index);
        rho = run_noisy(bind_parameters(circuit_, theta), *options_.noise, init,
                        options_.density_qubit_cap);
    } else {
        psi = state(theta);
    }

    const std::uint64_t eval_seed = derive_seed(options_.seed, eval_id);
    Estimate est{identity_coeff_, 0.0, 1.0};
    double variance = 0.0;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        const auto &group = groups_[gi];
        const Program change = basis_change_program(group.basis);
        Distribution p;
        if (rho) {
            // basis-change rotations are treated as ideal
            DensityMatrix r = *rho;
            for (const auto &g : change) {
                apply_gate(r, g);
            }
            p = r.probabilities();
            if (!options_.noise->readout.is_trivial()) {
                p = apply_readout_error(p, options_.noise->readout);
            }
        } else {
            StateVector s = *psi;
            apply_program(s, change);
            p = s.probabilities();
        }
        if (options_.shots > 0) {
            p = to_distribution(
                sample_from_distribution(p, options_.shots, derive_seed(eval_seed, gi)), n);
        }
        if (options_.mitigate_readout && options_.noise &&
            !options_.noise->readout.is_trivial()) {
            p = mitigate_readout(p, options_.noise->readout);
        }
        double retention = 1.0;
        if (options_.postselect) {
            const auto filter = z_measured_registers(group.basis, circuit_.layout);
            const auto mask = std::make_unique<bool[]>(filter.size());
            std::copy(filter.begin(), filter.end(), mask.get());
            retention = postselect(p, circuit_.layout, {mask.get(), filter.size()});
        }
        est.retention = std::min(est.retention, retention);

        double mean = 0.0;
        double second = 0.0;
        for (std::uint64_t b = 0; b < p.size(); ++b) {
            if (p[b] == 0.0) {
                continue;
            }
            double x = 0.0;
            for (std::size_t ti : group.term_indices) {
                const auto &t = observable_.terms()[ti];
                const std::uint64_t support = t.x_mask | t.z_mask;
                x += (std::popcount(b & support) & 1) ? -t.coeff : t.coeff;
            }
            mean += p[b] * x;
            second += p[b] * x * x;
        }
        est.value += mean;
        if (options_.shots > 0) {
            const double kept = retention * static_cast<double>(options_.shots);
            variance += std::max(second - mean * mean, 0.0) / std::max(kept, 1.0);
        }
    }
    est.std_error = std::sqrt(variance);
    return est;
}

Objective EnergyEstimator::objective() const {
    return [this](std::span<const double> theta, std::uint64_t eval_id) {
        return estimate(theta, eval_id).value;
    };
}

double postselect(Distribution &probs, const QubitLayout &layout,
                  std::span<const bool> mode_filter) {
    double kept = 0.0;
    for (std::uint64_t b = 0; b < probs.size(); ++b) {
        if (in_ses(b, layout, mode_filter)) {
            kept += probs[b];
        } else {
            probs[b] = 0.0;
        }
    }
    if (!(kept > 0.0)) {
        throw NumericalError("postselection retained no shots");
    }
    for (auto &v : probs) {
        v /= kept;
    }
    return kept;
}

PostselectResult postselect(const Histogram &counts, const QubitLayout &layout) {
    PostselectResult out;
    std::uint64_t total = 0;
    std::uint64_t kept = 0;
    for (const auto &[b, c] : counts) {
        total += c;
        if (in_ses(b, layout)) {
            out.counts[b] = c;
            kept += c;
        }
    }
    if (kept == 0) {
        throw NumericalError("postselection retained no shots");
    }
    out.retention = static_cast<double>(kept) / static_cast<double>(total);
    return out;
}

VqeResult run_vqe(const Objective &objective, const std::vector<double> &warm_start,
                  const VqeOptions &options) {
    if (options.restarts < 1) {
        throw InvalidArgument("restarts must be >= 1");
    }
    std::vector<std::vector<double>> starts{warm_start};
    for (int r = 1; r < options.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
        std::normal_distribution<double> normal(0.0, options.perturbation_scale);
        std::vector<double> x = warm_start;
        for (auto &v : x) {
            v += normal(rng);
        }
        starts.push_back(std::move(x));
    }
    for (const auto &x : options.extra_starts) {
        if (x.size() != warm_start.size()) {
            throw InvalidArgument("extra start has the wrong parameter count");
        }
        starts.push_back(x);
    }

    VqeResult best;
    best.energy = std::numeric_limits<double>::infinity();
    best.seed = options.seed;
    std::uint64_t total_evals = 0;
    for (std::size_t r = 0; r < starts.size(); ++r) {
        const std::uint64_t offset = static_cast<std::uint64_t>(r) << 40;
        std::vector<double> x = starts[r];
        std::vector<double> trace;
        int trials = 0;
        int steps = 0;
        bool aborted = false;
        double value = std::numeric_limits<double>::quiet_NaN();
        if (options.use_spsa) {
            SpsaConfig cfg = options.spsa;
            cfg.seed = derive_seed(options.spsa.seed ^ options.seed, 1000 + r);
            const auto res = spsa_minimize(
                [&](std::span<const double> t, std::uint64_t id) {
                    return objective(t, offset + id);
                },
                x, cfg);
            total_evals += res.evaluations;
            trace = res.trace;
            trials = res.iterations;
            aborted = res.aborted;
            x = res.theta;
            value = res.value;
        }
        if (options.refine && !aborted) {
            const auto res = refine_minimize(
                [&](std::span<const double> t, std::uint64_t id) {
                    return objective(t, offset + (std::uint64_t{1} << 39) + id);
                },
                x, options.refiner);
            total_evals += res.evaluations;
            trace.insert(trace.end(), res.trace.begin(), res.trace.end());
            steps = res.iterations;
            aborted = res.aborted;
            x = res.theta;
            value = res.value;
        }
        if (!options.use_spsa && !options.refine) {
            value = objective(x, offset);
            trace.push_back(value);
            ++total_evals;
        }
        if (value < best.energy || (r == 0 && std::isnan(value))) {
            best.theta = x;
            best.energy = value;
            best.trace = std::move(trace);
            best.trials = trials;
            best.refiner_steps = steps;
            best.best_start = static_cast<int>(r);
            best.aborted = aborted;
        }
    }
    best.evaluations = total_evals;
    return best;
}

double encoded_groundstate_energy(const DickeModel &model, const FockTruncation &trunc,
                                  const SolverLimits &limits, bool cross_check) {
    const FockOperatorMatrix h = build_fock_hamiltonian(model, trunc, limits);
    const double e = exact_groundstate(h, limits).energy;
    const int qubits = model.n_atoms() + std::accumulate(trunc.max_photons.begin(),
                                                         trunc.max_photons.end(),
                                                         static_cast<int>(trunc.max_photons.size()));
    if (cross_check && h.basis.dimension() <= 2048 && qubits <= 62) {
        const QubitLayout layout(model.n_atoms(), trunc);
        const PauliTermSum enc = encode_hamiltonian(model, trunc, layout);
        const Eigen::MatrixXcd m = restrict_to_ses(enc, h.basis, layout);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        const double e_ses = solver.eigenvalues()[0];
        if (std::abs(e_ses - e) > 1e-9 * std::max(1.0, std::abs(e))) {
            throw NumericalError("Fock and SES ground energies disagree: " + std::to_string(e) +
                                 " vs " + std::to_string(e_ses));
        }
    }
    return e;
}

PolaronBaseline polaron_baseline(const DickeModel &model, const FockTruncation &trunc) {
    model.validate();
    const FockOperatorMatrix h = build_fock_hamiltonian(model, trunc);
    const FockBasis &basis = h.basis;
    const int n_atoms = model.n_atoms();
    const int n_modes = model.n_modes();
    if (n_atoms > 16) {
        throw ResourceError("polaron baseline limited to 16 atoms");
    }
    std::vector<Eigen::MatrixXd> generators;
    for (int k = 0; k < n_modes; ++k) {
        const Eigen::MatrixXd a = annihilation_matrix(trunc.max_photons[k]);
        generators.emplace_back(a - a.transpose());
    }

    // P|g...g, 0> splits into sx sectors s; in sector s mode k is
    // displaced by beta_k = sum_i s_i f_ik and the atoms are in
    // prod_i (|g> + s_i |e>) / sqrt(2), each with weight 1 / sqrt(2).
    auto energy = [&](std::span<const double> f, std::uint64_t) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
        const std::uint64_t sectors = std::uint64_t{1} << n_atoms;
        std::vector<Eigen::VectorXd> modes(n_modes);
        for (std::uint64_t sec = 0; sec < sectors; ++sec) {
            for (int k = 0; k < n_modes; ++k) {
                double beta = 0.0;
                for (int i = 0; i < n_atoms; ++i) {
                    const double s = ((sec >> i) & 1U) ? -1.0 : 1.0;
                    beta += s * f[static_cast<std::size_t>(i * n_modes + k)];
                }
                modes[k] = Eigen::MatrixXd(beta * generators[k]).exp().col(0);
            }
            for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
                const std::uint64_t exc = basis.atom_excitations(idx);
                double amp = 1.0;
                for (int i = 0; i < n_atoms; ++i) {
                    const double s = ((sec >> i) & 1U) ? -1.0 : 1.0;
                    amp *= 0.5 * (((exc >> i) & 1U) ? s : 1.0);
                }
                for (int k = 0; k < n_modes; ++k) {
                    amp *= modes[k][basis.photons(idx, k)];
                }
                psi[static_cast<Eigen::Index>(idx)] += amp;
            }
        }
        return psi.dot(h.matrix * psi).real();
    };

    std::vector<double> f0(static_cast<std::size_t>(n_atoms * n_modes), 0.0);
    for (int i = 0; i < n_atoms; ++i) {
        const double w = renormalized_atom_frequency(model, i);
        for (int k = 0; k < n_modes; ++k) {
            f0[static_cast<std::size_t>(i * n_modes + k)] =
                model.couplings(i, k) / (model.mode_freqs[k] + w);
        }
    }
    RefinerConfig cfg;
    cfg.initial_radius = 0.25;
    const auto res = refine_minimize(energy, f0, cfg);
    return {res.value, res.theta};
}

ErrorMetrics error_metrics(double e_vqe, double e_en, double e_ex) {
    if (std::abs(e_en) < 1e-12 || std::abs(e_ex) < 1e-12) {
        throw NumericalError("relative error undefined for a vanishing reference energy");
    }
    return {std::abs((e_vqe - e_en) / e_en), std::abs((e_en - e_ex) / e_ex)};
}

} // namespace dicke
