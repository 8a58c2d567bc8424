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

#include "dicke/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>

#include <omp.h>

#include "dicke/ansatz.hpp"
#include "dicke/error.hpp"
#include "dicke/ses.hpp"
#include "dicke/vqe.hpp"

namespace dicke {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Rethrows the active exception with a context prefix, keeping its type
// so the caller can still map it to an exit code.
[[noreturn]] void rethrow_with_context(const std::string &ctx) {
    try {
        throw;
    } catch (const ConfigError &e) {
        throw ConfigError(ctx + e.what());
    } catch (const NumericalError &e) {
        throw NumericalError(ctx + e.what());
    } catch (const TruncationError &e) {
        throw TruncationError(ctx + e.what());
    } catch (const ResourceError &e) {
        throw ResourceError(ctx + e.what());
    } catch (const InvalidArgument &e) {
        throw InvalidArgument(ctx + e.what());
    }
}

// Runs body(i) for i < n on a pool of `threads` workers (0 = OpenMP
// default). The first failure in index order is rethrown.
template <class F> void parallel_for(std::size_t n, int threads, F &&body) {
    std::vector<std::exception_ptr> errors(n);
    const int t = threads > 0 ? threads : omp_get_max_threads();
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(t)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

VqeOptions vqe_options(const ExperimentConfig &cfg, std::uint64_t seed) {
    VqeOptions o;
    o.use_spsa = cfg.optimizer.spsa;
    o.spsa = cfg.optimizer.spsa_config;
    o.spsa.seed = seed;
    o.refine = cfg.optimizer.refine;
    o.refiner = cfg.optimizer.refiner;
    o.restarts = cfg.optimizer.restarts;
    o.perturbation_scale = cfg.optimizer.perturbation;
    o.seed = seed;
    return o;
}

SolverLimits reference_limits() {
    SolverLimits l;
    l.dense_threshold = 1500;
    return l;
}

double reference_energy(const ExperimentConfig &cfg, const DickeModel &model) {
    const auto trunc =
        FockTruncation::uniform(model.n_modes(), cfg.reference.resolve(model.n_modes()));
    return encoded_groundstate_energy(model, trunc, reference_limits(), false);
}

void dump_hamiltonian(const ExperimentConfig &cfg, const DickeModel &model,
                      const FockTruncation &trunc, const std::string &tag) {
    const QubitLayout layout(model.n_atoms(), trunc);
    std::ofstream os(cfg.out_dir / ("hamiltonian_" + tag + ".txt"));
    encode_hamiltonian(model, trunc, layout).write(os);
}

std::vector<AtomLabel> parse_labels(const std::string &s) {
    std::vector<AtomLabel> out;
    for (char c : s) {
        out.push_back(parse_atom_label(c));
    }
    return out;
}

std::ofstream open_out(const ExperimentConfig &cfg, const std::string &name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream os(cfg.out_dir / name, std::ios::binary);
    if (!os) {
        throw ConfigError("cannot write " + (cfg.out_dir / name).string());
    }
    return os;
}

} // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg) {
    cfg.validate();
    std::vector<int> depths = cfg.ansatz.depths;
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    const auto &gs = cfg.model.g_over_omega;
    std::vector<std::vector<SweepRow>> per_g(gs.size());

    parallel_for(gs.size(), cfg.threads, [&](std::size_t gi) {
        const double g = gs[gi];
        try {
            const DickeModel model = cfg.model.at(g);
            const auto trunc = FockTruncation::uniform(model.n_modes(), cfg.n_max);
            const QubitLayout layout(model.n_atoms(), trunc);
            const PauliTermSum h = encode_hamiltonian(model, trunc, layout);
            const double e_en = encoded_groundstate_energy(model, trunc);
            const double e_ex = reference_energy(cfg, model);
            const double baseline = polaron_baseline(model, trunc).energy;
            if (cfg.dump_hamiltonian) {
                dump_hamiltonian(cfg, model, trunc, "g" + num(g));
            }

            std::optional<AnsatzSpec> prev_spec;
            std::vector<double> prev_theta;
            for (int d : depths) {
                const AnsatzSpec spec =
                    AnsatzSpec::uniform(model.n_atoms(), trunc, d, cfg.ansatz.per_photon);
                const EnergyEstimator est(build_ansatz(spec), h);
                const std::uint64_t seed = derive_seed(cfg.seed, gi * 1000 + d);
                VqeOptions opts = vqe_options(cfg, seed);
                if (prev_spec) {
                    opts.extra_starts.push_back(pad_parameters(*prev_spec, spec, prev_theta));
                }
                const VqeResult res =
                    run_vqe(est.objective(), polaron_displacement_params(model, spec), opts);
                const ErrorMetrics m = error_metrics(res.energy, e_en, e_ex);
                per_g[gi].push_back({g, d, res.energy, e_en, e_ex, m.delta_en, m.delta_ex,
                                     baseline, res.trials, res.refiner_steps, seed});
                prev_spec = spec;
                prev_theta = res.theta;
            }
        } catch (const Error &) {
            rethrow_with_context("sweep point g/omega=" + num(g) + ": ");
        }
    });

    std::vector<SweepRow> rows;
    for (std::size_t di = 0; di < depths.size(); ++di) {
        for (const auto &r : per_g) {
            rows.push_back(r[di]);
        }
    }
    return rows;
}

std::vector<ExactRow> run_exact(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto &gs = cfg.model.g_over_omega;
    std::vector<ExactRow> rows(gs.size());
    parallel_for(gs.size(), cfg.threads, [&](std::size_t gi) {
        const double g = gs[gi];
        try {
            const DickeModel model = cfg.model.at(g);
            const auto trunc = FockTruncation::uniform(model.n_modes(), cfg.n_max);
            ExactRow r;
            r.g_over_omega = g;
            r.e_en = encoded_groundstate_energy(model, trunc);
            r.e_ex = reference_energy(cfg, model);
            r.baseline = polaron_baseline(model, trunc).energy;
            r.delta_ex = error_metrics(r.e_en, r.e_en, r.e_ex).delta_ex;
            r.baseline_error = std::abs((r.baseline - r.e_ex) / r.e_ex);
            if (cfg.dump_hamiltonian) {
                dump_hamiltonian(cfg, model, trunc, "g" + num(g));
            }
            rows[gi] = r;
        } catch (const Error &) {
            rethrow_with_context("exact point g/omega=" + num(g) + ": ");
        }
    });
    return rows;
}

std::vector<NoisyRow> run_noisy_vqe(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto &nc = cfg.noise;
    struct Job {
        double g;
        double lambda;
        bool mitigated;
        int seed_index;
    };
    std::vector<Job> jobs;
    for (double g : nc.g_over_omega) {
        for (double l : nc.lambdas) {
            for (int variant = 0; variant < (nc.compare_mitigation ? 2 : 1); ++variant) {
                const bool mitigated = nc.compare_mitigation ? variant == 1 : true;
                for (int s = 0; s < nc.seeds; ++s) {
                    jobs.push_back({g, l, mitigated, s});
                }
            }
        }
    }

    std::vector<NoisyRow> rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t ji) {
        const Job &job = jobs[ji];
        try {
            const DickeModel model = cfg.model.at(job.g);
            const auto trunc = FockTruncation::uniform(model.n_modes(), nc.n_max);
            const QubitLayout layout(model.n_atoms(), trunc);
            const PauliTermSum h = encode_hamiltonian(model, trunc, layout);
            const double e_en = encoded_groundstate_energy(model, trunc);
            const AnsatzSpec spec =
                AnsatzSpec::uniform(model.n_atoms(), trunc, nc.depth, cfg.ansatz.per_photon);

            // the same seed for raw and mitigated runs of one (g, lambda, s)
            const std::uint64_t seed = derive_seed(
                cfg.seed, static_cast<std::uint64_t>(job.seed_index) + 7919ULL *
                              static_cast<std::uint64_t>(std::llround(job.g * 1000)));
            EstimatorOptions eo;
            eo.sampled = true;
            eo.shots = nc.shots;
            NoiseModel noise = NoiseModel::uniform(layout.total_qubits(), nc.depolarizing,
                                                   nc.damping, nc.readout_p01, nc.readout_p10);
            noise.scale = job.lambda;
            eo.noise = noise;
            eo.mitigate_readout = job.mitigated;
            eo.postselect = job.mitigated;
            eo.seed = seed;
            const EnergyEstimator est(build_ansatz(spec), h, eo);

            VqeOptions opts = vqe_options(cfg, seed);
            opts.use_spsa = true;
            opts.refine = false;
            opts.restarts = 1;
            const VqeResult res =
                run_vqe(est.objective(), polaron_displacement_params(model, spec), opts);

            NoisyRow r;
            r.g_over_omega = job.g;
            r.lambda = job.lambda;
            r.mitigated = job.mitigated;
            r.seed = seed;
            r.e_best = res.energy;
            r.e_en = e_en;
            r.trials = res.trials;
            double acc = 0.0;
            for (int j = 0; j < nc.final_evaluations; ++j) {
                const Estimate e =
                    est.estimate(res.theta, (std::uint64_t{1} << 50) + static_cast<std::uint64_t>(j));
                acc += e.value;
                r.retention = std::min(r.retention, e.retention);
            }
            r.e_final = acc / nc.final_evaluations;
            r.delta_en = std::abs((r.e_final - e_en) / e_en);
            rows[ji] = r;
        } catch (const Error &) {
            rethrow_with_context("noisy point g/omega=" + num(job.g) +
                                 " lambda=" + num(job.lambda) + ": ");
        }
    });
    return rows;
}

std::vector<NoisyBand> summarize_bands(const std::vector<NoisyRow> &rows) {
    std::map<std::tuple<double, double, bool>, std::vector<const NoisyRow *>> groups;
    std::vector<std::tuple<double, double, bool>> order;
    for (const auto &r : rows) {
        const auto key = std::tuple{r.g_over_omega, r.lambda, r.mitigated};
        if (!groups.contains(key)) {
            order.push_back(key);
        }
        groups[key].push_back(&r);
    }
    std::vector<NoisyBand> out;
    for (const auto &key : order) {
        const auto &members = groups[key];
        std::vector<double> v;
        for (const auto *r : members) {
            v.push_back(r->delta_en);
        }
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), median, v.front(),
                       v.back(), members.front()->e_en});
    }
    return out;
}

WignerRun run_wigner(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto &t = cfg.tomography;
    const DickeModel model = cfg.model.at(t.g_over_omega);
    const auto trunc = FockTruncation::uniform(model.n_modes(), t.n_max);
    const QubitLayout layout(model.n_atoms(), trunc);
    const auto labels = parse_labels(t.labels);

    StateVector state;
    if (t.source == "exact") {
        const auto h = build_fock_hamiltonian(model, trunc);
        const auto gs = exact_groundstate(h);
        state = StateVector(layout.total_qubits(), embed_fock_state(gs.state, h.basis, layout));
    } else {
        const PauliTermSum h = encode_hamiltonian(model, trunc, layout);
        const AnsatzSpec spec = AnsatzSpec::uniform(model.n_atoms(), trunc, t.ansatz_depth,
                                                    cfg.ansatz.per_photon);
        const EnergyEstimator est(build_ansatz(spec), h);
        const VqeResult res = run_vqe(est.objective(), polaron_displacement_params(model, spec),
                                      vqe_options(cfg, cfg.seed));
        state = est.state(res.theta);
    }

    WignerRun run;
    run.grid = WignerGrid::rectangular(t.re_min, t.re_max, t.n_re, t.im_min, t.im_max, t.n_im,
                                       labels, model.n_modes(), 0);
    const auto ref_trunc =
        FockTruncation::uniform(model.n_modes(), cfg.reference.resolve(model.n_modes()));
    const auto ref_h = build_fock_hamiltonian(model, ref_trunc, reference_limits());
    const auto ref_gs = exact_groundstate(ref_h, reference_limits());
    run.exact = exact_wigner_field(ref_gs.state, ref_h.basis, labels, run.grid.points);

    const auto radii = run.grid.radii();
    WignerSampling sampling;
    sampling.exact = t.shots == 0;
    sampling.shots = t.shots;
    sampling.seed = cfg.seed;
    run.depths = t.depths;
    for (int d : t.depths) {
        auto field = sample_wigner(state, layout, run.grid, d, sampling);
        std::vector<double> values;
        for (const auto &s : field) {
            values.push_back(s.value);
        }
        for (double c : t.cutoffs) {
            run.errors.push_back(
                {d, c, wigner_error(values, run.exact, radii, c, run.grid.cell_area)});
        }
        run.sampled.push_back(std::move(field));
    }
    return run;
}

void write_csv_preamble(std::ostream &os, const ExperimentConfig &cfg, const std::string &header) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# config_hash=%016llx seed=%llu\n",
                  static_cast<unsigned long long>(cfg.hash),
                  static_cast<unsigned long long>(cfg.seed));
    os << buf << header << '\n';
}

void write_sweep_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<SweepRow> &rows) {
    write_csv_preamble(os, cfg,
                       "g_over_omega,d,E_vqe,E_en,E_ex,delta_en,delta_ex,baseline,trials,seed");
    for (const auto &r : rows) {
        os << num(r.g_over_omega) << ',' << r.depth << ',' << num(r.e_vqe) << ','
           << num(r.e_en) << ',' << num(r.e_ex) << ',' << num(r.delta_en) << ','
           << num(r.delta_ex) << ',' << num(r.baseline) << ',' << r.trials + r.refiner_steps
           << ',' << r.seed << '\n';
    }
}

void write_exact_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<ExactRow> &rows) {
    write_csv_preamble(os, cfg, "g_over_omega,E_en,E_ex,baseline,delta_ex,baseline_error");
    for (const auto &r : rows) {
        os << num(r.g_over_omega) << ',' << num(r.e_en) << ',' << num(r.e_ex) << ','
           << num(r.baseline) << ',' << num(r.delta_ex) << ',' << num(r.baseline_error) << '\n';
    }
}

void write_noisy_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<NoisyRow> &rows) {
    write_csv_preamble(
        os, cfg,
        "g_over_omega,lambda,mitigated,seed,E_best,E_final,E_en,delta_en,retention,trials");
    for (const auto &r : rows) {
        os << num(r.g_over_omega) << ',' << num(r.lambda) << ',' << (r.mitigated ? 1 : 0) << ','
           << r.seed << ',' << num(r.e_best) << ',' << num(r.e_final) << ',' << num(r.e_en)
           << ',' << num(r.delta_en) << ',' << num(r.retention) << ',' << r.trials << '\n';
    }
}

void write_bands_csv(std::ostream &os, const ExperimentConfig &cfg,
                     const std::vector<NoisyBand> &bands) {
    write_csv_preamble(os, cfg,
                       "g_over_omega,lambda,mitigated,median_delta_en,min_delta_en,"
                       "max_delta_en,E_en");
    for (const auto &b : bands) {
        os << num(b.g_over_omega) << ',' << num(b.lambda) << ',' << (b.mitigated ? 1 : 0) << ','
           << num(b.median) << ',' << num(b.min) << ',' << num(b.max) << ',' << num(b.e_en)
           << '\n';
    }
}

void write_wigner_field_csv(std::ostream &os, const ExperimentConfig &cfg, const WignerRun &run,
                            std::size_t depth_index) {
    write_csv_preamble(os, cfg, "re_alpha,im_alpha,w_sampled,w_exact,retention");
    const auto &field = run.sampled.at(depth_index);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const cplx a = run.grid.points[i][0];
        os << num(a.real()) << ',' << num(a.imag()) << ',' << num(field[i].value) << ','
           << num(run.exact[i]) << ',' << num(field[i].retention) << '\n';
    }
}

void write_wigner_error_csv(std::ostream &os, const ExperimentConfig &cfg, const WignerRun &run) {
    write_csv_preamble(os, cfg, "d,abs_alpha,delta_w");
    for (const auto &e : run.errors) {
        os << e.depth << ',' << num(e.cutoff) << ',' << num(e.delta_w) << '\n';
    }
}

void cmd_sweep(const ExperimentConfig &cfg) {
    const auto rows = run_sweep(cfg);
    auto os = open_out(cfg, "sweep.csv");
    write_sweep_csv(os, cfg, rows);
}

void cmd_exact(const ExperimentConfig &cfg) {
    const auto rows = run_exact(cfg);
    auto os = open_out(cfg, "exact.csv");
    write_exact_csv(os, cfg, rows);
}

void cmd_noisy_vqe(const ExperimentConfig &cfg) {
    const auto rows = run_noisy_vqe(cfg);
    {
        auto os = open_out(cfg, "noisy_vqe.csv");
        write_noisy_csv(os, cfg, rows);
    }
    auto os = open_out(cfg, "noisy_bands.csv");
    write_bands_csv(os, cfg, summarize_bands(rows));
}

void cmd_wigner(const ExperimentConfig &cfg) {
    const auto run = run_wigner(cfg);
    for (std::size_t i = 0; i < run.depths.size(); ++i) {
        auto os = open_out(cfg, "wigner_d" + std::to_string(run.depths[i]) + ".csv");
        write_wigner_field_csv(os, cfg, run, i);
    }
    auto os = open_out(cfg, "wigner_error.csv");
    write_wigner_error_csv(os, cfg, run);
}

void cmd_dump(const ExperimentConfig &cfg) {
    cfg.validate();
    const DickeModel model = cfg.model.at(cfg.model.g_over_omega.front());
    const auto trunc = FockTruncation::uniform(model.n_modes(), cfg.n_max);
    const QubitLayout layout(model.n_atoms(), trunc);
    const AnsatzSpec spec = AnsatzSpec::uniform(model.n_atoms(), trunc, cfg.ansatz.depths.front(),
                                                cfg.ansatz.per_photon);
    const AnsatzCircuit circ = build_ansatz(spec);
    {
        auto os = open_out(cfg, "hamiltonian.txt");
        encode_hamiltonian(model, trunc, layout).write(os);
    }
    {
        auto os = open_out(cfg, "ansatz.txt");
        circ.dump(os);
    }
    auto os = open_out(cfg, "state.bin");
    prepare_state(circ, polaron_displacement_params(model, spec)).write(os);
}

} // namespace dicke
