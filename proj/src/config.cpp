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

#include "dicke/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dicke/error.hpp"

namespace dicke {

namespace pt = boost::property_tree;

DickeModel ModelConfig::at(double g_over_omega) const {
    DickeModel m;
    m.atom_freqs.assign(n_atoms, omega_atom);
    m.mode_freqs.assign(n_modes, omega_mode);
    m.couplings = Eigen::MatrixXd::Constant(n_atoms, n_modes, g_over_omega * omega_mode);
    return m;
}

int ReferenceConfig::resolve(int n_modes) const {
    if (n_max > 0) {
        return n_max;
    }
    return n_modes == 1 ? 60 : n_modes == 2 ? 30 : 20;
}

std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

const std::map<std::string, std::set<std::string>> &schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"model", {"n_atoms", "n_modes", "omega_atom", "omega_mode", "g_over_omega"}},
        {"truncation", {"n_max"}},
        {"ansatz", {"depths", "per_photon"}},
        {"optimizer",
         {"spsa", "max_trials", "a", "c", "stability", "alpha", "gamma", "calibration_pairs",
          "target_step", "final_average", "refine", "refiner_sweeps", "polish", "restarts",
          "perturbation"}},
        {"noise",
         {"depolarizing", "damping", "readout_p01", "readout_p10", "lambdas", "g_over_omega",
          "shots", "seeds", "n_max", "depth", "compare_mitigation", "final_evaluations"}},
        {"tomography",
         {"g_over_omega", "n_max", "depths", "re_min", "re_max", "n_re", "im_min", "im_max",
          "n_im", "labels", "cutoffs", "source", "ansatz_depth", "shots"}},
        {"reference", {"n_max"}},
        {"run", {"seed", "threads"}},
        {"output", {"dir", "dump_hamiltonian"}},
    };
    return s;
}

std::string where(const std::string &section, const std::string &key) {
    return "[" + section + "] " + key;
}

double to_double(const std::string &v, const std::string &ctx) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) {
            throw ConfigError(ctx + ": trailing characters in '" + v + "'");
        }
        return d;
    } catch (const std::logic_error &) {
        throw ConfigError(ctx + ": expected a number, got '" + v + "'");
    }
}

long long to_int(const std::string &v, const std::string &ctx) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) {
            throw ConfigError(ctx + ": expected an integer, got '" + v + "'");
        }
        return i;
    } catch (const std::logic_error &) {
        throw ConfigError(ctx + ": expected an integer, got '" + v + "'");
    }
}

bool to_bool(std::string v, const std::string &ctx) {
    boost::algorithm::to_lower(v);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(ctx + ": expected a boolean, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string &v, const std::string &ctx) {
    std::vector<double> out;
    std::vector<std::string> items;
    boost::split(items, v, boost::is_any_of(","));
    for (auto item : items) {
        boost::trim(item);
        if (item.empty()) {
            continue;
        }
        if (item.find(':') != std::string::npos) {
            std::vector<std::string> parts;
            boost::split(parts, item, boost::is_any_of(":"));
            if (parts.size() != 3) {
                throw ConfigError(ctx + ": ranges are start:stop:step");
            }
            const double start = to_double(boost::trim_copy(parts[0]), ctx);
            const double stop = to_double(boost::trim_copy(parts[1]), ctx);
            const double step = to_double(boost::trim_copy(parts[2]), ctx);
            if (!(step > 0.0) || stop < start) {
                throw ConfigError(ctx + ": range needs step > 0 and stop >= start");
            }
            const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
            if (n > 100000) {
                throw ConfigError(ctx + ": range too long");
            }
            for (long long i = 0; i <= n; ++i) {
                // snap to 12 digits so 0.1 steps print as 0.3, not 0.30000000000000004
                out.push_back(std::round((start + i * step) * 1e12) / 1e12);
            }
        } else {
            out.push_back(to_double(item, ctx));
        }
    }
    if (out.empty()) {
        throw ConfigError(ctx + ": empty list");
    }
    return out;
}

std::vector<int> to_ints(const std::string &v, const std::string &ctx) {
    std::vector<int> out;
    for (double d : to_doubles(v, ctx)) {
        if (d != std::floor(d)) {
            throw ConfigError(ctx + ": expected integers");
        }
        out.push_back(static_cast<int>(d));
    }
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (model.n_atoms < 1 || model.n_modes < 1) {
        fail("[model] needs at least one atom and one mode");
    }
    if (model.n_atoms > 8 || model.n_modes > 4) {
        fail("[model] supports at most 8 atoms and 4 modes");
    }
    if (!(model.omega_atom > 0.0) || !(model.omega_mode > 0.0)) {
        fail("[model] frequencies must be positive");
    }
    if (n_max < 1) {
        fail("[truncation] n_max must be >= 1");
    }
    for (int d : ansatz.depths) {
        if (d < 1) {
            fail("[ansatz] depths must be >= 1");
        }
    }
    if (optimizer.restarts < 1) {
        fail("[optimizer] restarts must be >= 1");
    }
    try {
        optimizer.spsa_config.validate();
    } catch (const InvalidArgument &e) {
        fail(std::string("[optimizer] ") + e.what());
    }
    for (double p : {noise.depolarizing, noise.damping, noise.readout_p01, noise.readout_p10}) {
        if (p < 0.0 || p > 1.0) {
            fail("[noise] probabilities must lie in [0, 1]");
        }
    }
    for (double l : noise.lambdas) {
        if (l < 0.0) {
            fail("[noise] lambdas must be >= 0");
        }
    }
    if (noise.seeds < 1 || noise.n_max < 1 || noise.depth < 1 || noise.final_evaluations < 1) {
        fail("[noise] seeds, n_max, depth and final_evaluations must be >= 1");
    }
    if (tomography.n_max < 1 || tomography.n_re < 1 || tomography.n_im < 1 ||
        tomography.ansatz_depth < 1) {
        fail("[tomography] n_max, n_re, n_im and ansatz_depth must be >= 1");
    }
    if (tomography.re_max < tomography.re_min || tomography.im_max < tomography.im_min) {
        fail("[tomography] empty range");
    }
    for (int d : tomography.depths) {
        if (d < 1) {
            fail("[tomography] depths must be >= 1");
        }
    }
    for (double c : tomography.cutoffs) {
        if (!(c > 0.0)) {
            fail("[tomography] cutoffs must be positive");
        }
    }
    if (tomography.source != "exact" && tomography.source != "vqe") {
        fail("[tomography] source must be 'exact' or 'vqe'");
    }
    if (static_cast<int>(tomography.labels.size()) != model.n_atoms) {
        fail("[tomography] labels needs one character per atom");
    }
    for (char c : tomography.labels) {
        if (std::string("0ixyzIXYZ").find(c) == std::string::npos) {
            fail("[tomography] labels are drawn from 0, x, y, z");
        }
    }
    if (reference.n_max < 0) {
        fail("[reference] n_max must be >= 0");
    }
    if (threads < 0) {
        fail("[run] threads must be >= 0");
    }
}

ExperimentConfig parse_config(const std::string &text) {
    pt::ptree tree;
    try {
        std::istringstream is(text);
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    // empty sections never reach the tree
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            boost::trim(line);
            if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
                const std::string name = boost::trim_copy(line.substr(1, line.size() - 2));
                if (!schema().contains(name)) {
                    throw ConfigError("unknown section [" + name + "]");
                }
            }
        }
    }

    ExperimentConfig cfg;
    cfg.hash = fnv1a(text);
    for (const auto &[section, body] : tree) {
        const auto sec = schema().find(section);
        if (sec == schema().end()) {
            if (!body.data().empty()) {
                throw ConfigError("key '" + section + "' outside any section");
            }
            throw ConfigError("unknown section [" + section + "]");
        }
        for (const auto &[key, node] : body) {
            if (!sec->second.contains(key)) {
                throw ConfigError("unknown key " + where(section, key));
            }
            const std::string v = boost::trim_copy(node.data());
            const std::string ctx = where(section, key);
            auto d = [&] { return to_double(v, ctx); };
            auto i = [&] { return static_cast<int>(to_int(v, ctx)); };
            auto u = [&] {
                const long long x = to_int(v, ctx);
                if (x < 0) {
                    throw ConfigError(ctx + ": must be >= 0");
                }
                return static_cast<std::uint64_t>(x);
            };
            auto b = [&] { return to_bool(v, ctx); };

            if (section == "model") {
                if (key == "n_atoms") cfg.model.n_atoms = i();
                else if (key == "n_modes") cfg.model.n_modes = i();
                else if (key == "omega_atom") cfg.model.omega_atom = d();
                else if (key == "omega_mode") cfg.model.omega_mode = d();
                else if (key == "g_over_omega") cfg.model.g_over_omega = to_doubles(v, ctx);
            } else if (section == "truncation") {
                cfg.n_max = i();
            } else if (section == "ansatz") {
                if (key == "depths") cfg.ansatz.depths = to_ints(v, ctx);
                else if (key == "per_photon") cfg.ansatz.per_photon = b();
            } else if (section == "optimizer") {
                auto &o = cfg.optimizer;
                if (key == "spsa") o.spsa = b();
                else if (key == "max_trials") o.spsa_config.max_trials = i();
                else if (key == "a") o.spsa_config.a = d();
                else if (key == "c") o.spsa_config.c = d();
                else if (key == "stability") o.spsa_config.A = d();
                else if (key == "alpha") o.spsa_config.alpha = d();
                else if (key == "gamma") o.spsa_config.gamma = d();
                else if (key == "calibration_pairs") o.spsa_config.calibration_pairs = i();
                else if (key == "target_step") o.spsa_config.target_step = d();
                else if (key == "final_average") o.spsa_config.final_average = i();
                else if (key == "refine") o.refine = b();
                else if (key == "refiner_sweeps") o.refiner.max_sweeps = i();
                else if (key == "polish") o.refiner.polish = b();
                else if (key == "restarts") o.restarts = i();
                else if (key == "perturbation") o.perturbation = d();
            } else if (section == "noise") {
                auto &n = cfg.noise;
                if (key == "depolarizing") n.depolarizing = d();
                else if (key == "damping") n.damping = d();
                else if (key == "readout_p01") n.readout_p01 = d();
                else if (key == "readout_p10") n.readout_p10 = d();
                else if (key == "lambdas") n.lambdas = to_doubles(v, ctx);
                else if (key == "g_over_omega") n.g_over_omega = to_doubles(v, ctx);
                else if (key == "shots") n.shots = u();
                else if (key == "seeds") n.seeds = i();
                else if (key == "n_max") n.n_max = i();
                else if (key == "depth") n.depth = i();
                else if (key == "compare_mitigation") n.compare_mitigation = b();
                else if (key == "final_evaluations") n.final_evaluations = i();
            } else if (section == "tomography") {
                auto &t = cfg.tomography;
                if (key == "g_over_omega") t.g_over_omega = d();
                else if (key == "n_max") t.n_max = i();
                else if (key == "depths") t.depths = to_ints(v, ctx);
                else if (key == "re_min") t.re_min = d();
                else if (key == "re_max") t.re_max = d();
                else if (key == "n_re") t.n_re = i();
                else if (key == "im_min") t.im_min = d();
                else if (key == "im_max") t.im_max = d();
                else if (key == "n_im") t.n_im = i();
                else if (key == "labels") t.labels = v;
                else if (key == "cutoffs") t.cutoffs = to_doubles(v, ctx);
                else if (key == "source") t.source = v;
                else if (key == "ansatz_depth") t.ansatz_depth = i();
                else if (key == "shots") t.shots = u();
            } else if (section == "reference") {
                cfg.reference.n_max = i();
            } else if (section == "run") {
                if (key == "seed") cfg.seed = u();
                else if (key == "threads") cfg.threads = i();
            } else if (section == "output") {
                if (key == "dir") cfg.out_dir = v;
                else if (key == "dump_hamiltonian") cfg.dump_hamiltonian = b();
            }
        }
    }
    // one label per atom by default
    if (tree.get_child_optional("tomography.labels") == boost::none) {
        cfg.tomography.labels = std::string(static_cast<std::size_t>(std::max(cfg.model.n_atoms, 0)), 'z');
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace dicke
