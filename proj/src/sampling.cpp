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

#include "dicke/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "dicke/error.hpp"

namespace dicke {

namespace {

// 53-bit uniform in [0, 1); std::uniform_real_distribution is not
// specified bit-exactly across standard libraries.
double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

unsigned qubits_for(std::size_t size) {
    unsigned n = 0;
    while ((std::size_t{1} << n) < size) {
        ++n;
    }
    if ((std::size_t{1} << n) != size) {
        throw InvalidArgument("distribution length must be a power of two");
    }
    return n;
}

using Mat2r = std::array<double, 4>;

// Applies a per-qubit 2x2 real matrix on every qubit (tensor product).
void apply_tensor(std::vector<double> &v, const std::vector<Mat2r> &mats) {
    for (std::size_t q = 0; q < mats.size(); ++q) {
        const std::size_t bit = std::size_t{1} << q;
        const auto &m = mats[q];
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const double a = v[i];
            const double b = v[i | bit];
            v[i] = m[0] * a + m[1] * b;
            v[i | bit] = m[2] * a + m[3] * b;
        }
    }
}

// Columns are the true value, rows the read value.
std::vector<Mat2r> confusion(const ReadoutError &err, bool transpose) {
    std::vector<Mat2r> mats;
    for (const auto &[p01, p10] : err.flips) {
        Mat2r m{1.0 - p01, p10, p01, 1.0 - p10};
        if (transpose) {
            std::swap(m[1], m[2]);
        }
        mats.push_back(m);
    }
    return mats;
}

} // namespace

Histogram sample_from_distribution(std::span<const double> probs, std::uint64_t shots,
                                   std::uint64_t seed) {
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.empty() ? 0.0 : cdf.back();
    if (!(total > 0.0)) {
        throw NumericalError("cannot sample from an empty distribution");
    }
    std::mt19937_64 rng(seed);
    Histogram counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        // skip zero-probability outcomes that share the CDF value
        auto idx = static_cast<std::uint64_t>(it - cdf.begin());
        while (probs[idx] == 0.0 && idx > 0) {
            --idx;
        }
        ++counts[idx];
    }
    return counts;
}

Histogram sample_counts(const StateVector &state, const Program &basis_change,
                        std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw InvalidArgument("shots must be >= 1");
    }
    StateVector work = state;
    apply_program(work, basis_change);
    return sample_from_distribution(work.probabilities(), shots, seed);
}

Distribution to_distribution(const Histogram &counts, unsigned n_qubits) {
    Distribution p(std::size_t{1} << n_qubits, 0.0);
    std::uint64_t total = 0;
    for (const auto &[k, c] : counts) {
        if (k >= p.size()) {
            throw InvalidArgument("histogram key out of range");
        }
        p[k] += static_cast<double>(c);
        total += c;
    }
    if (total > 0) {
        for (auto &x : p) {
            x /= static_cast<double>(total);
        }
    }
    return p;
}

bool ReadoutError::is_trivial() const {
    return std::all_of(flips.begin(), flips.end(),
                       [](const auto &f) { return f.first == 0.0 && f.second == 0.0; });
}

ReadoutError ReadoutError::uniform(unsigned n_qubits, double p01, double p10) {
    return ReadoutError{std::vector<std::pair<double, double>>(n_qubits, {p01, p10})};
}

Distribution apply_readout_error(std::span<const double> probs, const ReadoutError &err) {
    if (qubits_for(probs.size()) != err.num_qubits()) {
        throw InvalidArgument("readout model and distribution disagree on qubit count");
    }
    Distribution out(probs.begin(), probs.end());
    apply_tensor(out, confusion(err, false));
    return out;
}

Histogram apply_readout_error(const Histogram &counts, const ReadoutError &err,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Histogram out;
    for (const auto &[key, c] : counts) {
        for (std::uint64_t s = 0; s < c; ++s) {
            std::uint64_t read = key;
            for (unsigned q = 0; q < err.num_qubits(); ++q) {
                const bool one = (key >> q) & 1U;
                const double p = one ? err.flips[q].second : err.flips[q].first;
                if (uniform01(rng) < p) {
                    read ^= std::uint64_t{1} << q;
                }
            }
            ++out[read];
        }
    }
    return out;
}

Distribution project_to_simplex(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumsum += u[j];
        const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            tau = t;
        }
    }
    Distribution out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(v[i] - tau, 0.0);
    }
    return out;
}

Distribution mitigate_readout(std::span<const double> measured, const ReadoutError &err) {
    if (qubits_for(measured.size()) != err.num_qubits()) {
        throw InvalidArgument("readout model and distribution disagree on qubit count");
    }
    std::vector<Mat2r> inv;
    double lipschitz = 1.0;
    for (const auto &m : confusion(err, false)) {
        const double det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-12) {
            throw InvalidArgument("singular readout confusion matrix");
        }
        inv.push_back({m[3] / det, -m[1] / det, -m[2] / det, m[0] / det});
        // largest singular value squared bounds the per-qubit Lipschitz factor
        const double fro2 = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
        const double disc = std::sqrt(std::max(fro2 * fro2 - 4.0 * det * det, 0.0));
        lipschitz *= 0.5 * (fro2 + disc);
    }

    Distribution x(measured.begin(), measured.end());
    apply_tensor(x, inv);
    if (*std::min_element(x.begin(), x.end()) >= -1e-12) {
        for (auto &v : x) {
            v = std::max(v, 0.0);
        }
        const double s = std::accumulate(x.begin(), x.end(), 0.0);
        for (auto &v : x) {
            v /= s;
        }
        return x;
    }

    // FISTA on 0.5 |A x - p|^2 over the simplex, started from the
    // projected unconstrained solution.
    const auto fwd = confusion(err, false);
    const auto adj = confusion(err, true);
    const double step = 1.0 / lipschitz;
    x = project_to_simplex(x);
    Distribution y = x;
    double t = 1.0;
    for (int it = 0; it < 20000; ++it) {
        Distribution r = y;
        apply_tensor(r, fwd);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] -= measured[i];
        }
        apply_tensor(r, adj);
        Distribution z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            z[i] = y[i] - step * r[i];
        }
        Distribution x_next = project_to_simplex(z);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        double change = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = x_next[i] + ((t - 1.0) / t_next) * (x_next[i] - x[i]);
            change = std::max(change, std::abs(x_next[i] - x[i]));
        }
        x = std::move(x_next);
        t = t_next;
        if (change < 1e-13) {
            break;
        }
    }
    return x;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw InvalidArgument("distributions differ in length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += std::abs(p[i] - q[i]);
    }
    return 0.5 * acc;
}

} // namespace dicke
