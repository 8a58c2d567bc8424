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

#include "dicke/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <ceres/ceres.h>

#include "dicke/error.hpp"

namespace dicke {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over a combined word
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void SpsaConfig::validate() const {
    if (max_trials < 0) {
        throw InvalidArgument("max_trials must be >= 0");
    }
    if (!(c > 0.0)) {
        throw InvalidArgument("SPSA c must be > 0");
    }
    if (!(alpha > 0.0) || !(gamma > 0.0)) {
        throw InvalidArgument("SPSA exponents must be > 0");
    }
    if (calibration_pairs < 1 && a <= 0.0) {
        throw InvalidArgument("calibration needs at least one probe pair");
    }
    if (final_average < 1) {
        throw InvalidArgument("final_average must be >= 1");
    }
}

namespace {

class Counter {
  public:
    Counter(const Objective &f, OptimizerResult &res) : f_(f), res_(res) {}
    double operator()(std::span<const double> x) {
        const double v = f_(x, res_.evaluations);
        ++res_.evaluations;
        return v;
    }

  private:
    const Objective &f_;
    OptimizerResult &res_;
};

void perturbation(std::mt19937_64 &rng, std::vector<double> &delta) {
    for (auto &d : delta) {
        d = (rng() & 1U) ? 1.0 : -1.0;
    }
}

void finish(OptimizerResult &res, const std::vector<std::vector<double>> &centers) {
    if (res.trace.empty()) {
        return;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
        if (res.trace[i] < res.trace[best]) {
            best = i;
        }
    }
    res.value = res.trace[best];
    res.theta = centers[best];
}

} // namespace

OptimizerResult spsa_minimize(const Objective &f, std::vector<double> theta0,
                              const SpsaConfig &cfg) {
    cfg.validate();
    OptimizerResult res;
    Counter eval(f, res);
    const std::size_t n = theta0.size();
    const double A = cfg.A < 0.0 ? 0.1 * cfg.max_trials : cfg.A;
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> theta = std::move(theta0);
    std::vector<double> delta(n);
    std::vector<double> plus(n);
    std::vector<double> minus(n);
    std::vector<std::vector<double>> centers;

    auto probe = [&](double ck) {
        perturbation(rng, delta);
        for (std::size_t i = 0; i < n; ++i) {
            plus[i] = theta[i] + ck * delta[i];
            minus[i] = theta[i] - ck * delta[i];
        }
        return std::pair{eval(plus), eval(minus)};
    };

    double a = cfg.a;
    if (a <= 0.0 && cfg.max_trials > 0 && n > 0) {
        double mag = 0.0;
        for (int j = 0; j < cfg.calibration_pairs; ++j) {
            const auto [yp, ym] = probe(cfg.c);
            if (std::isnan(yp) || std::isnan(ym)) {
                res.aborted = true;
                break;
            }
            mag += std::abs(yp - ym) / (2.0 * cfg.c);
        }
        mag /= cfg.calibration_pairs;
        a = cfg.target_step * std::pow(A + 1.0, cfg.alpha) / (mag > 0.0 ? mag : 1.0);
    }
    res.a = a;

    for (int t = 0; t < cfg.max_trials && n > 0 && !res.aborted; ++t) {
        const double ck = cfg.c / std::pow(t + 1.0, cfg.gamma);
        const double ak = a / std::pow(t + 1.0 + A, cfg.alpha);
        const auto [yp, ym] = probe(ck);
        if (std::isnan(yp) || std::isnan(ym)) {
            res.aborted = true;
            break;
        }
        res.trace.push_back(0.5 * (yp + ym));
        centers.push_back(theta);
        const double diff = (yp - ym) / (2.0 * ck);
        for (std::size_t i = 0; i < n; ++i) {
            theta[i] -= ak * diff / delta[i];
        }
        ++res.iterations;
    }

    if (!res.aborted) {
        double acc = 0.0;
        for (int j = 0; j < cfg.final_average; ++j) {
            acc += eval(theta);
        }
        const double y = acc / cfg.final_average;
        if (std::isnan(y)) {
            res.aborted = true;
        } else {
            res.trace.push_back(y);
            centers.push_back(theta);
        }
    }
    res.final_theta = theta;
    finish(res, centers);
    if (res.trace.empty()) {
        res.theta = theta;
        res.value = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section search of g on [lo, hi]; returns (argmin, min) over the
// points evaluated.
template <class G> std::pair<double, double> golden(G &&g, double lo, double hi, double tol) {
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = g(x1);
    double f2 = g(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = g(x2);
        }
    }
    return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

class FiniteDifferenceFunction final : public ceres::FirstOrderFunction {
  public:
    FiniteDifferenceFunction(Counter &eval, int n, double h) : eval_(eval), n_(n), h_(h) {}

    bool Evaluate(const double *parameters, double *cost, double *gradient) const override {
        std::vector<double> x(parameters, parameters + n_);
        *cost = eval_(x);
        if (!std::isfinite(*cost)) {
            return false;
        }
        if (gradient != nullptr) {
            for (int i = 0; i < n_; ++i) {
                const double xi = x[i];
                x[i] = xi + h_;
                const double fp = eval_(x);
                x[i] = xi - h_;
                const double fm = eval_(x);
                x[i] = xi;
                gradient[i] = (fp - fm) / (2.0 * h_);
            }
        }
        return true;
    }

    int NumParameters() const override { return n_; }

  private:
    Counter &eval_;
    int n_;
    double h_;
};

} // namespace

OptimizerResult refine_minimize(const Objective &f, std::vector<double> theta0,
                                const RefinerConfig &cfg) {
    OptimizerResult res;
    Counter eval(f, res);
    std::vector<double> x = std::move(theta0);
    const std::size_t n = x.size();
    double fx = eval(x);
    if (std::isnan(fx)) {
        res.aborted = true;
        res.theta = res.final_theta = x;
        res.value = fx;
        return res;
    }
    res.trace.push_back(fx);

    double radius = cfg.initial_radius;
    for (int sweep = 0; sweep < cfg.max_sweeps && n > 0; ++sweep) {
        const double before = fx;
        double max_move = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double xj = x[j];
            auto line = [&](double t) {
                x[j] = t;
                const double v = eval(x);
                x[j] = xj;
                return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
            };
            const auto [t, ft] = golden(line, xj - radius, xj + radius, 1e-6 * radius);
            if (ft < fx) {
                x[j] = t;
                fx = ft;
                max_move = std::max(max_move, std::abs(t - xj));
            }
        }
        res.trace.push_back(fx);
        ++res.iterations;
        radius = std::clamp(2.0 * max_move, 1e-3, cfg.initial_radius);
        if (before - fx < cfg.tolerance) {
            break;
        }
    }

    if (cfg.polish && n > 0) {
        std::vector<double> y = x;
        ceres::GradientProblemSolver::Options opts;
        opts.line_search_direction_type = ceres::BFGS;
        opts.max_num_iterations = cfg.max_polish_iterations;
        opts.logging_type = ceres::SILENT;
        opts.minimizer_progress_to_stdout = false;
        opts.function_tolerance = 1e-15;
        opts.gradient_tolerance = 1e-9;
        opts.parameter_tolerance = 1e-12;
        ceres::GradientProblem problem(
            new FiniteDifferenceFunction(eval, static_cast<int>(n), cfg.fd_step));
        ceres::GradientProblemSolver::Summary summary;
        ceres::Solve(opts, problem, y.data(), &summary);
        const int steps = std::max<int>(0, static_cast<int>(summary.iterations.size()) - 1);
        res.iterations += steps;
        const double fy = eval(y);
        if (fy < fx) {
            x = y;
            fx = fy;
        }
        res.trace.push_back(fx);
    }

    res.theta = x;
    res.final_theta = x;
    res.value = fx;
    return res;
}

} // namespace dicke
