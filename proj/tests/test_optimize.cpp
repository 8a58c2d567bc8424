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
#include <limits>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"

#include "dicke/error.hpp"
#include "dicke/optimize.hpp"

using namespace dicke;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<double> kOptimum{0.7, -1.2, 0.4};

double bowl(std::span<const double> x, std::uint64_t) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += (x[i] - kOptimum[i]) * (x[i] - kOptimum[i]);
    }
    return s;
}

double distance(const std::vector<double> &x) {
    return std::sqrt(bowl(x, 0));
}

} // namespace

TEST_CASE("SPSA on a quadratic bowl", "[spsa]") {
    const std::vector<double> theta0{0.0, 0.0, 0.0};
    SpsaConfig cfg;
    cfg.max_trials = 200;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto res = spsa_minimize(bowl, theta0, cfg);
        CHECK(distance(res.final_theta) < 0.05 * distance(theta0));
        CHECK(res.iterations == 200);
        CHECK(res.trace.size() == 201);
        CHECK_FALSE(res.aborted);
        CHECK(res.a > 0.0);
    }
}

TEST_CASE("SPSA with no trials returns the start", "[spsa]") {
    const std::vector<double> theta0{0.3, 0.2, 0.1};
    SpsaConfig cfg;
    cfg.max_trials = 0;
    const auto res = spsa_minimize(bowl, theta0, cfg);
    CHECK(res.theta == theta0);
    CHECK(res.final_theta == theta0);
}

TEST_CASE("SPSA is deterministic for a seed", "[spsa]") {
    SpsaConfig cfg;
    cfg.max_trials = 60;
    cfg.seed = 99;
    const auto a = spsa_minimize(bowl, {1.0, 1.0, 1.0}, cfg);
    const auto b = spsa_minimize(bowl, {1.0, 1.0, 1.0}, cfg);
    CHECK(a.trace == b.trace);
    CHECK(a.theta == b.theta);
    cfg.seed = 100;
    CHECK(spsa_minimize(bowl, {1.0, 1.0, 1.0}, cfg).trace != a.trace);
}

TEST_CASE("SPSA aborts on NaN", "[spsa]") {
    int calls = 0;
    const Objective f = [&](std::span<const double>, std::uint64_t) {
        return ++calls > 20 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    SpsaConfig cfg;
    cfg.a = 0.1;
    const auto res = spsa_minimize(f, {0.0}, cfg);
    CHECK(res.aborted);
    CHECK(res.iterations < cfg.max_trials);
}

TEST_CASE("SPSA configuration is validated", "[spsa]") {
    SpsaConfig cfg;
    cfg.c = 0.0;
    CHECK_THROWS_AS(spsa_minimize(bowl, {0.0}, cfg), InvalidArgument);
    cfg = {};
    cfg.max_trials = -1;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("Refiner converges on smooth objectives", "[refiner]") {
    const auto res = refine_minimize(bowl, {0.0, 0.0, 0.0}, {});
    CHECK(distance(res.theta) < 1e-6);
    CHECK(res.value < 1e-12);
    CHECK(res.iterations <= 30);

    // coupled quadratic that coordinate descent alone handles slowly
    const Objective tilted = [](std::span<const double> x, std::uint64_t) {
        const double u = x[0] + 0.9 * x[1] - 1.0;
        const double v = x[1] - 0.5;
        return 10 * u * u + v * v + 0.3 * std::pow(x[0] - 0.55, 4);
    };
    const auto r2 = refine_minimize(tilted, {0.0, 0.0}, {});
    CHECK_THAT(r2.theta[0], WithinAbs(0.55, 1e-4));
    CHECK_THAT(r2.theta[1], WithinAbs(0.5, 1e-4));
}

TEST_CASE("Refiner never moves uphill", "[refiner]") {
    const Objective f = [](std::span<const double> x, std::uint64_t) {
        return std::cos(3 * x[0]) + 0.1 * x[0] * x[0] + std::sin(2 * x[1]);
    };
    const std::vector<double> start{0.2, -0.4};
    const auto res = refine_minimize(f, start, {});
    CHECK(res.value <= f(start, 0));
    CHECK(res.trace.front() >= res.trace.back());
}

TEST_CASE("Seed derivation", "[spsa]") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t base : {0ULL, 1ULL, 2ULL}) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            seen.insert(derive_seed(base, i));
        }
    }
    CHECK(seen.size() == 300);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
