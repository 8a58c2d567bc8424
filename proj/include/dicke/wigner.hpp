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
/**
 * @file
 * Joint Wigner function from displaced joint-parity measurements on the
 * encoded registers.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/ses.hpp"
#include "dicke/statevector.hpp"

namespace dicke {

struct WignerGrid {
    /// One displacement vector (alpha_0, ..., alpha_{M-1}) per grid point.
    std::vector<std::vector<cplx>> points;
    std::vector<AtomLabel> labels;
    double cell_area = 0.0;

    /// n_re x n_im grid for mode `mode`; other modes stay at alpha = 0.
    static WignerGrid rectangular(double re_min, double re_max, int n_re, double im_min,
                                  double im_max, int n_im, std::vector<AtomLabel> labels,
                                  int n_modes = 1, int mode = 0);

    void validate(int n_atoms, int n_modes) const;
    /// |alpha| of every point (Euclidean norm over modes).
    [[nodiscard]] std::vector<double> radii() const;
};

/// Trotterized D(alpha) on register k: per step the real block
/// exp(Re(alpha)/d (a^+ - a)) then the imaginary block
/// exp(i Im(alpha)/d (a + a^+)), each as even bonds then odd bonds.
Program build_displacement(int k, cplx alpha, int depth, const QubitLayout &layout);

struct WignerSampling {
    bool exact = true;       ///< probabilities from amplitudes
    std::uint64_t shots = 0; ///< used when exact is false
    std::uint64_t seed = 1;
};

struct WignerSample {
    double value = 0.0;
    double retention = 1.0;
    bool flagged = false; ///< retention below 50%
};

inline constexpr double kWignerRetentionFlag = 0.5;

/// W~_l(alpha) at every grid point; points are evaluated in parallel.
std::vector<WignerSample> sample_wigner(const StateVector &state, const QubitLayout &layout,
                                        const WignerGrid &grid, int depth,
                                        const WignerSampling &sampling = {});

/// sqrt(sum_{|alpha| <= cutoff} (W~ - W)^2 * cell_area) / (sqrt(pi) * cutoff).
double wigner_error(std::span<const double> sampled, std::span<const double> exact,
                    std::span<const double> radii, double cutoff, double cell_area);

} // namespace dicke
