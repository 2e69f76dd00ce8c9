// Copyright 2026 The spinrecon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINRECON_TESTS_SUPPORT_TEST_UTIL_H_
#define SPINRECON_TESTS_SUPPORT_TEST_UTIL_H_

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "spinrecon/spin.h"

namespace spinrecon::testing {

inline std::mt19937_64 &shared_rng() {
    static std::mt19937_64 rng(20260416);
    return rng;
}

// Gaussian amplitudes from the standard library; deliberately independent of
// the generator used by the library itself.
inline PureState random_state(int twos, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> amps;
    for (int k = 0; k <= twos; ++k) amps.emplace_back(g(rng), g(rng));
    return PureState(Spin(twos), std::move(amps));
}

inline Direction random_direction_uniform(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return Direction(std::acos(1.0 - 2.0 * u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// Overlap by explicit inner product with the rotation-built coherent state.
inline double husimi_by_inner_product(const PureState &state, const Direction &d) {
    PureState coh = coherent_state_by_rotation(state.spin(), d);
    cplx acc{0.0, 0.0};
    for (int k = 0; k <= state.twos(); ++k) acc += std::conj(state[k]) * coh[k];
    return std::norm(acc);
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        out.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
    }
    return out;
}

// (2s+1)/(4 pi) times the sphere integral of the Husimi function, which
// equals (2s+1)/pi times the plane integral with weight (1+|z|^2)^-2.
inline double husimi_sphere_integral(const PureState &state, int n_theta = 64, int n_phi = 64) {
    double total = 0.0;
    for (auto [x, w] : gauss_legendre(n_theta)) {
        const double theta = std::acos(x);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            total += w * (2.0 * std::numbers::pi / n_phi) * husimi(state, direction_to_point(Direction(theta, phi)));
        }
    }
    return (state.twos() + 1) / (4.0 * std::numbers::pi) * total;
}

}  // namespace spinrecon::testing

#endif  // SPINRECON_TESTS_SUPPORT_TEST_UTIL_H_
