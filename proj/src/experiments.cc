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

#include "spinrecon/experiments.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinrecon/candidates.h"
#include "spinrecon/error.h"
#include "spinrecon/linear_inversion.h"
#include "spinrecon/measurement.h"

namespace spinrecon {

namespace {

constexpr double kConsistency = 1e-8;
constexpr double kSameRay = 1e-9;
constexpr double kMinNodeSeparation = 1e-3;

double standard_normal(std::mt19937_64 &rng) {
    // Box-Muller on our own uniform draw keeps the stream identical across
    // standard library implementations.
    const double u1 = 1.0 - uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<PhasePoint> random_nodes(int count, std::mt19937_64 &rng) {
    std::vector<PhasePoint> out;
    while (static_cast<int>(out.size()) < count) {
        PhasePoint p = direction_to_point(random_direction(rng));
        bool clear = true;
        for (const PhasePoint &q : out) clear = clear && chordal_distance(p, q) > kMinNodeSeparation;
        if (clear) out.push_back(p);
    }
    return out;
}

AmbiguityTrial run_trial(Spin spin, NodeStrategy strategy, std::mt19937_64 &rng) {
    const PureState truth = haar_state(spin, rng);
    std::vector<PhasePoint> nodes;
    if (strategy == NodeStrategy::line) {
        for (cplx z : default_line_nodes(spin).points()) nodes.emplace_back(z);
    } else {
        nodes = random_nodes(2 * spin.twos() + 1, rng);
    }
    std::vector<double> data;
    for (const PhasePoint &p : nodes) data.push_back(husimi(truth, p));

    const std::vector<PhasePoint> zeros = zeros_of(truth).zeros;
    const std::size_t n = zeros.size();
    std::vector<PureState> scaled_ok;
    std::vector<PureState> normalized_ok;
    auto add_distinct = [](std::vector<PureState> &rays, const PureState &s) {
        for (const PureState &r : rays) {
            if (fidelity(r, s) > 1.0 - kSameRay) return;
        }
        rays.push_back(s);
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<PhasePoint> flipped = zeros;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1U) flipped[j] = conjugate(flipped[j]);
        }
        const PureState cand = PureState(spin, amplitudes_from_zeros(spin, flipped));
        std::vector<double> predicted;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t nu = 0; nu < nodes.size(); ++nu) {
            predicted.push_back(husimi(cand, nodes[nu]));
            num += predicted.back() * data[nu];
            den += predicted.back() * predicted.back();
        }
        const double k = den > 0.0 ? num / den : 0.0;
        double scaled_err = 0.0;
        double plain_err = 0.0;
        for (std::size_t nu = 0; nu < nodes.size(); ++nu) {
            scaled_err = std::max(scaled_err, std::abs(k * predicted[nu] - data[nu]));
            plain_err = std::max(plain_err, std::abs(predicted[nu] - data[nu]));
        }
        if (scaled_err <= kConsistency) add_distinct(scaled_ok, cand);
        if (plain_err <= kConsistency) add_distinct(normalized_ok, cand);
    }
    return {static_cast<int>(scaled_ok.size()), static_cast<int>(normalized_ok.size())};
}

}  // namespace

PureState haar_state(Spin spin, std::mt19937_64 &rng) {
    std::vector<cplx> amps;
    amps.reserve(static_cast<std::size_t>(spin.dim()));
    for (int k = 0; k < spin.dim(); ++k) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        amps.emplace_back(re, im);
    }
    return PureState(spin, std::move(amps)).canonical();
}

AmbiguityStats ambiguity_experiment(Spin spin, NodeStrategy strategy, int trials, std::uint64_t seed) {
    if (trials < 0) throw InvalidArgument("ambiguity_experiment: negative trial count");
    if (spin.twos() > kMaxReconstructionTwos) throw InvalidArgument("ambiguity_experiment: spin too large");
    AmbiguityStats stats;
    stats.twos = spin.twos();
    stats.strategy = strategy;
    int unique_scaled = 0;
    int unique_plain = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(mix_seed(seed + static_cast<std::uint64_t>(t)));
        AmbiguityTrial trial = run_trial(spin, strategy, rng);
        unique_scaled += trial.consistent_up_to_scale == 1;
        unique_plain += trial.consistent_normalized == 1;
        stats.trials.push_back(trial);
    }
    if (trials > 0) {
        stats.unique_fraction_up_to_scale = static_cast<double>(unique_scaled) / trials;
        stats.unique_fraction_normalized = static_cast<double>(unique_plain) / trials;
    }
    return stats;
}

std::vector<ConditioningRow> conditioning_sweep(int max_twos) {
    if (max_twos < 1 || max_twos > kMaxReconstructionTwos) {
        throw InvalidArgument("conditioning_sweep: max 2s must lie in [1, 20]");
    }
    std::vector<ConditioningRow> rows;
    for (int twos = 1; twos <= max_twos; ++twos) {
        const Spin spin(twos);
        rows.push_back({twos, condition_number(design_matrix(default_line_nodes(spin))),
                        condition_number(design_matrix(make_nodes(spin, EquatorNodes{})))});
    }
    return rows;
}

}  // namespace spinrecon
