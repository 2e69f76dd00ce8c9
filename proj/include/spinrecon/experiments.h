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

#ifndef SPINRECON_EXPERIMENTS_H_
#define SPINRECON_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "spinrecon/spin.h"

namespace spinrecon {

/// Haar-random pure state: normalized complex Gaussian amplitudes, canonical phase.
PureState haar_state(Spin spin, std::mt19937_64 &rng);

enum class NodeStrategy { line, random_points };

struct AmbiguityTrial {
    /// Distinct rays among the zero-conjugation flips of the true state that
    /// reproduce the node values up to one common scale factor.
    int consistent_up_to_scale = 0;
    /// Same, but the values must match as they are (normalized rays).
    int consistent_normalized = 0;
};

struct AmbiguityStats {
    int twos = 1;
    NodeStrategy strategy = NodeStrategy::random_points;
    std::vector<AmbiguityTrial> trials;
    /// Fractions of trials where only the true ray is consistent; empty when
    /// no trials ran.
    std::optional<double> unique_fraction_up_to_scale;
    std::optional<double> unique_fraction_normalized;
};

/// Trial t uses the generator seeded from seed + t.
AmbiguityStats ambiguity_experiment(Spin spin, NodeStrategy strategy, int trials, std::uint64_t seed);

struct ConditioningRow {
    int twos = 1;
    double line = 0.0;
    double equator = 0.0;
};

/// 2-norm condition numbers of the default line and equator design matrices
/// for 2s = 1 .. max_twos.
std::vector<ConditioningRow> conditioning_sweep(int max_twos);

}  // namespace spinrecon

#endif  // SPINRECON_EXPERIMENTS_H_
