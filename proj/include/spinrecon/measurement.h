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

#ifndef SPINRECON_MEASUREMENT_H_
#define SPINRECON_MEASUREMENT_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "spinrecon/sphere.h"
#include "spinrecon/spin.h"

namespace spinrecon {

/// Probability of the outcome s for a Stern-Gerlach apparatus along d,
/// |<s, n|psi>|^2.
double probability_s(const PureState &state, const Direction &d);

/// Draw from Binomial(trials, p) by inverting the distribution function,
/// summing outward from the mode. trials <= 1e7. p may exceed [0, 1] by at
/// most 1e-12 (rounding) and is clamped.
std::int64_t sample_binomial(std::int64_t trials, double p, std::mt19937_64 &rng);

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so that
/// results do not depend on the standard library's distribution code.
double uniform_unit(std::mt19937_64 &rng);

/// splitmix64 finalizer; used to derive independent generator seeds.
std::uint64_t mix_seed(std::uint64_t x);

struct QueryRecord {
    Direction direction;
    double value = 0.0;
};

/// Simulated apparatus over a hidden state.
///
/// Consumers see only query() and the log. In sampled mode each query returns
/// m / shots with m ~ Binomial(shots, p); the generator for query i is seeded
/// from (seed, i), so replaying a query sequence reproduces every value.
/// Not thread-safe: one owner at a time.
class MeasurementOracle {
   public:
    static MeasurementOracle exact(PureState state);
    /// Throws InvalidArgument unless 1 <= shots <= 1e7.
    static MeasurementOracle sampled(PureState state, std::int64_t shots, std::uint64_t seed);

    double query(const Direction &d);

    std::size_t query_count() const { return log_.size(); }
    std::span<const QueryRecord> query_log() const { return log_; }

    Spin spin() const { return state_.spin(); }
    bool is_exact() const { return shots_ == 0; }
    /// Shots per direction; 0 in exact mode.
    std::int64_t shots() const { return shots_; }

   private:
    MeasurementOracle(PureState state, std::int64_t shots, std::uint64_t seed)
        : state_(std::move(state)), shots_(shots), seed_(seed) {}

    PureState state_;
    std::int64_t shots_;
    std::uint64_t seed_;
    std::vector<QueryRecord> log_;
};

}  // namespace spinrecon

#endif  // SPINRECON_MEASUREMENT_H_
