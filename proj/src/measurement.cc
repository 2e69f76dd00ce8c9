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

#include "spinrecon/measurement.h"

#include <algorithm>
#include <cmath>

#include "spinrecon/error.h"

namespace spinrecon {

double probability_s(const PureState &state, const Direction &d) {
    return husimi(state, direction_to_point(d));
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform_unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t sample_binomial(std::int64_t trials, double p, std::mt19937_64 &rng) {
    if (trials < 0 || trials > 10'000'000) throw InvalidArgument("binomial: trials must lie in [0, 1e7]");
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw InvalidArgument("binomial: probability outside [0, 1]");
    p = std::clamp(p, 0.0, 1.0);
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;

    const double n = static_cast<double>(trials);
    const double q = 1.0 - p;
    const auto mode = std::min<std::int64_t>(trials, static_cast<std::int64_t>(std::floor((n + 1.0) * p)));
    const double m = static_cast<double>(mode);
    const double pmf_mode =
        std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0) + m * std::log(p) +
                 (n - m) * std::log(q));

    double u = uniform_unit(rng) - pmf_mode;
    if (u <= 0.0) return mode;
    std::int64_t lo = mode;
    std::int64_t hi = mode;
    double p_lo = pmf_mode;
    double p_hi = pmf_mode;
    const double up_ratio = p / q;
    const double down_ratio = q / p;
    while (lo > 0 || hi < trials) {
        double next_down = lo > 0 ? p_lo * static_cast<double>(lo) / static_cast<double>(trials - lo + 1) * down_ratio : -1.0;
        double next_up = hi < trials ? p_hi * static_cast<double>(trials - hi) / static_cast<double>(hi + 1) * up_ratio : -1.0;
        if (std::max(next_up, next_down) < 1e-300) break;
        if (next_up >= next_down) {
            ++hi;
            p_hi = next_up;
            u -= p_hi;
            if (u <= 0.0) return hi;
        } else {
            --lo;
            p_lo = next_down;
            u -= p_lo;
            if (u <= 0.0) return lo;
        }
    }
    return mode;  // only reached when rounding leaves u marginally positive
}

MeasurementOracle MeasurementOracle::exact(PureState state) { return MeasurementOracle(std::move(state), 0, 0); }

MeasurementOracle MeasurementOracle::sampled(PureState state, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1 || shots > 10'000'000) throw InvalidArgument("oracle: shots must lie in [1, 1e7]");
    return MeasurementOracle(std::move(state), shots, seed);
}

double MeasurementOracle::query(const Direction &d) {
    double p = probability_s(state_, d);
    double value = p;
    if (shots_ > 0) {
        std::mt19937_64 rng(mix_seed(seed_ ^ mix_seed(static_cast<std::uint64_t>(log_.size()))));
        value = static_cast<double>(sample_binomial(shots_, p, rng)) / static_cast<double>(shots_);
    }
    log_.push_back({d, value});
    return value;
}

}  // namespace spinrecon
