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

#ifndef SPINRECON_RECONSTRUCT_H_
#define SPINRECON_RECONSTRUCT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "spinrecon/candidates.h"
#include "spinrecon/error.h"

namespace spinrecon {

enum class StepTwoMethod { zero_probe, single_probe };

enum class Method { zero_probe, single_probe, zero_search };

const char *method_name(Method m);

struct ReconstructConfig {
    NodeSpec nodes = LineNodes{};
    StepTwoMethod step_two = StepTwoMethod::zero_probe;
    /// Drives the random probe direction of the single-probe method.
    std::uint64_t seed = 0;
};

struct ReconstructionReport {
    Method method = Method::zero_probe;
    std::optional<PureState> chosen;
    std::size_t candidates_considered = 0;
    std::vector<ZeroPair> zero_pairs;
    int infinity_zeros = 0;
    std::optional<NodeSet> nodes;
    std::vector<double> node_probabilities;
    std::size_t measurements_used = 0;
    double condition_estimate = 0.0;
    bool ill_conditioned = false;
    /// Directions tried by the single probe, 0 otherwise.
    int probe_attempts = 0;
    /// Single probe gave up and the zero probe decided instead.
    bool fell_back = false;
    /// Never filled by reconstruct(); only callers that know the truth set it.
    std::optional<double> fidelity_vs_truth;
};

/// Raised when Step II cannot decide; carries everything gathered so far.
class InconclusiveReconstruction : public InconclusiveProbe {
   public:
    InconclusiveReconstruction(const std::string &what, ReconstructionReport partial)
        : InconclusiveProbe(what), partial_(std::make_shared<ReconstructionReport>(std::move(partial))) {}

    const ReconstructionReport &partial() const { return *partial_; }

   private:
    std::shared_ptr<const ReconstructionReport> partial_;
};

ReconstructionReport reconstruct(MeasurementOracle &oracle, const ReconstructConfig &config = {});

}  // namespace spinrecon

#endif  // SPINRECON_RECONSTRUCT_H_
