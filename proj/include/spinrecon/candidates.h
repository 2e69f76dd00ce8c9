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

#ifndef SPINRECON_CANDIDATES_H_
#define SPINRECON_CANDIDATES_H_

#include <cstdint>
#include <random>
#include <vector>

#include "spinrecon/linear_inversion.h"
#include "spinrecon/measurement.h"

namespace spinrecon {

/// One state compatible with the Step I coefficients.
struct Candidate {
    /// Normalized, canonical ray.
    PureState state;
    /// Squared norm of the candidate with the leading coefficient fixed by the
    /// data; its Husimi function on the node curve is weight * husimi(state, .).
    /// Equals 1 for the true state. Flipping a subset of zeros keeps the node
    /// values but generally not the norm, so weight != 1 marks a candidate that
    /// normalization alone would already exclude.
    double weight = 1.0;
    /// max_nu |weight * husimi(state, z_nu) - fitted p_nu|.
    double data_residual = 0.0;
    /// Per pair: how many of its multiplicity copies sit on the upper branch
    /// (frame Im > 0); -1 for unambiguous pairs.
    std::vector<int> upper_counts;
    std::vector<PhasePoint> zeros;

    /// The Husimi function the candidate predicts for the measured data,
    /// weight * husimi(state, p).
    double scaled_husimi(const PhasePoint &p) const { return weight * husimi(state, p); }
};

/// Upper (frame Im > 0) and lower branch positions of a pair in the plane.
struct Branches {
    PhasePoint upper;
    PhasePoint lower;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    std::vector<ZeroPair> pairs;
    /// branches[i] belongs to pairs[i].
    std::vector<Branches> branches;
    int infinity_count = 0;

    std::size_t size() const { return candidates.size(); }
};

/// All states reproducing the Step I data: each ambiguous pair of
/// multiplicity k contributes k+1 branch choices (how many copies sit on the
/// upper branch), so generic states give 2^{2s} candidates. For a line base
/// the mirror is z -> z*, for an equator base z -> 1/z* (both about the
/// shifted/rotated base curve).
/// Throws InvalidArgument when multiplicities and infinity_count do not add
/// up to 2s.
CandidateSet enumerate_candidates(const PairedRoots &roots, const NodeSet &nodes, const CoefficientVector &c);

struct StepTwoResult {
    std::size_t index = 0;
    /// Oracle queries spent by the disambiguation.
    int queries = 0;
    /// Directions tried (single probe only).
    int attempts = 0;
    /// Every probe made, in order.
    std::vector<QueryRecord> measured;
};

/// Probe the oracle at the upper branch of every ambiguous pair (both branches
/// for coincident pairs) and keep the candidates whose zeros agree with the
/// observed vanishing pattern. A value below 1e-9 (exact) or 3/shots
/// (sampled) counts as vanishing.
/// Throws InconclusiveProbe when a sampled value lies in [3/shots, 30/shots)
/// or when no candidate agrees with the observations.
StepTwoResult disambiguate_zero_probe(const CandidateSet &cands, MeasurementOracle &oracle);

/// Pick a random direction at chordal distance >= 0.05 from every putative
/// zero where all candidates' predicted probabilities are separated
/// (exact: 1e-6, sampled: five standard errors), query it once and return the
/// candidate closest to the measurement. Failed directions are perturbed by a
/// chordal step of 0.1, with a fresh draw after every 5 failures.
/// Throws RetriesExhausted after 50 attempts.
StepTwoResult disambiguate_single_probe(const CandidateSet &cands, MeasurementOracle &oracle, std::mt19937_64 &rng);

/// Uniformly distributed direction on the sphere.
Direction random_direction(std::mt19937_64 &rng);

}  // namespace spinrecon

#endif  // SPINRECON_CANDIDATES_H_
