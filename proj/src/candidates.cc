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

#include "spinrecon/candidates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinrecon/error.h"

namespace spinrecon {

namespace {

// Enumeration is exhaustive; beyond this the candidate list no longer fits
// comfortably in memory.
constexpr std::size_t kMaxCandidates = std::size_t{1} << 16;

constexpr double kExactVanish = 1e-9;
constexpr double kExactSeparation = 1e-6;
constexpr double kProbeExclusion = 0.05;
constexpr double kPerturbationStep = 0.1;
constexpr int kMaxAttempts = 50;
constexpr int kFreshDrawEvery = 5;

bool has_zero_on_branch(const Candidate &c, const ZeroPair &pair, std::size_t i, bool upper) {
    int on_upper = c.upper_counts[i];
    return upper ? on_upper >= 1 : on_upper <= pair.multiplicity - 1;
}

std::vector<PhasePoint> putative_zeros(const CandidateSet &cands) {
    std::vector<PhasePoint> out;
    for (const Branches &b : cands.branches) {
        out.push_back(b.upper);
        out.push_back(b.lower);
    }
    if (!cands.candidates.empty()) {
        for (const PhasePoint &z : cands.candidates.front().zeros)
            if (z.is_infinite()) out.push_back(z);
    }
    return out;
}

double distance_to_set(const PhasePoint &p, const std::vector<PhasePoint> &set) {
    double d = std::numeric_limits<double>::infinity();
    for (const PhasePoint &q : set) d = std::min(d, chordal_distance(p, q));
    return d;
}

double standard_error(double p, std::int64_t shots) {
    const double n = static_cast<double>(shots);
    return std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
}

// Smallest gap between sorted predictions, measured against the separation
// threshold: returns the worst ratio gap / threshold.
double separation_margin(std::vector<double> predictions, std::int64_t shots) {
    std::sort(predictions.begin(), predictions.end());
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < predictions.size(); ++i) {
        double gap = predictions[i] - predictions[i - 1];
        double threshold = shots == 0 ? kExactSeparation
                                      : 5.0 * std::max(standard_error(predictions[i], shots),
                                                       standard_error(predictions[i - 1], shots));
        worst = std::min(worst, gap / threshold);
    }
    return worst;
}

std::vector<double> predictions_at(const CandidateSet &cands, const std::vector<std::size_t> &subset,
                                   const PhasePoint &p) {
    std::vector<double> out;
    out.reserve(subset.size());
    for (std::size_t i : subset) out.push_back(husimi(cands.candidates[i].state, p));
    return out;
}

std::size_t nearest_prediction(const CandidateSet &cands, const std::vector<std::size_t> &subset,
                               const PhasePoint &p, double measured) {
    std::size_t best = subset.front();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t i : subset) {
        double err = std::abs(husimi(cands.candidates[i].state, p) - measured);
        if (err < best_err) {
            best_err = err;
            best = i;
        }
    }
    return best;
}

Direction perturb(const Direction &d, std::mt19937_64 &rng) {
    // Chordal distance is half the chord, so a step of 0.1 turns by 2 asin(0.1).
    const double angle = 2.0 * std::asin(kPerturbationStep);
    const double t = d.theta();
    const double f = d.phi();
    const std::array<double, 3> n = d.unit_vector();
    const std::array<double, 3> e1{std::cos(t) * std::cos(f), std::cos(t) * std::sin(f), -std::sin(t)};
    const std::array<double, 3> e2{-std::sin(f), std::cos(f), 0.0};
    const double beta = 2.0 * std::numbers::pi * uniform_unit(rng);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        out[static_cast<std::size_t>(i)] =
            std::cos(angle) * n[static_cast<std::size_t>(i)] +
            std::sin(angle) * (std::cos(beta) * e1[static_cast<std::size_t>(i)] + std::sin(beta) * e2[static_cast<std::size_t>(i)]);
    }
    return Direction::from_unit_vector(out);
}

}  // namespace

Direction random_direction(std::mt19937_64 &rng) {
    const double cos_theta = 1.0 - 2.0 * uniform_unit(rng);
    const double phi = 2.0 * std::numbers::pi * uniform_unit(rng);
    return Direction(std::acos(std::clamp(cos_theta, -1.0, 1.0)), phi);
}

CandidateSet enumerate_candidates(const PairedRoots &roots, const NodeSet &nodes, const CoefficientVector &c) {
    const Spin spin = nodes.spin();
    int total = roots.infinity_count;
    for (const ZeroPair &p : roots.pairs) total += p.multiplicity;
    if (total != spin.twos() || roots.infinity_count < 0) {
        throw InvalidArgument("enumerate_candidates: zero count does not match 2s");
    }

    CandidateSet out;
    out.pairs = roots.pairs;
    out.infinity_count = roots.infinity_count;
    std::size_t count = 1;
    for (const ZeroPair &p : roots.pairs) {
        out.branches.push_back({nodes.frame_to_plane(PhasePoint(cplx{p.u, p.v_abs})),
                                nodes.frame_to_plane(PhasePoint(cplx{p.u, -p.v_abs}))});
        if (p.ambiguous()) {
            count *= static_cast<std::size_t>(p.multiplicity + 1);
            if (count > kMaxCandidates) throw InvalidArgument("enumerate_candidates: too many candidates to enumerate");
        }
    }
    const PhasePoint infinity_zero = nodes.frame_to_plane(PhasePoint::infinity());
    const std::vector<double> fitted = fitted_probabilities(nodes, c);

    std::vector<int> digits(roots.pairs.size(), 0);
    out.candidates.reserve(count);
    for (std::size_t index = 0; index < count; ++index) {
        // Mixed-radix counter over the ambiguous pairs.
        std::size_t rest = index;
        Candidate cand{PureState::basis(spin, spin.twos()), 1.0, 0.0, {}, {}};
        for (std::size_t i = 0; i < roots.pairs.size(); ++i) {
            const ZeroPair &p = roots.pairs[i];
            if (!p.ambiguous()) {
                cand.upper_counts.push_back(-1);
                for (int k = 0; k < p.multiplicity; ++k) cand.zeros.push_back(out.branches[i].upper);
                continue;
            }
            const auto radix = static_cast<std::size_t>(p.multiplicity + 1);
            const int on_upper = p.multiplicity - static_cast<int>(rest % radix);
            rest /= radix;
            cand.upper_counts.push_back(on_upper);
            for (int k = 0; k < on_upper; ++k) cand.zeros.push_back(out.branches[i].upper);
            for (int k = on_upper; k < p.multiplicity; ++k) cand.zeros.push_back(out.branches[i].lower);
        }
        for (int k = 0; k < roots.infinity_count; ++k) cand.zeros.push_back(infinity_zero);

        cand.state = PureState(spin, amplitudes_from_zeros(spin, cand.zeros)).canonical();

        // Flipping a subset of zeros keeps the data only up to an overall
        // scale, so fit that scale against the fitted node probabilities.
        std::vector<double> predicted(nodes.size());
        double num = 0.0;
        double den = 0.0;
        for (std::size_t nu = 0; nu < nodes.size(); ++nu) {
            predicted[nu] = husimi(cand.state, PhasePoint(nodes.points()[nu]));
            num += predicted[nu] * fitted[nu];
            den += predicted[nu] * predicted[nu];
        }
        const double scale = den > 0.0 ? num / den : 0.0;
        cand.weight = scale;
        for (std::size_t nu = 0; nu < nodes.size(); ++nu) {
            cand.data_residual = std::max(cand.data_residual, std::abs(scale * predicted[nu] - fitted[nu]));
        }
        out.candidates.push_back(std::move(cand));
    }
    return out;
}

StepTwoResult disambiguate_zero_probe(const CandidateSet &cands, MeasurementOracle &oracle) {
    if (cands.candidates.empty()) throw InvalidArgument("zero probe: no candidates");
    const bool exact = oracle.is_exact();
    const double threshold = exact ? kExactVanish : 3.0 / static_cast<double>(oracle.shots());
    std::vector<std::size_t> alive(cands.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

    StepTwoResult result;
    for (std::size_t i = 0; i < cands.pairs.size() && alive.size() > 1; ++i) {
        const ZeroPair &pair = cands.pairs[i];
        if (!pair.ambiguous()) continue;
        std::vector<bool> sides{true};
        if (pair.multiplicity >= 2) sides.push_back(false);
        for (bool upper : sides) {
            const PhasePoint &where = upper ? cands.branches[i].upper : cands.branches[i].lower;
            const Direction probe = point_to_direction(where);
            const double value = oracle.query(probe);
            result.measured.push_back({probe, value});
            ++result.queries;
            if (!exact && value >= threshold && value < 10.0 * threshold) {
                throw InconclusiveProbe("zero probe: measured probability inside the dead band");
            }
            const bool vanishes = value < threshold;
            std::erase_if(alive, [&](std::size_t c) {
                return has_zero_on_branch(cands.candidates[c], pair, i, upper) != vanishes;
            });
        }
    }
    if (alive.empty()) throw InconclusiveProbe("zero probe: no candidate matches the observed zeros");
    if (alive.size() > 1) {
        // Coincident zeros of multiplicity >= 3 leave several branch counts
        // open; one extra probe at the best-separating lattice direction decides.
        const std::vector<PhasePoint> avoid = putative_zeros(cands);
        double best_margin = -1.0;
        PhasePoint best_point;
        for (const Direction &d : fibonacci_directions(256)) {
            PhasePoint p = direction_to_point(d);
            if (distance_to_set(p, avoid) < kProbeExclusion) continue;
            double margin = separation_margin(predictions_at(cands, alive, p), oracle.shots());
            if (margin > best_margin) {
                best_margin = margin;
                best_point = p;
            }
        }
        const Direction probe = point_to_direction(best_point);
        const double measured = oracle.query(probe);
        result.measured.push_back({probe, measured});
        ++result.queries;
        result.index = nearest_prediction(cands, alive, best_point, measured);
        return result;
    }
    result.index = alive.front();
    return result;
}

StepTwoResult disambiguate_single_probe(const CandidateSet &cands, MeasurementOracle &oracle, std::mt19937_64 &rng) {
    if (cands.candidates.empty()) throw InvalidArgument("single probe: no candidates");
    StepTwoResult result;
    if (cands.size() == 1) return result;

    std::vector<std::size_t> all(cands.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const std::vector<PhasePoint> avoid = putative_zeros(cands);
    auto fresh = [&]() {
        for (int tries = 0; tries < 10000; ++tries) {
            Direction d = random_direction(rng);
            if (distance_to_set(direction_to_point(d), avoid) >= kProbeExclusion) return d;
        }
        throw RetriesExhausted("single probe: no direction clear of the putative zeros");
    };

    Direction current = fresh();
    for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        result.attempts = attempt;
        const PhasePoint p = direction_to_point(current);
        if (distance_to_set(p, avoid) >= kProbeExclusion &&
            separation_margin(predictions_at(cands, all, p), oracle.shots()) >= 1.0) {
            const double measured = oracle.query(current);
            result.measured.push_back({current, measured});
            result.queries = 1;
            result.index = nearest_prediction(cands, all, p, measured);
            return result;
        }
        current = (attempt % kFreshDrawEvery == 0) ? fresh() : perturb(current, rng);
    }
    throw RetriesExhausted("single probe: no separating direction within 50 attempts");
}

}  // namespace spinrecon
