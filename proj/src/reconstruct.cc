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

#include "spinrecon/reconstruct.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinrecon/zero_fit.h"

namespace spinrecon {

namespace {

constexpr std::size_t kMaxRefitCandidates = 64;

// Under shot noise the roots, and with them every candidate, are off by far
// more than the probe resolves. Each candidate's zeros are refitted against
// everything measured so far, node values and probes together, and the one
// with the smallest chi-square wins. Starting from a wrong branch the fit
// stays on that branch, so the probes still decide.
PureState best_refit(const CandidateSet &cands, const NodeSet &nodes, const std::vector<double> &node_values,
                     const std::vector<QueryRecord> &probes, std::size_t shots) {
    std::vector<PhasePoint> points;
    std::vector<double> values = node_values;
    for (const Direction &d : nodes.directions()) points.push_back(direction_to_point(d));
    for (const QueryRecord &q : probes) {
        points.push_back(direction_to_point(q.direction));
        values.push_back(q.value);
    }
    const double n = static_cast<double>(shots);
    std::vector<double> sigma;
    for (double p : values) sigma.push_back(std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n));

    const Spin spin = cands.candidates.front().state.spin();
    double best_cost = std::numeric_limits<double>::infinity();
    std::optional<PureState> best;
    for (const Candidate &c : cands.candidates) {
        const ZeroFit fit = fit_zeros(spin, c.zeros, points, values, sigma);
        if (fit.cost < best_cost) {
            best_cost = fit.cost;
            best = PureState(spin, amplitudes_from_zeros(spin, fit.zeros)).canonical();
        }
    }
    return *best;
}

}  // namespace

const char *method_name(Method m) {
    switch (m) {
        case Method::zero_probe:
            return "stepII_zero_probe";
        case Method::single_probe:
            return "stepII_single_probe";
        case Method::zero_search:
            return "zero_search";
    }
    return "unknown";
}

ReconstructionReport reconstruct(MeasurementOracle &oracle, const ReconstructConfig &config) {
    ReconstructionReport report;
    report.method = config.step_two == StepTwoMethod::zero_probe ? Method::zero_probe : Method::single_probe;
    const NodeSet nodes = make_nodes(oracle.spin(), config.nodes);
    report.nodes = nodes;

    for (const Direction &d : nodes.directions()) report.node_probabilities.push_back(oracle.query(d));
    const CoefficientVector coeffs = solve_coefficients(nodes, report.node_probabilities);
    report.condition_estimate = coeffs.condition_estimate;
    report.ill_conditioned = coeffs.ill_conditioned;

    RootTolerances tol;
    if (!oracle.is_exact()) {
        const double shots = static_cast<double>(oracle.shots());
        std::vector<double> sigma;
        for (double p : report.node_probabilities) sigma.push_back(std::sqrt(std::max(p * (1.0 - p), 1.0 / shots) / shots));
        tol = noisy_tolerances(nodes, coeffs, sigma);
    }
    PairedRoots roots;
    try {
        roots = coefficient_roots(coeffs, tol);
    } catch (const PairingFailure &e) {
        // Noise too large for the conjugate-pair structure to survive; the
        // data gathered so far is still worth reporting.
        report.measurements_used = oracle.query_count();
        throw InconclusiveReconstruction(e.what(), std::move(report));
    }
    report.zero_pairs = roots.pairs;
    report.infinity_zeros = roots.infinity_count;

    const CandidateSet cands = enumerate_candidates(roots, nodes, coeffs);
    report.candidates_considered = cands.size();

    try {
        StepTwoResult step;
        if (config.step_two == StepTwoMethod::single_probe) {
            std::mt19937_64 rng(mix_seed(config.seed));
            try {
                step = disambiguate_single_probe(cands, oracle, rng);
                report.probe_attempts = step.attempts;
            } catch (const RetriesExhausted &) {
                report.probe_attempts = 50;
                report.fell_back = true;
                step = disambiguate_zero_probe(cands, oracle);
            }
        } else {
            step = disambiguate_zero_probe(cands, oracle);
        }
        report.chosen = cands.candidates[step.index].state;
        if (!oracle.is_exact() && cands.size() <= kMaxRefitCandidates) {
            report.chosen = best_refit(cands, nodes, report.node_probabilities, step.measured, oracle.shots());
        }
    } catch (const InconclusiveProbe &e) {
        report.measurements_used = oracle.query_count();
        throw InconclusiveReconstruction(e.what(), std::move(report));
    }
    report.measurements_used = oracle.query_count();
    return report;
}

}  // namespace spinrecon
